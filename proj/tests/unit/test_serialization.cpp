#include <filesystem>

#include "doctest.h"
#include "fixtures.hpp"
#include "iprob/entropy.hpp"
#include "iprob/error.hpp"
#include "iprob/gbr.hpp"
#include "iprob/serialization.hpp"
#include "json.hpp"

using namespace iprob;

TEST_CASE("credal sets round-trip exactly") {
  const auto s = fixtures::sky_space();
  const auto c = CredalSet::from_rows(s, {fixtures::p1(), {0.1, 0.2, 0.3, 0.4}, {1.0 / 3.0, 1.0 / 6.0, 0.25, 0.25}});
  const auto text = credal_set_to_json(c);
  const auto back = credal_set_from_json(text);
  CHECK(back.space() == c.space());
  REQUIRE(back.vertex_count() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back.vertex(i) == c.vertex(i));
  CHECK(credal_set_to_json(back) == text);
}

TEST_CASE("loss matrices and parametric losses round-trip") {
  const auto l = fixtures::three_action_loss();
  const auto back = loss_matrix_from_json(loss_matrix_to_json(l));
  CHECK(back.action_labels() == l.action_labels());
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t w = 0; w < 2; ++w) CHECK(back(a, w) == l(a, w));
  }
  for (const auto& p : {ParametricBinaryLoss::log_loss(), ParametricBinaryLoss::winkler(0.1, 250.0),
                        ParametricBinaryLoss::cost_sensitive(0.7)}) {
    const auto q = parametric_loss_from_json(parametric_loss_to_json(p));
    CHECK(q.kind == p.kind);
    CHECK(q.id() == p.id());
    CHECK(q.smooth_f == p.smooth_f);
  }
  CHECK_THROWS_AS(parametric_loss_from_json(R"({"kind": "hinge"})"), DomainError);
  CHECK_THROWS_AS(parametric_loss_from_json(R"({"kind": "winkler", "c": 1.5})"), DomainError);
}

TEST_CASE("models round-trip") {
  TrainedModel m;
  m.params = {{0.1, -2.5, 1e-7}, 0.3};
  m.standardizer = Standardizer({1.0, 2.0, 3.0}, {0.5, 1.0, 4.0});
  m.interactions = true;
  const auto back = model_from_json(model_to_json(m));
  CHECK(back.params == m.params);
  CHECK(back.standardizer.mean() == m.standardizer.mean());
  CHECK(back.standardizer.stddev() == m.standardizer.stddev());
  CHECK(back.interactions);
  // plain layout without a standardizer
  const auto plain = model_from_json(R"({"weights": [1, 2], "bias": -1})");
  CHECK(plain.params.weights == std::vector<double>{1.0, 2.0});
  CHECK(plain.standardizer.dim() == 0);
  CHECK(!plain.interactions);
}

TEST_CASE("forecasts round-trip") {
  const auto s = fixtures::sky_space();
  const auto g = gbr_forecast(fixtures::sky_data(s));
  const auto back = forecast_from_json(forecast_to_json(g));
  CHECK(!back.is_constant());
  for (std::size_t x = 0; x < 2; ++x) CHECK(hull_equivalent(back.at(x), g.at(x)));
  const auto c = Forecast::constant(fixtures::rain_interval(fixtures::rain_space(), 0.05, 0.15));
  const auto cb = forecast_from_json(forecast_to_json(c));
  CHECK(cb.is_constant());
  CHECK(cb.at(0).vertex(1)[1] == 0.15);
  CHECK_THROWS_AS(forecast_from_json(R"({"space": {"outcomes": ["a","b"], "feature_of": [0, 1],
      "feature_labels": ["x", "y"]}, "per_feature": {"x": [[1, 0]]}})"),
                  DomainError);
}

TEST_CASE("maxent report") {
  const auto s = fixtures::sky_space();
  const auto data = fixtures::sky_data(s);
  const auto l = cost_sensitive_matrix(0.1, *s);
  const auto j = nlohmann::json::parse(maxent_result_to_json(solve_maxent(data, l), data, l));
  CHECK(j["lambda_star"][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["bayes_unique"].get<bool>());
  CHECK(j["minimizer_support"][0]["lifted_action"]["cloudy"] == "a=1");
  CHECK(j["minimizer_support"][0]["lifted_action"]["sunny"] == "a=0");
  CHECK(j["maxent_value"].get<double>() == doctest::Approx(0.029));
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(credal_set_from_json("{not json"), IoError);
  CHECK_THROWS_AS(credal_set_from_json(R"({"outcomes": ["a", "b"]})"), DomainError);
  CHECK_THROWS_AS(credal_set_from_json(R"({"outcomes": ["a", "b"], "feature_of": [0, 0], "vertices": [[0.5, 0.6]]})"),
                  DomainError);
  CHECK_THROWS_AS(credal_set_from_json(R"({"outcomes": ["a", "b"], "feature_of": [0, 0], "vertices": [[1.0]]})"),
                  DimensionError);
  CHECK_THROWS_AS(read_text_file("/nonexistent/file.json"), IoError);
  const auto p = std::filesystem::temp_directory_path() / "iprob_unit_text.txt";
  write_text_file(p.string(), "abc");
  CHECK(read_text_file(p.string()) == "abc");
}
