#include "iprob/serialization.hpp"

#include <fstream>
#include <sstream>

#include "iprob/error.hpp"
#include "json.hpp"

namespace iprob {

namespace {

using json = nlohmann::ordered_json;

void emit(const json& j, std::string& out, int indent, int depth);

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

bool is_flat_array(const json& j) {
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

void emit(const json& j, std::string& out, int indent, int depth) {
  switch (j.type()) {
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, depth + 1);
        out += json(k).dump();
        out += indent < 0 ? ":" : ": ";
        emit(v, out, indent, depth + 1);
      }
      newline(out, indent, depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short scalar arrays stay on one line
      const bool flat = is_flat_array(j);
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(out, indent, depth + 1);
        emit(v, out, indent, depth + 1);
      }
      if (!flat) newline(out, indent, depth);
      out += ']';
      return;
    }
    default:
      out += j.dump();
  }
}

std::string dump(const json& j) {
  std::string out;
  emit(j, out, 2, 0);
  out += '\n';
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("key '") + key + "': " + e.what());
  }
}

json space_json(const OutcomeSpace& s) {
  json j;
  j["outcomes"] = s.outcome_labels();
  j["feature_of"] = s.feature_map();
  j["feature_labels"] = s.feature_labels();
  if (s.label_map()) j["label_of"] = *s.label_map();
  return j;
}

SpacePtr space_from(const json& j) {
  auto outcomes = get<std::vector<std::string>>(j, "outcomes");
  auto feature_of = get<std::vector<std::size_t>>(j, "feature_of");
  std::vector<std::string> flabels;
  if (j.contains("feature_labels")) flabels = get<std::vector<std::string>>(j, "feature_labels");
  std::optional<std::vector<double>> labels;
  if (j.contains("label_of")) labels = get<std::vector<double>>(j, "label_of");
  return make_space(OutcomeSpace(std::move(outcomes), std::move(feature_of), std::move(flabels),
                                 std::move(labels)));
}

json vertices_json(const CredalSet& c) {
  json v = json::array();
  for (const auto& p : c.vertices()) v.push_back(std::vector<double>(p.values().begin(), p.values().end()));
  return v;
}

json credal_json(const CredalSet& c) {
  json j = space_json(c.space());
  j["vertices"] = vertices_json(c);
  return j;
}

CredalSet credal_from(const json& j, SpacePtr space = nullptr) {
  if (!space) space = space_from(j);
  return CredalSet::from_rows(space, get<std::vector<std::vector<double>>>(j, "vertices"));
}

}  // namespace

std::string credal_set_to_json(const CredalSet& c) { return dump(credal_json(c)); }

CredalSet credal_set_from_json(const std::string& text) { return credal_from(parse(text)); }

std::string loss_matrix_to_json(const LossMatrix& l) {
  json j;
  j["actions"] = l.action_labels();
  json e = json::array();
  for (std::size_t a = 0; a < l.action_count(); ++a) {
    e.push_back(std::vector<double>(l.row(a).values().begin(), l.row(a).values().end()));
  }
  j["entries"] = e;
  return dump(j);
}

LossMatrix loss_matrix_from_json(const std::string& text) {
  const json j = parse(text);
  std::vector<std::string> actions;
  if (j.contains("actions")) actions = get<std::vector<std::string>>(j, "actions");
  return LossMatrix(get<std::vector<std::vector<double>>>(j, "entries"), std::move(actions));
}

std::string parametric_loss_to_json(const ParametricBinaryLoss& l) {
  json j;
  j["kind"] = to_string(l.kind);
  if (l.kind == LossKind::cost_sensitive || l.kind == LossKind::winkler) j["c"] = l.c;
  if (l.kind == LossKind::winkler) j["smooth_f"] = l.smooth_f;
  return dump(j);
}

ParametricBinaryLoss parametric_loss_from_json(const std::string& text) {
  const json j = parse(text);
  ParametricBinaryLoss l;
  l.kind = loss_kind_from_string(get<std::string>(j, "kind"));
  if (l.kind == LossKind::cost_sensitive || l.kind == LossKind::winkler) l.c = get<double>(j, "c");
  if (j.contains("smooth_f")) l.smooth_f = get<double>(j, "smooth_f");
  l.validate();
  return l;
}

std::string model_to_json(const TrainedModel& m) {
  json j;
  j["weights"] = m.params.weights;
  j["bias"] = m.params.bias;
  j["standardizer"] = {{"mean", m.standardizer.mean()}, {"std", m.standardizer.stddev()}};
  j["interactions"] = m.interactions;
  return dump(j);
}

TrainedModel model_from_json(const std::string& text) {
  const json j = parse(text);
  TrainedModel m;
  m.params.weights = get<std::vector<double>>(j, "weights");
  m.params.bias = get<double>(j, "bias");
  if (j.contains("standardizer")) {
    const auto& s = j.at("standardizer");
    m.standardizer = Standardizer(get<std::vector<double>>(s, "mean"), get<std::vector<double>>(s, "std"));
  }
  if (j.contains("interactions")) m.interactions = get<bool>(j, "interactions");
  return m;
}

std::string forecast_to_json(const Forecast& f) {
  json j;
  if (f.is_constant()) {
    j["constant"] = credal_json(f.at(0));
    return dump(j);
  }
  j["space"] = space_json(f.space());
  json per = json::object();
  for (std::size_t x = 0; x < f.feature_count(); ++x) per[f.space().feature_label(x)] = vertices_json(f.at(x));
  j["per_feature"] = per;
  return dump(j);
}

Forecast forecast_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.contains("constant")) return Forecast::constant(credal_from(j.at("constant")));
  const SpacePtr space = space_from(j.contains("space") ? j.at("space") : json{});
  const json& per = j.contains("per_feature") ? j.at("per_feature") : json{};
  std::vector<CredalSet> sets;
  for (std::size_t x = 0; x < space->feature_count(); ++x) {
    const auto& label = space->feature_label(x);
    if (!per.is_object() || !per.contains(label)) {
      throw DomainError("forecast has no credal set for feature value '" + label + "'");
    }
    sets.push_back(CredalSet::from_rows(space, per.at(label).get<std::vector<std::vector<double>>>()));
  }
  return Forecast(space, std::move(sets));
}

std::string maxent_result_to_json(const MaxentResult& r, const CredalSet& data, const LossMatrix& l) {
  json j;
  j["method"] = r.method == MaxentMethod::exact ? "exact" : "mwu";
  j["lambda_star"] = r.lambda_star;
  j["p_star"] = std::vector<double>(r.p_star.values().begin(), r.p_star.values().end());
  j["maxent_value"] = r.maxent_value;
  j["value_lower"] = r.value_lower;
  j["value_upper"] = r.value_upper;
  j["duality_gap"] = r.duality_gap;
  json uniq = json::object();
  json zero = json::array();
  for (std::size_t x = 0; x < r.bayes_unique_per_x.size(); ++x) {
    uniq[data.space().feature_label(x)] = static_cast<bool>(r.bayes_unique_per_x[x]);
    if (r.zero_mass_x[x]) zero.push_back(data.space().feature_label(x));
  }
  j["bayes_unique_per_x"] = uniq;
  j["bayes_unique"] = r.all_unique;
  j["zero_mass_features"] = zero;
  j["ip_score_star"] = r.ip_score_star;
  j["pstar_forecast_score"] = r.pstar_forecast_score ? json(*r.pstar_forecast_score) : json(nullptr);
  json support = json::array();
  for (std::size_t s = 0; s < r.lifted_support.size(); ++s) {
    json a = json::object();
    for (std::size_t x = 0; x < r.lifted_support[s].per_feature_action.size(); ++x) {
      a[data.space().feature_label(x)] = l.action_label(r.lifted_support[s].per_feature_action[x]);
    }
    support.push_back({{"lifted_action", a}, {"weight", r.lifted_weights[s]}});
  }
  j["minimizer_support"] = support;
  j["iterations"] = r.iterations;
  return dump(j);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace iprob
