#include "iprob_cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "iprob/calibration.hpp"
#include "iprob/dataset.hpp"
#include "iprob/empirical.hpp"
#include "iprob/entropy.hpp"
#include "iprob/error.hpp"
#include "iprob/gbr.hpp"
#include "iprob/model.hpp"
#include "iprob/nslp.hpp"
#include "iprob/random.hpp"
#include "iprob/serialization.hpp"
#include "iprob/train.hpp"
#include "iprob_cli/schema.hpp"
#include "json.hpp"

namespace iprob::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kDefaultGrid = 101;
constexpr double kDefaultTestFraction = 0.2;

json load_config(const Options& opt, const std::string& def) {
  const std::string text = read_text_file(opt.config);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(opt.config + ": " + e.what());
  }
  validate(config_schema(), def, j);
  return j;
}

fs::path out_dir(const Options& opt, const json& cfg) {
  std::string dir;
  if (opt.out) {
    dir = *opt.out;
  } else if (cfg.contains("out")) {
    dir = cfg.at("out").get<std::string>();
  } else {
    throw ConfigError("no output directory: pass --out or set \"out\"");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  return dir;
}

std::uint64_t seed_of(const Options& opt, const json& cfg) {
  if (opt.seed) return *opt.seed;
  return cfg.value("seed", std::uint64_t{0});
}

std::string write_json(const fs::path& p, const json& j) {
  write_text_file(p.string(), j.dump(2) + "\n");
  return p.string();
}

// ---- losses ---------------------------------------------------------------

struct LossSpec {
  std::string id;
  bool parametric = true;
  ParametricBinaryLoss p;
  std::size_t grid = kDefaultGrid;
  std::optional<LossMatrix> matrix;
};

LossSpec parse_loss(const json& j, std::size_t index) {
  LossSpec s;
  if (j.contains("entries")) {
    s.parametric = false;
    json m = j;
    m.erase("id");
    s.matrix = loss_matrix_from_json(m.dump());
    s.id = j.value("id", "matrix" + std::to_string(index));
    return s;
  }
  json p = j;
  p.erase("id");
  p.erase("grid");
  s.p = parametric_loss_from_json(p.dump());
  s.p.validate();
  s.grid = j.value("grid", kDefaultGrid);
  s.id = j.value("id", s.p.id());
  return s;
}

// Loss matrix of the spec on a space with binary labels (for parametric
// losses); matrices are used as given.
LossMatrix loss_on(const LossSpec& s, const OutcomeSpace& space) {
  if (!s.parametric) return *s.matrix;
  if (s.p.kind == LossKind::cost_sensitive) return cost_sensitive_matrix(s.p.c, space);
  return discretize_action_space(s.p, s.grid, space);
}

std::vector<LossSpec> parse_losses(const json& cfg) {
  std::vector<LossSpec> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < cfg.at("losses").size(); ++i) {
    out.push_back(parse_loss(cfg.at("losses")[i], i));
    if (!seen.insert(out.back().id).second) throw ConfigError("duplicate loss id " + out.back().id);
  }
  return out;
}

// ---- training settings ----------------------------------------------------

void apply_overrides(TrainConfig& c, const json& o) {
  c.n_outer = o.value("n_outer", c.n_outer);
  c.eta = o.value("eta", c.eta);
  c.n_inner = o.value("n_inner", c.n_inner);
  c.lr = o.value("lr", c.lr);
  c.batch = o.value("batch", c.batch);
  c.full_batch = o.value("full_batch", c.full_batch);
  c.grad_batches = o.value("grad_batches", c.grad_batches);
  c.erm_iters = o.value("erm_iters", c.erm_iters);
  c.beta1 = o.value("beta1", c.beta1);
  c.beta2 = o.value("beta2", c.beta2);
  c.adam_eps = o.value("adam_eps", c.adam_eps);
}

json train_config_json(const TrainConfig& c) {
  return {{"n_outer", c.n_outer}, {"eta", c.eta},         {"n_inner", c.n_inner},
          {"lr", c.lr},           {"batch", c.batch},     {"full_batch", c.full_batch},
          {"grad_batches", c.grad_batches}, {"erm_iters", c.erm_iters}, {"seed", c.seed},
          {"beta1", c.beta1},     {"beta2", c.beta2},     {"adam_eps", c.adam_eps}};
}

struct DatasetRef {
  std::string path;
  std::string label_col = "label";
  std::string group_col = "group";
  std::vector<std::string> feature_cols;

  static DatasetRef from(const json& j) {
    DatasetRef d;
    d.path = j.at("path").get<std::string>();
    d.label_col = j.value("label_col", d.label_col);
    d.group_col = j.value("group_col", d.group_col);
    d.feature_cols = j.value("feature_cols", d.feature_cols);
    return d;
  }
  json to_json() const {
    return {{"path", path}, {"label_col", label_col}, {"group_col", group_col}, {"feature_cols", feature_cols}};
  }
  GroupedDataset load() const { return load_csv(path, label_col, group_col, feature_cols); }
};

// ---- evaluation tables ----------------------------------------------------

struct ScoreRow {
  std::string forecast_id;
  std::string loss_id;
  std::optional<double> train;
  std::optional<double> test;
};

struct CalibrationRow {
  std::string forecast_id;
  std::string loss_id;
  std::string split;
  std::string block;
  std::optional<double> residual;  // nullopt: undefined block
  std::optional<double> diagnostic_II;
};

struct Tables {
  std::string mode;
  double tolerance = 0.0;
  std::vector<ScoreRow> score;
  std::vector<CalibrationRow> calibration;
};

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

// CSV fields here are ids from the config; quote them when needed.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string subcalibrated(const CalibrationRow& r, double tol) {
  if (!r.residual) return "undefined";
  return *r.residual <= tol ? "true" : "false";
}

std::string score_csv(const Tables& t) {
  std::ostringstream os;
  os << "forecast_id,loss_id,ip_score_train,ip_score_test\n";
  for (const auto& r : t.score) {
    os << field(r.forecast_id) << ',' << field(r.loss_id) << ',' << cell(r.train) << ',' << cell(r.test) << '\n';
  }
  return os.str();
}

std::string calibration_csv(const Tables& t) {
  std::ostringstream os;
  os << "forecast_id,loss_id,data_split,block_label,residual,diagnostic_II,subcalibrated\n";
  for (const auto& r : t.calibration) {
    os << field(r.forecast_id) << ',' << field(r.loss_id) << ',' << r.split << ',' << field(r.block) << ','
       << cell(r.residual) << ',' << cell(r.diagnostic_II) << ',' << subcalibrated(r, t.tolerance) << '\n';
  }
  return os.str();
}

void add_report_rows(Tables& t, const std::string& fid, const std::string& lid, const std::string& prefix,
                     const CalibrationReport& rep) {
  for (const auto& b : rep.blocks) {
    CalibrationRow row{fid, lid, "analytic", prefix + b.label, std::nullopt, b.diagnostic_II};
    if (b.defined) row.residual = b.residual;
    t.calibration.push_back(row);
  }
}

// Forecasts given in closed form, evaluated against a credal data model.
void evaluate_analytic(const json& cfg, Tables& t, bool score, bool calib) {
  const CredalSet data = credal_set_from_json(cfg.at("data_model").dump());
  if (!cfg.contains("forecasts")) throw ConfigError("analytic evaluation needs \"forecasts\"");
  const auto losses = parse_losses(cfg);
  for (const auto& f : cfg.at("forecasts")) {
    const std::string fid = f.at("id").get<std::string>();
    const std::string kind = f.value("kind", f.contains("forecast") ? "explicit" : "");
    if (kind.empty()) throw ConfigError("forecast " + fid + ": set \"kind\" or give \"forecast\"");
    if (kind == "explicit" && !f.contains("forecast")) throw ConfigError("forecast " + fid + ": missing \"forecast\"");
    for (const auto& ls : losses) {
      const LossMatrix l = loss_on(ls, data.space());
      std::optional<Forecast> q;
      if (kind == "explicit") {
        q = forecast_from_json(f.at("forecast").dump());
      } else if (kind == "gbr") {
        q = gbr_forecast(data);
      } else if (kind == "data") {
        q = Forecast::constant(data);
      } else {
        // conditionals of the entropy maximizer; undefined where P*(X = x) = 0
        q = conditional_forecast(solve_maxent(data, l).p_star, data.space_ptr());
      }
      if (score) t.score.push_back({fid, ls.id, q ? std::optional(ip_score(*q, l, data)) : std::nullopt, {}});
      if (!calib) continue;
      if (!q) {
        t.calibration.push_back({fid, ls.id, "analytic", "all", std::nullopt, std::nullopt});
        continue;
      }
      const auto whole = calibration_residual(*q, l, data, std::nullopt, t.tolerance);
      t.calibration.push_back({fid, ls.id, "analytic", "all", whole.blocks[0].residual, whole.blocks[0].diagnostic_II});
      add_report_rows(t, fid, ls.id, "action:", action_calibration(*q, l, data, t.tolerance));
      add_report_rows(t, fid, ls.id, "feature:",
                      calibration_residual(*q, l, data, Partition::by_feature(data.space()), t.tolerance));
    }
  }
}

// Trained forecasts listed in a training manifest, evaluated on the per-group
// empirical distributions of the train and test rows.
void evaluate_empirical(const json& cfg, Tables& t, bool score, bool calib) {
  const fs::path mpath = cfg.at("manifest").get<std::string>();
  json m;
  try {
    m = json::parse(read_text_file(mpath.string()));
  } catch (const json::parse_error& e) {
    throw IoError(mpath.string() + ": " + e.what());
  }
  const fs::path base = mpath.parent_path();
  const GroupedDataset all = DatasetRef::from(m.at("dataset")).load();
  const double tf = m.at("test_fraction").get<double>();
  std::vector<std::pair<std::string, GroupedDataset>> splits;
  if (tf > 0.0) {
    auto sp = split(all, tf, m.at("split_seed").get<std::uint64_t>());
    splits.emplace_back("train", std::move(sp.train));
    splits.emplace_back("test", std::move(sp.test));
  } else {
    splits.emplace_back("train", all);
  }

  std::vector<json> chosen;
  if (cfg.contains("forecasts")) {
    for (const auto& f : cfg.at("forecasts")) {
      if (f.contains("kind") || f.contains("forecast")) {
        throw ConfigError("forecast " + f.at("id").get<std::string>() + ": only \"id\" applies to manifest runs");
      }
      const auto it = std::find_if(m.at("forecasts").begin(), m.at("forecasts").end(),
                                   [&](const json& e) { return e.at("id") == f.at("id"); });
      if (it == m.at("forecasts").end()) throw ConfigError("manifest has no forecast " + f.at("id").dump());
      chosen.push_back(*it);
    }
  } else {
    chosen.assign(m.at("forecasts").begin(), m.at("forecasts").end());
  }

  const auto losses = parse_losses(cfg);
  const OutcomeSpace ybin = OutcomeSpace::binary();
  for (const auto& f : chosen) {
    const std::string fid = f.at("id").get<std::string>();
    std::vector<TrainedModel> members;
    for (const auto& p : f.at("models")) members.push_back(model_from_json(read_text_file((base / p.get<std::string>()).string())));
    std::vector<std::vector<RowInterval>> q;
    for (const auto& [name, ds] : splits) q.push_back(row_intervals(member_predictions(members, ds)));
    for (const auto& ls : losses) {
      const LossMatrix l = loss_on(ls, ybin);
      if (score) {
        ScoreRow row{fid, ls.id, empirical_ip_score(splits[0].second, q[0], l), std::nullopt};
        if (splits.size() > 1) row.test = empirical_ip_score(splits[1].second, q[1], l);
        t.score.push_back(row);
      }
      if (!calib) continue;
      for (std::size_t s = 0; s < splits.size(); ++s) {
        const auto ec = empirical_calibration(splits[s].second, q[s], l);
        t.calibration.push_back({fid, ls.id, splits[s].first, "all", ec.residual_no_groups, std::nullopt});
        for (const auto& b : ec.actions) {
          CalibrationRow row{fid, ls.id, splits[s].first, "action:" + l.action_label(b.action), std::nullopt,
                             b.diagnostic_II};
          if (b.rows > 0) row.residual = b.residual;
          t.calibration.push_back(row);
        }
      }
    }
  }
}

Tables evaluate(const Options& opt, const json& cfg, bool score, bool calib) {
  const bool analytic = cfg.contains("data_model");
  if (analytic == cfg.contains("manifest")) throw ConfigError("set exactly one of \"data_model\" and \"manifest\"");
  Tables t;
  t.mode = analytic ? "analytic" : "empirical";
  t.tolerance = opt.tolerance ? *opt.tolerance
                              : cfg.value("tolerance", analytic ? kExactCalibrationTol : kEmpiricalCalibrationTol);
  if (!(t.tolerance >= 0.0)) throw ConfigError("tolerance must be nonnegative");
  if (analytic) {
    evaluate_analytic(cfg, t, score, calib);
  } else {
    evaluate_empirical(cfg, t, score, calib);
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::string> cmd_simulate(const Options& opt) {
  const json cfg = load_config(opt, "simulate");
  const json& spec = cfg.at("nslp");
  const fs::path out = out_dir(opt, cfg);
  const std::uint64_t seed = seed_of(opt, cfg);

  Selection sel;
  sel.kind = selection_kind_from_string(spec.value("selection", "cyclic"));
  if (spec.contains("indices")) {
    if (sel.kind != SelectionKind::fixed_sequence) throw ConfigError("\"indices\" applies to fixed_sequence only");
    sel.indices = spec.at("indices").get<std::vector<std::size_t>>();
  }
  const CredalSet dm = credal_set_from_json(spec.at("data_model").dump());
  const std::uint64_t sub = derive_seed(seed, "simulate", 0);
  const NSLPSample sample = sample_nslp({dm, sel, spec.at("n").get<std::size_t>(), sub});
  const GroupedDataset ds = to_dataset(sample, dm.space());

  const fs::path csv = out / "dataset.csv";
  write_csv(ds, csv.string());
  const json meta = {{"rng", std::string(Philox4x32::kAlgorithm)},
                     {"seed", seed},
                     {"stream", {{"name", "simulate"}, {"index", 0}}},
                     {"derived_seed", sub},
                     {"rows", ds.size()},
                     {"group_count", ds.group_count},
                     {"nslp", spec}};
  return {csv.string(), write_json(out / "dataset.meta.json", meta)};
}

std::vector<std::string> cmd_train(const Options& opt) {
  const json cfg = load_config(opt, "train");
  const fs::path out = out_dir(opt, cfg);
  const std::uint64_t seed = seed_of(opt, cfg);
  DatasetRef ref = DatasetRef::from(cfg.at("dataset"));
  const GroupedDataset all = ref.load();
  ref.path = fs::absolute(ref.path).lexically_normal().string();

  const double tf = cfg.value("test_fraction", kDefaultTestFraction);
  const std::uint64_t split_seed = derive_seed(seed, "split", 0);
  const GroupedDataset train = tf > 0.0 ? split(all, tf, split_seed).train : all;
  const bool interactions = cfg.value("interactions", false);
  const GroupedDataset wide = interaction_features(train, interactions);
  const Standardizer st = cfg.value("standardize", true) ? Standardizer::fit(wide) : Standardizer::identity(wide.dim());
  const GroupedDataset x = st.apply(wide);

  TrainConfig shared;
  if (cfg.contains("train")) apply_overrides(shared, cfg.at("train"));

  const std::regex safe("[A-Za-z0-9_.()+-]+");
  std::set<std::string> names;
  std::vector<std::string> written;
  json forecasts = json::array();
  json log_models = json::array();
  const auto& models = cfg.at("models");
  for (std::size_t i = 0; i < models.size(); ++i) {
    const json& mj = models[i];
    const std::string name = mj.at("name").get<std::string>();
    if (!std::regex_match(name, safe)) throw ConfigError("model name '" + name + "' is not filename-safe");
    if (!names.insert(name).second) throw ConfigError("duplicate model name " + name);
    const std::string kind = mj.at("kind").get<std::string>();
    const LossSpec ls = parse_loss(mj.at("loss"), i);
    if (!ls.parametric) throw ConfigError("model " + name + ": training needs a parametric loss");
    TrainConfig tc = shared;
    if (mj.contains("train")) apply_overrides(tc, mj.at("train"));
    tc.seed = derive_seed(seed, "train", i);
    tc.validate();

    auto save = [&](const ModelParams& p, const std::string& file) {
      TrainedModel tm{p, st, interactions};
      write_text_file((out / file).string(), model_to_json(tm));
      written.push_back((out / file).string());
      return file;
    };
    json entry = {{"id", name}, {"kind", kind}, {"loss", json::parse(parametric_loss_to_json(ls.p))}};
    json log = {{"name", name}, {"kind", kind}, {"loss_id", ls.id}, {"config", train_config_json(tc)}};
    std::vector<std::string> files;
    if (kind == "erm") {
      const auto r = train_erm(x, ls.p, tc);
      files.push_back(save(r.params, name + ".model.json"));
      log["final_loss"] = r.final_loss;
    } else if (kind == "dro") {
      const auto r = train_dro(x, ls.p, tc);
      files.push_back(save(r.params, name + ".model.json"));
      std::ostringstream trace;
      trace << "iter,weighted_loss";
      for (std::size_t g = 0; g < r.lambda.size(); ++g) trace << ",lambda_" << g;
      for (std::size_t g = 0; g < r.lambda.size(); ++g) trace << ",loss_" << g;
      trace << '\n';
      for (const auto& round : r.trace) {
        trace << round.iter << ',' << format_double(round.weighted_loss);
        for (double v : round.lambda) trace << ',' << format_double(v);
        for (double v : round.group_losses) trace << ',' << format_double(v);
        trace << '\n';
      }
      const fs::path tp = out / (name + ".lambda.csv");
      write_text_file(tp.string(), trace.str());
      written.push_back(tp.string());
      log["lambda"] = r.lambda;
      log["final_group_losses"] = r.final_group_losses;
    } else {
      const auto ps = fit_gbr(x, ls.p, tc);
      for (std::size_t g = 0; g < ps.size(); ++g) files.push_back(save(ps[g], name + ".g" + std::to_string(g) + ".model.json"));
    }
    entry["models"] = files;
    forecasts.push_back(entry);
    log_models.push_back(log);
  }

  const json manifest = {{"dataset", ref.to_json()}, {"test_fraction", tf}, {"split_seed", split_seed},
                         {"forecasts", forecasts}};
  written.push_back(write_json(out / "manifest.json", manifest));
  const json run_log = {{"rng", std::string(Philox4x32::kAlgorithm)},
                        {"seed", seed},
                        {"train_rows", train.size()},
                        {"features", x.feature_names},
                        {"constant_columns", st.warnings()},
                        {"models", log_models}};
  written.push_back(write_json(out / "run_log.json", run_log));
  return written;
}

std::vector<std::string> cmd_evaluate_score(const Options& opt) {
  const json cfg = load_config(opt, "evaluate");
  const fs::path out = out_dir(opt, cfg);
  const Tables t = evaluate(opt, cfg, true, false);
  write_text_file((out / "score.csv").string(), score_csv(t));
  return {(out / "score.csv").string()};
}

std::vector<std::string> cmd_evaluate_calibration(const Options& opt) {
  const json cfg = load_config(opt, "evaluate");
  const fs::path out = out_dir(opt, cfg);
  const Tables t = evaluate(opt, cfg, false, true);
  write_text_file((out / "calibration.csv").string(), calibration_csv(t));
  return {(out / "calibration.csv").string()};
}

std::vector<std::string> cmd_report(const Options& opt) {
  const json cfg = load_config(opt, "evaluate");
  const fs::path out = out_dir(opt, cfg);
  const Tables t = evaluate(opt, cfg, true, true);
  write_text_file((out / "score.csv").string(), score_csv(t));
  write_text_file((out / "calibration.csv").string(), calibration_csv(t));

  // one summary entry per (forecast, loss): scores and worst defined residual per split
  std::map<std::pair<std::string, std::string>, json> worst;
  for (const auto& r : t.calibration) {
    json& e = worst[{r.forecast_id, r.loss_id}];
    if (!r.residual) {
      e[r.split + "_undefined_blocks"] = e.value(r.split + "_undefined_blocks", 0) + 1;
      continue;
    }
    const std::string key = r.split + "_max_residual";
    if (!e.contains(key) || e[key].get<double>() < *r.residual) e[key] = *r.residual;
  }
  json rows = json::array();
  for (const auto& s : t.score) {
    json e = {{"forecast_id", s.forecast_id}, {"loss_id", s.loss_id},
              {"ip_score_train", s.train ? json(*s.train) : json(nullptr)},
              {"ip_score_test", s.test ? json(*s.test) : json(nullptr)}};
    json residuals = worst[{s.forecast_id, s.loss_id}];
    bool sub = true;
    for (const auto& [k, v] : residuals.items()) {
      e[k] = v;
      if (k.ends_with("_max_residual") && v.get<double>() > t.tolerance) sub = false;
      if (k.ends_with("_undefined_blocks")) sub = false;
    }
    e["subcalibrated"] = sub;
    rows.push_back(e);
  }
  const json summary = {{"mode", t.mode}, {"tolerance", t.tolerance}, {"rows", rows}};
  return {(out / "score.csv").string(), (out / "calibration.csv").string(), write_json(out / "summary.json", summary)};
}

std::vector<std::string> cmd_maxent(const Options& opt) {
  const json cfg = load_config(opt, "maxent");
  const fs::path out = out_dir(opt, cfg);
  const CredalSet data = credal_set_from_json(cfg.at("data_model").dump());
  const LossMatrix l = loss_on(parse_loss(cfg.at("loss"), 0), data.space());
  MaxentOptions mo;
  mo.method = cfg.value("method", "exact") == "mwu" ? MaxentMethod::mwu : MaxentMethod::exact;
  mo.tol = cfg.value("tol", mo.tol);
  mo.max_iter = cfg.value("max_iter", mo.max_iter);
  const auto r = solve_maxent(data, l, mo);
  const fs::path p = out / "maxent.json";
  write_text_file(p.string(), maxent_result_to_json(r, data, l) + "\n");
  return {p.string()};
}

}  // namespace iprob::cli
