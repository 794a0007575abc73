#include <cstdio>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "iprob/error.hpp"
#include "iprob_cli/commands.hpp"
#include "json.hpp"

namespace iprob::cli {

int run(int argc, const char* const* argv) {
  CLI::App app{"Evaluate, train and calibrate imprecise probabilistic forecasts.", "iprob"};
  app.set_version_flag("--version", "iprob 0.1.0");
  app.require_subcommand(1);

  Options opt;
  std::string out;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  using Command = std::function<std::vector<std::string>(const Options&)>;
  std::vector<std::pair<CLI::App*, Command>> commands;

  auto add = [&](const char* name, const char* help, Command fn, bool with_tolerance) {
    CLI::App* sc = app.add_subcommand(name, help);
    sc->add_option("--config", opt.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sc->add_option("--out", out, "output directory (overrides \"out\")");
    sc->add_option("--seed", seed, "top-level seed (overrides \"seed\")");
    if (with_tolerance) sc->add_option("--tolerance", tolerance, "calibration tolerance (overrides \"tolerance\")");
    commands.emplace_back(sc, std::move(fn));
  };
  add("simulate", "draw a grouped dataset from a credal data model", cmd_simulate, false);
  add("train", "fit ERM, DRO and per-group models", cmd_train, false);
  add("evaluate-score", "IP scores of forecasts under a list of losses", cmd_evaluate_score, true);
  add("evaluate-calibration", "calibration residuals per block", cmd_evaluate_calibration, true);
  add("report", "both evaluations plus a JSON summary", cmd_report, true);
  add("maxent", "maximum-entropy mixture of a data model", cmd_maxent, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (auto& [sc, fn] : commands) {
    if (!sc->parsed()) continue;
    if (sc->count("--out")) opt.out = out;
    if (sc->count("--seed")) opt.seed = seed;
    if (sc->get_option_no_throw("--tolerance") && sc->count("--tolerance")) opt.tolerance = tolerance;
    try {
      for (const auto& path : fn(opt)) std::cout << path << '\n';
      return kExitOk;
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const DomainError& e) {
      std::cerr << "invalid input: " << e.what() << '\n';
      return kExitConfig;
    } catch (const DimensionError& e) {
      std::cerr << "invalid input: " << e.what() << '\n';
      return kExitConfig;
    } catch (const NumericError& e) {
      std::cerr << "numeric failure: " << e.what() << '\n';
      return kExitNumeric;
    } catch (const IoError& e) {
      std::cerr << "io error: " << e.what() << '\n';
      return kExitIo;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitFailure;
    }
  }
  return kExitFailure;
}

}  // namespace iprob::cli
