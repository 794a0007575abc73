#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iprob::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

// Command-line flags; each overrides the config key of the same name.
struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

// Each command returns the paths it wrote.
std::vector<std::string> cmd_simulate(const Options& opt);
std::vector<std::string> cmd_train(const Options& opt);
std::vector<std::string> cmd_evaluate_score(const Options& opt);
std::vector<std::string> cmd_evaluate_calibration(const Options& opt);
std::vector<std::string> cmd_report(const Options& opt);
std::vector<std::string> cmd_maxent(const Options& opt);

// Parses argv, dispatches, and maps library errors to exit codes.
int run(int argc, const char* const* argv);

}  // namespace iprob::cli
