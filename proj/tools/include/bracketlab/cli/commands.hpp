#pragma once

/**
 * @file commands.hpp
 * @brief The bracketlab subcommands as callable functions.
 *
 * Each command writes human-readable output to `out`, diagnostics to
 * `err`, and returns the process exit code:
 *   0  success
 *   1  estimation or verification failure
 *   2  usage error (bad flags, bad config, data that does not fit the schema)
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace bracketlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct SimulateOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);

struct EstimateOptions {
  std::string what;  // means | mwu | kappa | tobit
  std::string data;
  std::string out;   // path prefix for <out>.md and <out>.csv; empty prints markdown
  std::optional<std::string> config;
  std::optional<double> censor_limit;
  std::optional<bool> continuity;
  std::optional<bool> keep_inconsistent;
};

int cmd_estimate(const EstimateOptions& opt, std::ostream& out, std::ostream& err);

struct PowerOptions {
  double d = 0.4;
  double alpha = 0.05;
  double power = 0.90;
  double ratio = 1.0;
  bool are = false;
};

int cmd_power(const PowerOptions& opt, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 20200101;
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace bracketlab::cli
