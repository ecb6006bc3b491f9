#pragma once

/**
 * @file config.hpp
 * @brief INI run configuration.
 *
 *   [run]          seed, workers
 *   [counts]       BROAD, NARROW, LOW, PARTIAL, BEFORE, AFTER
 *   [alpha]        log_mean, log_sd, tedium_slope
 *   [gamma]        mean, sd, lower, upper, female_shift
 *   [money]        rho (omit for quasilinear money)
 *   [composition]  type = mixture | kappa; narrow_weight, partial_weight; kappa
 *   [behavior]     framing_shift, tremble
 *   [covariates]   p_female, age_min, age_max, tedium_min, tedium_max
 *   [draws]        paired
 *   [estimate]     censor_limit, continuity, are, keep_inconsistent
 *
 * Unknown sections and keys are rejected so typos do not silently fall
 * back to defaults.
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "bracketlab/simulate.hpp"

namespace bracketlab::cli {

inline constexpr double kDefaultCensorLimit = kCensorCode;

struct EstimatorOptions {
  double censor_limit = kDefaultCensorLimit;
  bool continuity = false;
  bool are = false;
  bool keep_inconsistent = false;
};

struct RunConfig {
  PopulationSpec population;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  EstimatorOptions estimator;
};

/// Throws ConfigError naming the section.key at fault.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace bracketlab::cli
