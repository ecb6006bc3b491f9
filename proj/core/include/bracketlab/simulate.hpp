#pragma once

/**
 * @file simulate.hpp
 * @brief Synthetic participants run through the price-list experiment.
 *
 * A PopulationSpec describes how preferences, bracketing behavior and
 * covariates are drawn. Each subject's draws come from streams keyed by
 * (seed, subject), so a Dataset is a pure function of the spec regardless
 * of how many worker threads produce it.
 *
 * With paired_draws (the default) the k-th subject of every treatment
 * shares preference and covariate draws: every treatment faces the same
 * synthetic population and cell differences come from framing alone.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "bracketlab/agent.hpp"
#include "bracketlab/treatments.hpp"

namespace bracketlab {

enum class Gender { Male, Female };

struct Covariates {
  Gender gender = Gender::Male;
  int age = 30;
  int tediousness = 5;

  friend bool operator==(const Covariates&, const Covariates&) = default;
};

using ChoiceFlags = std::array<bool, kPriceListRows>;

struct ConsistencyResult {
  bool consistent = false;
  /// First accepted wage, the censor code when nothing is accepted, empty
  /// when the flags are not monotone.
  std::optional<double> switch_wage;
  bool censored = false;
};

ConsistencyResult classify_consistency(const ChoiceFlags& flags);

struct ScenarioResponse {
  ChoiceFlags accept{};
  /// NaN when the scenario is inconsistent.
  double res_wage = 0.0;
  bool censored = false;
  bool consistent = true;

  friend bool operator==(const ScenarioResponse& a, const ScenarioResponse& b);
};

struct SubjectRecord {
  int subject_id = 0;
  Treatment treatment = Treatment::Broad;
  std::array<ScenarioResponse, 2> scenarios{};
  Covariates covariates;

  const ScenarioResponse& response(Scenario s) const {
    return scenarios[s == Scenario::S1 ? 0 : 1];
  }

  friend bool operator==(const SubjectRecord&, const SubjectRecord&) = default;
};

struct Dataset {
  std::vector<SubjectRecord> records;
  std::uint64_t seed = 0;
  std::string spec_digest;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct LogNormalDist {
  double log_mean = 0.0;
  double log_sd = 0.0;
};

/// Normal(mean, sd) restricted to [lower, upper] by rejection.
struct TruncatedNormalDist {
  double mean = 2.0;
  double sd = 0.0;
  double lower = 1.0;
  double upper = 4.0;
};

/// Each subject is Narrow with probability narrow_weight, Partial with
/// probability partial_weight, Broad otherwise.
struct MixtureComposition {
  double narrow_weight = 1.0;
  double partial_weight = 0.0;
};

/// Every subject is a ConvexKappa agent with the same kappa.
struct KappaComposition {
  double kappa = 1.0;
};

using Composition = std::variant<MixtureComposition, KappaComposition>;

struct PopulationSpec {
  std::array<int, kAllTreatments.size()> counts{};
  LogNormalDist alpha{-5.52, 0.0};
  /// Added to log(alpha) per tediousness point above 5.5.
  double alpha_tedium_slope = 0.0;
  TruncatedNormalDist gamma{};
  double gamma_female_shift = 0.0;
  /// When set, money enters through CARA utility with this coefficient.
  std::optional<double> rho;
  Composition composition = MixtureComposition{};
  double framing_shift = 0.0;
  double tremble = 0.0;
  double p_female = 0.4;
  int age_min = 18;
  int age_max = 70;
  int tedium_min = 1;
  int tedium_max = 10;
  bool paired_draws = true;
  std::uint64_t seed = 0;

  int& count(Treatment t) { return counts[static_cast<std::size_t>(t)]; }
  int count(Treatment t) const { return counts[static_cast<std::size_t>(t)]; }
};

/// Throws InvalidPopulation naming the offending field.
void validate(const PopulationSpec& spec);

/// Stable textual form of every field; the digest hashes this.
std::string canonical_string(const PopulationSpec& spec);
std::string spec_digest(const PopulationSpec& spec);

/// The agent and covariates a population assigns to one preference key.
struct DrawnSubject {
  Agent agent;
  Covariates covariates;
};

DrawnSubject draw_subject(const PopulationSpec& spec, std::mt19937_64& stream);

/// Runs one agent through both scenarios of treatment t. Rows are flipped
/// independently with probability `tremble`, using `stream`.
SubjectRecord simulate_subject(std::mt19937_64& stream, const Agent& agent, Treatment t,
                               const Covariates& covariates, double tremble, int subject_id = 0);

/// Deterministic for a fixed spec; workers == 0 uses hardware concurrency.
Dataset simulate_dataset(const PopulationSpec& spec, unsigned workers = 1);

}  // namespace bracketlab
