#pragma once

/**
 * @file agent.hpp
 * @brief Bracketing decision rules and price-list reservation wages.
 *
 * How an agent evaluates a presented option given the (visible) endowment:
 *   Broad    u(presented + endowment)
 *   Narrow   u(presented)
 *   Partial  u(presented.tasks + endowment.tasks, presented.money)
 *
 * ConvexKappa has no utility-level meaning. It is defined on reservation
 * wages only: r = (1 - kappa) * r_broad + kappa * r_narrow.
 */

#include <utility>
#include <variant>

#include "bracketlab/prefs.hpp"
#include "bracketlab/treatments.hpp"

namespace bracketlab {

struct BroadMode {};
struct NarrowMode {};
struct PartialMode {};
struct ConvexKappa {
  double kappa = 1.0;
};

using BracketingMode = std::variant<BroadMode, NarrowMode, PartialMode, ConvexKappa>;

std::string describe(const BracketingMode& mode);

struct Agent {
  UtilityModel model;
  BracketingMode mode;
  /// Added to the narrow-frame reservation wage in BEFORE/AFTER only.
  double framing_shift = 0.0;
};

double evaluate_option(const Agent& agent, const Bundle& presented, const Bundle& endowment);

inline constexpr double kWageSearchLow = -100.0;
inline constexpr double kWageSearchHigh = 100.0;

/// Continuous extra wage (on top of option B's base money) at which the
/// agent is indifferent between options A and B of the spec.
double reservation_wage_exact(const Agent& agent, const TreatmentSpec& spec);

/// As reservation_wage_exact, but returns +infinity when the agent rejects
/// option B for every searched wage and -infinity when it always accepts.
double reservation_wage_or_bound(const Agent& agent, const TreatmentSpec& spec);

struct SnappedWage {
  double recorded = 0.0;
  bool censored = false;

  friend bool operator==(const SnappedWage&, const SnappedWage&) = default;
};

/// Grid wages within this distance below r count as accepted.
inline constexpr double kSnapTolerance = 1e-9;

/// Smallest listed wage >= r (ties accept); above the list -> censor code.
SnappedWage snap_to_list(double reservation_wage, const PriceList& list);

}  // namespace bracketlab
