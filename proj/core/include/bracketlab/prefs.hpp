#pragma once

/**
 * @file prefs.hpp
 * @brief Preferences over (tasks, money) bundles and the money metric they induce.
 *
 * A bundle is a pair (tasks, money). Every UtilityModel variant is strictly
 * increasing in money, so the money metric
 *
 *     M(b) such that u(b.tasks, b.money - M) = u(0, 0)
 *
 * is well defined whenever the utility range is wide enough. M(b) reads as
 * "the most the decision maker would pay to receive b". It is computed by
 * bracketing bisection for every variant; closed forms live in the tests.
 */

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bracketlab {

struct Bundle {
  int tasks = 0;
  double money = 0.0;

  friend constexpr Bundle operator+(Bundle a, Bundle b) noexcept {
    return {a.tasks + b.tasks, a.money + b.money};
  }
  friend constexpr bool operator==(const Bundle&, const Bundle&) = default;
  friend constexpr auto operator<=>(const Bundle&, const Bundle&) = default;
};

std::string to_string(const Bundle& b);

struct Outcome {
  Bundle bundle;
  double probability = 0.0;
};

/// Finite-support lottery over bundles. Construction validates probabilities.
class Lottery {
 public:
  explicit Lottery(std::vector<Outcome> outcomes);

  static Lottery degenerate(Bundle b);
  /// Money-only lottery with the given values and probabilities.
  static Lottery money(std::span<const double> values, std::span<const double> probs);

  const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
  bool money_only() const noexcept;

  /// Adds w dollars to every outcome.
  Lottery shifted(double w) const;

  /// With probability p this lottery, otherwise the zero bundle.
  Lottery mixed_with_zero(double p) const;

 private:
  std::vector<Outcome> outcomes_;
};

/// Distribution of X + Y for independent X and Y (product measure).
Lottery independent_sum(const Lottery& x, const Lottery& y);

// Effort cost alpha * e^gamma is shared by the two power-cost variants.
struct QuasiLinearPowerCost {
  double alpha = 0.0;
  double gamma = 1.0;
};

struct CaraMoneyPowerCost {
  double rho = 1.0;
  double alpha = 0.0;
  double gamma = 1.0;
};

struct LinearMetric {
  double lambda_tasks = 0.0;
  double lambda_money = 1.0;
};

/// Money-only CRRA utility. Defined for money > 0; non-positive money maps
/// to -infinity (eta > 1) or is rejected as outside the domain (eta < 1).
struct CrraMoney {
  double eta = 2.0;
};

using UtilityModel =
    std::variant<QuasiLinearPowerCost, CaraMoneyPowerCost, LinearMetric, CrraMoney>;

/// Throws InvalidModel when a variant's parameter invariants are violated.
void validate(const UtilityModel& model);

std::string describe(const UtilityModel& model);

/// alpha * tasks^gamma for the power-cost variants, 0 otherwise.
double effort_cost(const UtilityModel& model, int tasks);

double utility(const UtilityModel& model, const Bundle& b);

double expected_utility(const UtilityModel& model, const Lottery& lottery);

/// Payment M with u(b.tasks, b.money - M) = u(0, 0).
double money_metric(const UtilityModel& model, const Bundle& b);

/// CE with u(0, wealth + CE) = E u(L + wealth).
double certainty_equivalent(const UtilityModel& model, const Lottery& lottery, double wealth);

namespace detail {

inline constexpr double kRootTolerance = 1e-9;
inline constexpr double kBracketGrowth = 2.0;
inline constexpr int kMaxBracketDoublings = 200;

/// Root of a nondecreasing function f on the real line by bracket expansion
/// from [-1, 1] around `center` followed by bisection. Returns the root in
/// absolute coordinates. Throws NonMonotoneModel when no sign change is found.
template <class F>
double solve_increasing(F&& f, double center);

}  // namespace detail

}  // namespace bracketlab

#include "bracketlab/detail/solve.ipp"
