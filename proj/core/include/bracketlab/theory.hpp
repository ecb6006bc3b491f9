#pragma once

/**
 * @file theory.hpp
 * @brief Numerical probes of when narrow and broad bracketing are
 *        observationally equivalent.
 *
 * Bracketing is unidentified exactly when the money metric over aggregate
 * choices is additive, M(a + b) = M(a) + M(b). The probes below check the
 * ingredients on finite grids and menus:
 *
 *  - additivity_residual: max |M(a + b) - M(a) - M(b)| over a bundle grid
 *  - unidentifiability_probe: separate vs aggregate choices on menu pairs
 *  - epsilon_menu: the menu pair that exposes a non-additive metric
 *  - cara_shift_invariance / mixture_linearity: additivity consequences
 *    for lotteries (wealth-independent CE, CE linear in mixing weight)
 *  - warp_scan: pairwise revealed-preference contradictions
 *
 * Tolerances: roots 1e-9, "additive" 1e-9, demonstrations of
 * non-additivity at >= 1e-3.
 */

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bracketlab/prefs.hpp"

namespace bracketlab {

inline constexpr std::size_t kMaxMenuSize = 16;
inline constexpr double kAdditiveTolerance = 1e-9;
inline constexpr double kPropositionTolerance = 1e-6;
inline constexpr double kNonAdditiveSignal = 1e-3;

using Menu = std::vector<Bundle>;

struct MenuPair {
  Menu menu_x;
  Menu menu_y;
};

void validate(const MenuPair& pair);

/// Picks one option from a nonempty menu and returns its index.
using ChoiceRule = std::function<std::size_t(std::span<const Bundle>)>;

/// Utility maximizer; throws TieDetected when the best two options are
/// within `tie_tolerance` in utility.
ChoiceRule maximizer(UtilityModel model, double tie_tolerance = 1e-12);

struct ChoiceTrace {
  Bundle f_sep;  // choice from menu_x presented alone
  Bundle s_sep;  // choice from menu_y presented alone
  Bundle f_agg;  // menu_x component of the aggregate choice
  Bundle s_agg;  // menu_y component of the aggregate choice
  Bundle o_agg;  // aggregate choice from {x + y}
};

ChoiceTrace choice_trace(const ChoiceRule& choose, const MenuPair& pair);

struct Violation {
  std::string equality;
  std::string menus;
  Bundle left;
  Bundle right;
  double gap = 0.0;  // |tasks difference| + |money difference|
};

struct ViolationReport {
  std::vector<Violation> violations;
  bool empty() const noexcept { return violations.empty(); }
};

std::string render_text(const ViolationReport& report);
std::string render_csv(const ViolationReport& report);

struct AdditivityResult {
  double max_gap = 0.0;
  Bundle worst_a;
  Bundle worst_b;
  /// Signed M(a + b) - M(a) - M(b) at the worst pair.
  double signed_gap = 0.0;
};

/// Max over all ordered pairs (a, b) of the grid, including a == b.
AdditivityResult additivity_residual(const UtilityModel& model, std::span<const Bundle> grid);

/// Cartesian grid of task counts and money amounts.
std::vector<Bundle> bundle_grid(std::span<const int> tasks, std::span<const double> money);

/// Compares separate and aggregate choices on every pair and lists each
/// failed equality among F_agg = F_sep, S_agg = S_sep, O_agg = O_sep.
ViolationReport unidentifiability_probe(const ChoiceRule& choose,
                                        std::span<const MenuPair> pairs);
ViolationReport unidentifiability_probe(const UtilityModel& model,
                                        std::span<const MenuPair> pairs);

/// Menus {(0,0), (A at price M(A) +/- eps)} and {(0,0), (B at price
/// M(B) +/- eps/2)}, with the sign following gap = M(A + B) - M(A) - M(B).
/// B's smaller shift keeps the two single purchases from tying. Requires
/// eps in (0, |gap| / 2) so that buying both is still strictly better (or
/// worse) than buying neither.
MenuPair epsilon_menu(const UtilityModel& model, const Bundle& a, const Bundle& b, double eps);

/// Random menu pairs with 2..max_size options; tasks in multiples of 5 up
/// to 30 and continuous money in [-3, 6].
std::vector<MenuPair> random_menu_pairs(std::mt19937_64& stream, int count,
                                        std::size_t max_size = 4);

/// Random subsets (2..max_size options) of a shared pool of `pool_size`
/// random bundles, so different menus overlap.
std::vector<Menu> random_overlapping_menus(std::mt19937_64& stream, int count,
                                           std::size_t pool_size = 10,
                                           std::size_t max_size = 6);

double cara_shift_invariance(const UtilityModel& model, const Lottery& lottery,
                             std::span<const double> wealth_grid);

/// max over p of |CE(p mix L) - p CE(L)| with CE taken at zero wealth.
double mixture_linearity(const UtilityModel& model, const Lottery& lottery,
                         std::span<const double> p_grid);

struct ObservedChoice {
  Menu menu;
  Bundle chosen;
};

ViolationReport warp_scan(std::span<const ObservedChoice> choices, double tolerance = 1e-9);

/// Menus with the maximizer's choice attached.
std::vector<ObservedChoice> maximizer_choices(const UtilityModel& model,
                                              std::span<const Menu> menus);

// ---------------------------------------------------------------------------
// Verification suites over the shipped model zoo.

struct ZooEntry {
  std::string name;
  UtilityModel model;
  bool additive = false;  // expected outcome; non-additive entries are expect-fail
};

std::vector<ZooEntry> shipped_zoo();

struct CheckResult {
  std::string suite;
  std::string check;
  bool passed = false;
  bool expect_violation = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool passed() const noexcept;
};

inline constexpr std::array<std::string_view, 5> kVerifySuites = {
    "additivity", "unidentifiability", "cara", "mixture", "warp"};

/// Runs one suite by name, or every suite for "all". Throws InvalidParams
/// for unknown names.
VerificationReport run_verification(std::string_view suite, std::uint64_t seed = 20200101);

std::string render_text(const VerificationReport& report);

}  // namespace bracketlab
