#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "bracketlab/errors.hpp"
#include "bracketlab/rng.hpp"
#include "bracketlab/theory.hpp"

namespace bracketlab {

namespace {

constexpr int kBatteryPairs = 25;
constexpr int kWarpMenus = 100;

// Bundles whose pairwise sums stay inside every zoo model's domain.
std::vector<Bundle> probe_grid() {
  static constexpr std::array<int, 4> kTasks = {0, 5, 10, 15};
  static constexpr std::array<double, 3> kMoney = {-1.0, 0.0, 1.5};
  return bundle_grid(kTasks, kMoney);
}

void add(VerificationReport& report, std::string suite, std::string check, bool passed,
         bool expect_violation, std::string detail) {
  report.checks.push_back(
      {std::move(suite), std::move(check), passed, expect_violation, std::move(detail)});
}

// Closure of a battery under x + y with x, y drawn from the same pair.
double battery_residual(const UtilityModel& model, std::span<const MenuPair> pairs) {
  double worst = 0.0;
  for (const auto& pair : pairs) {
    for (const auto& x : pair.menu_x) {
      for (const auto& y : pair.menu_y) {
        const double gap = money_metric(model, x + y) - money_metric(model, x) -
                           money_metric(model, y);
        worst = std::max(worst, std::abs(gap));
      }
    }
  }
  return worst;
}

void additivity_suite(VerificationReport& report) {
  const auto grid = probe_grid();
  for (const auto& entry : shipped_zoo()) {
    const AdditivityResult r = additivity_residual(entry.model, grid);
    const bool passed =
        entry.additive ? r.max_gap < kAdditiveTolerance : r.max_gap > kNonAdditiveSignal;
    add(report, "additivity", entry.name, passed, !entry.additive,
        fmt::format("max |M(a+b)-M(a)-M(b)| = {:.3e} at {} + {}", r.max_gap,
                    to_string(r.worst_a), to_string(r.worst_b)));
  }
  // Documented pair: quadratic cost, 15 + 15 tasks. M = m - c(e), so the gap is c(30) - 2 c(15).
  const UtilityModel quad = QuasiLinearPowerCost{0.004, 2.0};
  const std::array<Bundle, 1> fifteen = {Bundle{15, 0.0}};
  const double gap = additivity_residual(quad, fifteen).max_gap;
  add(report, "additivity", "documented pair (15,0)+(15,0)", std::abs(gap - 1.8) < 1e-9, true,
      fmt::format("residual {:.12f}, expected 1.8", gap));
}

void unidentifiability_suite(VerificationReport& report, std::uint64_t seed) {
  const auto grid = probe_grid();
  const auto zoo = shipped_zoo();
  for (std::size_t k = 0; k < zoo.size(); ++k) {
    const ZooEntry& entry = zoo[k];
    auto stream = derive_stream(seed, StreamPurpose::Fuzz, 2 * k);
    auto battery = random_menu_pairs(stream, kBatteryPairs);
    const AdditivityResult worst = additivity_residual(entry.model, grid);
    if (worst.max_gap > kAdditiveTolerance) {
      battery.push_back(
          epsilon_menu(entry.model, worst.worst_a, worst.worst_b, worst.max_gap / 4.0));
    }
    const ViolationReport probe = unidentifiability_probe(entry.model, battery);
    const double closure = battery_residual(entry.model, battery);
    const bool additive_on_closure = closure < kAdditiveTolerance;
    const bool passed = probe.empty() == additive_on_closure && probe.empty() == entry.additive;
    add(report, "unidentifiability", entry.name, passed, !entry.additive,
        fmt::format("{} violation(s) over {} menu pairs; closure residual {:.3e}",
                    probe.violations.size(), battery.size(), closure));
  }
  const UtilityModel quad = QuasiLinearPowerCost{0.004, 2.0};
  const std::array<MenuPair, 1> eps_pair = {
      epsilon_menu(quad, Bundle{15, 0.0}, Bundle{15, 0.0}, 0.5)};
  const ViolationReport probe = unidentifiability_probe(quad, eps_pair);
  bool aggregate_differs = false;
  for (const auto& v : probe.violations) aggregate_differs |= v.equality == "O_agg = O_sep";
  add(report, "unidentifiability", "epsilon menu A = B = 15 tasks, eps = 0.5", aggregate_differs,
      true, fmt::format("{} violation(s)", probe.violations.size()));
}

void cara_suite(VerificationReport& report) {
  const std::array<double, 2> zero_one = {0.0, 1.0};
  const std::array<double, 2> one_two = {1.0, 2.0};
  const std::array<double, 2> half = {0.5, 0.5};
  const Lottery coin = Lottery::money(zero_one, half);
  const Lottery coin12 = Lottery::money(one_two, half);

  const std::array<double, 3> example_grid = {0.0, 1.0, 10.0};
  const double example = cara_shift_invariance(CaraMoneyPowerCost{1.0, 0.0, 1.0}, coin,
                                               example_grid);
  add(report, "cara", "cara rho=1, grid {0,1,10}", example < kAdditiveTolerance, false,
      fmt::format("gap {:.3e}", example));

  const std::array<double, 3> fuzz_grid = {0.0, 1.0, 5.0};
  for (double rho : {0.1, 0.5, 1.0, 2.0}) {
    const double gap = cara_shift_invariance(CaraMoneyPowerCost{rho, 0.0, 1.0}, coin, fuzz_grid);
    add(report, "cara", fmt::format("cara rho={:g}", rho), gap < kAdditiveTolerance, false,
        fmt::format("gap {:.3e}", gap));
  }
  const std::array<double, 2> crra_grid = {1.0, 10.0};
  for (double eta : {0.5, 2.0, 3.0}) {
    const double gap = cara_shift_invariance(CrraMoney{eta}, coin12, crra_grid);
    const double threshold = eta == 2.0 ? kNonAdditiveSignal : 1e-4;
    add(report, "cara", fmt::format("crra eta={:g}", eta), gap > threshold, true,
        fmt::format("gap {:.6f} (needs > {:g})", gap, threshold));
  }
}

void mixture_suite(VerificationReport& report) {
  const std::array<double, 2> zero_one = {0.0, 1.0};
  const std::array<double, 2> half = {0.5, 0.5};
  const Lottery coin = Lottery::money(zero_one, half);

  std::vector<double> p_grid;
  for (int i = 1; i <= 9; ++i) p_grid.push_back(i / 10.0);
  const double linear = mixture_linearity(LinearMetric{0.0, 1.0}, coin, p_grid);
  add(report, "mixture", "risk-neutral linear", linear < kAdditiveTolerance, false,
      fmt::format("gap {:.3e}", linear));

  // CE of the coin is -ln E e^{-X}; mixing with zero at p = 1/2 halves the
  // weight on the coin inside the expectation.
  const double coin_mgf = 0.5 * (1.0 + std::exp(-1.0));
  const double expected = 0.5 * -std::log(coin_mgf) - -std::log(0.5 + 0.5 * coin_mgf);
  const std::array<double, 1> p_half = {0.5};
  const double cara = mixture_linearity(CaraMoneyPowerCost{1.0, 0.0, 1.0}, coin, p_half);
  add(report, "mixture", "cara rho=1, p=0.5",
      cara > kNonAdditiveSignal && std::abs(cara - expected) < kAdditiveTolerance, true,
      fmt::format("gap {:.6f}, closed form {:.6f}", cara, expected));

  const std::array<double, 1> p_one = {1.0};
  for (const auto& entry : shipped_zoo()) {
    const double gap = mixture_linearity(entry.model, coin, p_one);
    add(report, "mixture", fmt::format("{} p=1", entry.name), gap < kAdditiveTolerance, false,
        fmt::format("gap {:.3e}", gap));
  }
}

void warp_suite(VerificationReport& report, std::uint64_t seed) {
  const auto zoo = shipped_zoo();
  for (std::size_t k = 0; k < zoo.size(); ++k) {
    const ZooEntry& entry = zoo[k];
    auto stream = derive_stream(seed, StreamPurpose::Fuzz, 2 * k + 1);
    const auto menus = random_overlapping_menus(stream, kWarpMenus);
    const auto choices = maximizer_choices(entry.model, menus);
    const ViolationReport scan = warp_scan(choices);
    add(report, "warp", entry.name, scan.empty(), false,
        fmt::format("{} violation(s) over {} menus", scan.violations.size(), menus.size()));
  }
  const Bundle a{0, 1.0};
  const Bundle b{5, 2.0};
  const Bundle c{10, 3.0};
  const std::array<ObservedChoice, 2> textbook = {ObservedChoice{{a, b}, a},
                                                  ObservedChoice{{a, b, c}, b}};
  const ViolationReport scan = warp_scan(textbook);
  add(report, "warp", "constructed {a,b}->a, {a,b,c}->b", scan.violations.size() == 1, true,
      fmt::format("{} violation(s)", scan.violations.size()));
}

}  // namespace

std::vector<ZooEntry> shipped_zoo() {
  return {
      {"linear", LinearMetric{-0.1, 1.0}, true},
      {"power-gamma1", QuasiLinearPowerCost{0.06, 1.0}, true},
      {"power-gamma2", QuasiLinearPowerCost{0.004, 2.0}, false},
      {"cara-money", CaraMoneyPowerCost{0.2, 0.05, 1.0}, false},
  };
}

bool VerificationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerificationReport run_verification(std::string_view suite, std::uint64_t seed) {
  VerificationReport report;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "additivity") {
    additivity_suite(report);
    known = true;
  }
  if (all || suite == "unidentifiability") {
    unidentifiability_suite(report, seed);
    known = true;
  }
  if (all || suite == "cara") {
    cara_suite(report);
    known = true;
  }
  if (all || suite == "mixture") {
    mixture_suite(report);
    known = true;
  }
  if (all || suite == "warp") {
    warp_suite(report, seed);
    known = true;
  }
  if (!known) {
    throw InvalidParams(fmt::format(
        "unknown suite '{}'; expected additivity, unidentifiability, cara, mixture, warp or all",
        suite));
  }
  return report;
}

std::string render_text(const VerificationReport& report) {
  std::string out;
  int failed = 0;
  for (const auto& c : report.checks) {
    if (!c.passed) ++failed;
    out += fmt::format("[{}] {}/{}{}: {}\n", c.passed ? "PASS" : "FAIL", c.suite, c.check,
                       c.expect_violation ? " (expect-fail)" : "", c.detail);
  }
  out += fmt::format("{} checks, {} failed\n", report.checks.size(), failed);
  return out;
}

}  // namespace bracketlab
