#include "bracketlab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "bracketlab/errors.hpp"

namespace bracketlab {

namespace {

double bundle_distance(const Bundle& a, const Bundle& b) {
  return std::abs(a.tasks - b.tasks) + std::abs(a.money - b.money);
}

bool same_bundle(const Bundle& a, const Bundle& b, double tolerance = 1e-9) {
  return bundle_distance(a, b) <= tolerance;
}

std::string menu_string(const Menu& menu) {
  std::string out = "{";
  for (std::size_t i = 0; i < menu.size(); ++i) {
    if (i) out += " ";
    out += to_string(menu[i]);
  }
  return out + "}";
}

Bundle random_bundle(std::mt19937_64& stream) {
  const int tasks = 5 * std::uniform_int_distribution<int>(0, 6)(stream);
  const double money = std::uniform_real_distribution<double>(-3.0, 6.0)(stream);
  return {tasks, money};
}

}  // namespace

void validate(const MenuPair& pair) {
  for (const Menu* m : {&pair.menu_x, &pair.menu_y}) {
    if (m->empty()) throw InvalidParams("menus must be nonempty");
    if (m->size() > kMaxMenuSize) {
      throw InvalidParams(fmt::format("menus are limited to {} options", kMaxMenuSize));
    }
  }
}

ChoiceRule maximizer(UtilityModel model, double tie_tolerance) {
  return [model = std::move(model), tie_tolerance](std::span<const Bundle> menu) {
    if (menu.empty()) throw InvalidParams("cannot choose from an empty menu");
    std::size_t best = 0;
    double best_u = -std::numeric_limits<double>::infinity();
    double runner_up = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < menu.size(); ++i) {
      const double u = utility(model, menu[i]);
      if (u > best_u) {
        runner_up = best_u;
        best_u = u;
        best = i;
      } else if (u > runner_up) {
        runner_up = u;
      }
    }
    if (menu.size() > 1 && best_u - runner_up <= tie_tolerance * std::max(1.0, std::abs(best_u))) {
      throw TieDetected(fmt::format("two options within {:g} of the best utility {:.12g}",
                                    tie_tolerance, best_u));
    }
    return best;
  };
}

ChoiceTrace choice_trace(const ChoiceRule& choose, const MenuPair& pair) {
  validate(pair);
  ChoiceTrace trace;
  trace.f_sep = pair.menu_x[choose(pair.menu_x)];
  trace.s_sep = pair.menu_y[choose(pair.menu_y)];

  // Distinct sums with every decomposition that produces them.
  struct Sum {
    Bundle total;
    std::vector<std::pair<std::size_t, std::size_t>> parts;
  };
  std::vector<Sum> sums;
  for (std::size_t i = 0; i < pair.menu_x.size(); ++i) {
    for (std::size_t j = 0; j < pair.menu_y.size(); ++j) {
      const Bundle total = pair.menu_x[i] + pair.menu_y[j];
      auto it = std::find_if(sums.begin(), sums.end(),
                             [&](const Sum& s) { return same_bundle(s.total, total, 0.0); });
      if (it == sums.end()) {
        sums.push_back({total, {{i, j}}});
      } else {
        it->parts.emplace_back(i, j);
      }
    }
  }
  std::vector<Bundle> aggregate;
  aggregate.reserve(sums.size());
  for (const auto& s : sums) aggregate.push_back(s.total);
  const Sum& chosen = sums[choose(aggregate)];
  trace.o_agg = chosen.total;

  // Prefer the decomposition that matches the separate choices, if any.
  auto parts = chosen.parts.front();
  for (const auto& [i, j] : chosen.parts) {
    if (same_bundle(pair.menu_x[i], trace.f_sep) && same_bundle(pair.menu_y[j], trace.s_sep)) {
      parts = {i, j};
      break;
    }
  }
  trace.f_agg = pair.menu_x[parts.first];
  trace.s_agg = pair.menu_y[parts.second];
  return trace;
}

std::string render_text(const ViolationReport& report) {
  if (report.empty()) return "no violations\n";
  std::string out = fmt::format("{} violation(s)\n", report.violations.size());
  for (const auto& v : report.violations) {
    out += fmt::format("  {}: {} vs {} (gap {:.4f}) menus {}\n", v.equality, to_string(v.left),
                       to_string(v.right), v.gap, v.menus);
  }
  return out;
}

std::string render_csv(const ViolationReport& report) {
  std::string out = "equality,menus,left_tasks,left_money,right_tasks,right_money,gap\n";
  for (const auto& v : report.violations) {
    out += fmt::format("{},\"{}\",{},{:.4f},{},{:.4f},{:.4f}\n", v.equality, v.menus,
                       v.left.tasks, v.left.money, v.right.tasks, v.right.money, v.gap);
  }
  return out;
}

AdditivityResult additivity_residual(const UtilityModel& model, std::span<const Bundle> grid) {
  std::vector<double> metric(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) metric[i] = money_metric(model, grid[i]);
  AdditivityResult result;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double signed_gap = money_metric(model, grid[i] + grid[j]) - metric[i] - metric[j];
      if (std::abs(signed_gap) > result.max_gap) {
        result = {std::abs(signed_gap), grid[i], grid[j], signed_gap};
      }
    }
  }
  return result;
}

std::vector<Bundle> bundle_grid(std::span<const int> tasks, std::span<const double> money) {
  std::vector<Bundle> grid;
  grid.reserve(tasks.size() * money.size());
  for (int t : tasks) {
    for (double m : money) grid.push_back({t, m});
  }
  return grid;
}

ViolationReport unidentifiability_probe(const ChoiceRule& choose,
                                        std::span<const MenuPair> pairs) {
  ViolationReport report;
  for (const auto& pair : pairs) {
    const ChoiceTrace trace = choice_trace(choose, pair);
    const std::string menus = menu_string(pair.menu_x) + " + " + menu_string(pair.menu_y);
    auto check = [&](const char* name, const Bundle& agg, const Bundle& sep) {
      if (!same_bundle(agg, sep)) {
        report.violations.push_back({name, menus, agg, sep, bundle_distance(agg, sep)});
      }
    };
    check("F_agg = F_sep", trace.f_agg, trace.f_sep);
    check("S_agg = S_sep", trace.s_agg, trace.s_sep);
    check("O_agg = O_sep", trace.o_agg, trace.f_sep + trace.s_sep);
  }
  return report;
}

ViolationReport unidentifiability_probe(const UtilityModel& model,
                                        std::span<const MenuPair> pairs) {
  return unidentifiability_probe(maximizer(model), pairs);
}

MenuPair epsilon_menu(const UtilityModel& model, const Bundle& a, const Bundle& b, double eps) {
  const double m_a = money_metric(model, a);
  const double m_b = money_metric(model, b);
  const double gap = money_metric(model, a + b) - m_a - m_b;
  if (!(eps > 0.0 && 2.0 * eps < std::abs(gap))) {
    throw InvalidParams(fmt::format(
        "epsilon must lie in (0, |M(A+B) - M(A) - M(B)| / 2) = (0, {:.6g}), got {}",
        std::abs(gap) / 2.0, eps));
  }
  const double sign = gap > 0.0 ? 1.0 : -1.0;
  // (X, P) is "receive X for payment P": money falls by P.
  const Bundle priced_a{a.tasks, a.money - (m_a + sign * eps)};
  const Bundle priced_b{b.tasks, b.money - (m_b + sign * eps / 2.0)};
  return {{Bundle{}, priced_a}, {Bundle{}, priced_b}};
}

std::vector<MenuPair> random_menu_pairs(std::mt19937_64& stream, int count,
                                        std::size_t max_size) {
  max_size = std::clamp<std::size_t>(max_size, 2, kMaxMenuSize);
  std::uniform_int_distribution<std::size_t> size_dist(2, max_size);
  std::vector<MenuPair> pairs;
  pairs.reserve(static_cast<std::size_t>(std::max(0, count)));
  for (int i = 0; i < count; ++i) {
    MenuPair pair;
    const std::size_t nx = size_dist(stream);
    const std::size_t ny = size_dist(stream);
    for (std::size_t k = 0; k < nx; ++k) pair.menu_x.push_back(random_bundle(stream));
    for (std::size_t k = 0; k < ny; ++k) pair.menu_y.push_back(random_bundle(stream));
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<Menu> random_overlapping_menus(std::mt19937_64& stream, int count,
                                           std::size_t pool_size, std::size_t max_size) {
  pool_size = std::max<std::size_t>(pool_size, 2);
  max_size = std::clamp<std::size_t>(max_size, 2, std::min(pool_size, kMaxMenuSize));
  std::vector<Bundle> pool(pool_size);
  for (auto& b : pool) b = random_bundle(stream);

  std::uniform_int_distribution<std::size_t> size_dist(2, max_size);
  std::vector<Menu> menus;
  std::vector<std::size_t> index(pool_size);
  for (int i = 0; i < count; ++i) {
    std::iota(index.begin(), index.end(), 0);
    std::shuffle(index.begin(), index.end(), stream);
    const std::size_t n = size_dist(stream);
    Menu menu;
    for (std::size_t k = 0; k < n; ++k) menu.push_back(pool[index[k]]);
    menus.push_back(std::move(menu));
  }
  return menus;
}

double cara_shift_invariance(const UtilityModel& model, const Lottery& lottery,
                             std::span<const double> wealth_grid) {
  if (!lottery.money_only()) throw InvalidLottery("shift invariance needs a money-only lottery");
  std::vector<double> ce;
  ce.reserve(wealth_grid.size());
  for (double w : wealth_grid) ce.push_back(certainty_equivalent(model, lottery, w));
  if (ce.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(ce.begin(), ce.end());
  return *hi - *lo;
}

double mixture_linearity(const UtilityModel& model, const Lottery& lottery,
                         std::span<const double> p_grid) {
  const double base = certainty_equivalent(model, lottery, 0.0);
  double worst = 0.0;
  for (double p : p_grid) {
    const double mixed = certainty_equivalent(model, lottery.mixed_with_zero(p), 0.0);
    worst = std::max(worst, std::abs(mixed - p * base));
  }
  return worst;
}

ViolationReport warp_scan(std::span<const ObservedChoice> choices, double tolerance) {
  auto contains = [&](const Menu& menu, const Bundle& b) {
    return std::any_of(menu.begin(), menu.end(),
                       [&](const Bundle& m) { return same_bundle(m, b, tolerance); });
  };
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (!contains(choices[i].menu, choices[i].chosen)) {
      throw ChosenNotInMenu(fmt::format("choice {} ({}) is not in its menu {}", i,
                                        to_string(choices[i].chosen),
                                        menu_string(choices[i].menu)));
    }
  }
  ViolationReport report;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    for (std::size_t j = i + 1; j < choices.size(); ++j) {
      const Bundle& x = choices[i].chosen;
      const Bundle& y = choices[j].chosen;
      if (same_bundle(x, y, tolerance)) continue;
      if (contains(choices[j].menu, x) && contains(choices[i].menu, y)) {
        report.violations.push_back(
            {"WARP", menu_string(choices[i].menu) + " ; " + menu_string(choices[j].menu), x, y,
             bundle_distance(x, y)});
      }
    }
  }
  return report;
}

std::vector<ObservedChoice> maximizer_choices(const UtilityModel& model,
                                              std::span<const Menu> menus) {
  const ChoiceRule choose = maximizer(model);
  std::vector<ObservedChoice> out;
  out.reserve(menus.size());
  for (const auto& menu : menus) out.push_back({menu, menu[choose(menu)]});
  return out;
}

}  // namespace bracketlab
