#include "bracketlab/prefs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "bracketlab/errors.hpp"

namespace bracketlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double power_cost(double alpha, double gamma, int tasks) {
  if (tasks == 0) return 0.0;
  return alpha * std::pow(static_cast<double>(tasks), gamma);
}

constexpr double kProbabilitySumTolerance = 1e-12;

}  // namespace

std::string to_string(const Bundle& b) { return fmt::format("({}, {:.4f})", b.tasks, b.money); }

Lottery::Lottery(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw InvalidLottery("lottery needs at least one outcome");
  double total = 0.0;
  for (const auto& o : outcomes_) {
    if (!(o.probability >= 0.0 && o.probability <= 1.0)) {
      throw InvalidLottery(fmt::format("probability {} outside [0, 1]", o.probability));
    }
    if (o.bundle.tasks < 0) throw InvalidLottery("outcome has negative task count");
    total += o.probability;
  }
  if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
    throw InvalidLottery(fmt::format("probabilities sum to {:.17g}, expected 1", total));
  }
}

Lottery Lottery::degenerate(Bundle b) { return Lottery({{b, 1.0}}); }

Lottery Lottery::money(std::span<const double> values, std::span<const double> probs) {
  if (values.size() != probs.size()) {
    throw InvalidLottery("money lottery needs one probability per value");
  }
  std::vector<Outcome> outcomes;
  outcomes.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    outcomes.push_back({{0, values[i]}, probs[i]});
  }
  return Lottery(std::move(outcomes));
}

bool Lottery::money_only() const noexcept {
  return std::all_of(outcomes_.begin(), outcomes_.end(),
                     [](const Outcome& o) { return o.bundle.tasks == 0; });
}

Lottery Lottery::shifted(double w) const {
  auto out = outcomes_;
  for (auto& o : out) o.bundle.money += w;
  return Lottery(std::move(out));
}

Lottery Lottery::mixed_with_zero(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidLottery("mixture weight outside [0, 1]");
  std::vector<Outcome> out;
  out.reserve(outcomes_.size() + 1);
  for (const auto& o : outcomes_) out.push_back({o.bundle, p * o.probability});
  out.push_back({Bundle{}, 1.0 - p});
  return Lottery(std::move(out));
}

Lottery independent_sum(const Lottery& x, const Lottery& y) {
  std::vector<Outcome> out;
  out.reserve(x.outcomes().size() * y.outcomes().size());
  for (const auto& a : x.outcomes()) {
    for (const auto& b : y.outcomes()) {
      out.push_back({a.bundle + b.bundle, a.probability * b.probability});
    }
  }
  return Lottery(std::move(out));
}

void validate(const UtilityModel& model) {
  std::visit(overloaded{
                 [](const QuasiLinearPowerCost& m) {
                   if (!(m.alpha >= 0.0) || !std::isfinite(m.alpha))
                     throw InvalidModel("alpha must be finite and nonnegative");
                   if (!(m.gamma >= 1.0) || !std::isfinite(m.gamma))
                     throw InvalidModel("gamma must be finite and >= 1");
                 },
                 [](const CaraMoneyPowerCost& m) {
                   if (m.rho == 0.0 || !std::isfinite(m.rho))
                     throw InvalidModel("rho must be finite and nonzero");
                   if (!(m.alpha >= 0.0) || !std::isfinite(m.alpha))
                     throw InvalidModel("alpha must be finite and nonnegative");
                   if (!(m.gamma >= 1.0) || !std::isfinite(m.gamma))
                     throw InvalidModel("gamma must be finite and >= 1");
                 },
                 [](const LinearMetric& m) {
                   if (!(m.lambda_money > 0.0) || !std::isfinite(m.lambda_money))
                     throw InvalidModel("lambda_money must be positive");
                   if (!std::isfinite(m.lambda_tasks))
                     throw InvalidModel("lambda_tasks must be finite");
                 },
                 [](const CrraMoney& m) {
                   if (!(m.eta > 0.0) || m.eta == 1.0 || !std::isfinite(m.eta))
                     throw InvalidModel("eta must be positive and different from 1");
                 },
             },
             model);
}

std::string describe(const UtilityModel& model) {
  return std::visit(
      overloaded{
          [](const QuasiLinearPowerCost& m) {
            return fmt::format("quasilinear(alpha={:g}, gamma={:g})", m.alpha, m.gamma);
          },
          [](const CaraMoneyPowerCost& m) {
            return fmt::format("cara(rho={:g}, alpha={:g}, gamma={:g})", m.rho, m.alpha,
                               m.gamma);
          },
          [](const LinearMetric& m) {
            return fmt::format("linear(tasks={:g}, money={:g})", m.lambda_tasks,
                               m.lambda_money);
          },
          [](const CrraMoney& m) { return fmt::format("crra(eta={:g})", m.eta); },
      },
      model);
}

double effort_cost(const UtilityModel& model, int tasks) {
  return std::visit(overloaded{
                        [&](const QuasiLinearPowerCost& m) {
                          return power_cost(m.alpha, m.gamma, tasks);
                        },
                        [&](const CaraMoneyPowerCost& m) {
                          return power_cost(m.alpha, m.gamma, tasks);
                        },
                        [](const auto&) { return 0.0; },
                    },
                    model);
}

double utility(const UtilityModel& model, const Bundle& b) {
  return std::visit(
      overloaded{
          [&](const QuasiLinearPowerCost& m) {
            return b.money - power_cost(m.alpha, m.gamma, b.tasks);
          },
          [&](const CaraMoneyPowerCost& m) {
            return -std::expm1(-m.rho * b.money) / m.rho -
                   power_cost(m.alpha, m.gamma, b.tasks);
          },
          [&](const LinearMetric& m) {
            return m.lambda_tasks * b.tasks + m.lambda_money * b.money;
          },
          [&](const CrraMoney& m) {
            if (b.money > 0.0) return std::pow(b.money, 1.0 - m.eta) / (1.0 - m.eta);
            if (b.money == 0.0 && m.eta < 1.0) return 0.0;
            return -std::numeric_limits<double>::infinity();
          },
      },
      model);
}

double expected_utility(const UtilityModel& model, const Lottery& lottery) {
  double eu = 0.0;
  for (const auto& o : lottery.outcomes()) {
    if (o.probability == 0.0) continue;
    eu += o.probability * utility(model, o.bundle);
  }
  return eu;
}

double money_metric(const UtilityModel& model, const Bundle& b) {
  if (b == Bundle{}) return 0.0;
  if (const auto* cara = std::get_if<CaraMoneyPowerCost>(&model)) {
    // Money utility is bounded above by 1 / rho.
    const double cost = power_cost(cara->alpha, cara->gamma, b.tasks);
    if (cara->rho > 0.0 && cara->rho * cost >= 1.0) {
      throw NoIndifference(fmt::format(
          "no payment compensates {} tasks: cost {:g} reaches the utility bound 1/rho = {:g}",
          b.tasks, cost, 1.0 / cara->rho));
    }
  }
  const double reference = utility(model, Bundle{});
  // Paying more lowers u(b - M), so reference - u(b - M) increases in M.
  auto gap = [&](double payment) {
    return reference - utility(model, Bundle{b.tasks, b.money - payment});
  };
  return detail::solve_increasing(gap, b.money);
}

double certainty_equivalent(const UtilityModel& model, const Lottery& lottery, double wealth) {
  const double target = expected_utility(model, lottery.shifted(wealth));
  double center = 0.0;
  for (const auto& o : lottery.outcomes()) center += o.probability * o.bundle.money;
  auto gap = [&](double ce) { return utility(model, Bundle{0, wealth + ce}) - target; };
  return detail::solve_increasing(gap, center);
}

}  // namespace bracketlab
