#include "bracketlab/agent.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "bracketlab/errors.hpp"

namespace bracketlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

double pure_reservation_wage(const Agent& agent, const TreatmentSpec& spec) {
  const double value_a = evaluate_option(agent, spec.option_a, spec.endowment);
  auto gain = [&](double wage) {
    return evaluate_option(agent, spec.option_b(wage), spec.endowment) - value_a;
  };
  if (gain(kWageSearchHigh) < 0.0) return kInf;
  if (gain(kWageSearchLow) > 0.0) return -kInf;
  return detail::bisect_increasing(gain, kWageSearchLow, kWageSearchHigh);
}

// Endpoints are exact so an unbounded component with zero weight drops out.
double convex_combination(double kappa, double r_broad, double r_narrow) {
  if (kappa == 0.0) return r_broad;
  if (kappa == 1.0) return r_narrow;
  return (1.0 - kappa) * r_broad + kappa * r_narrow;
}

}  // namespace

std::string describe(const BracketingMode& mode) {
  return std::visit(overloaded{
                        [](const BroadMode&) { return std::string("broad"); },
                        [](const NarrowMode&) { return std::string("narrow"); },
                        [](const PartialMode&) { return std::string("partial"); },
                        [](const ConvexKappa& k) { return fmt::format("kappa={:g}", k.kappa); },
                    },
                    mode);
}

double evaluate_option(const Agent& agent, const Bundle& presented, const Bundle& endowment) {
  return std::visit(
      overloaded{
          [&](const BroadMode&) { return utility(agent.model, presented + endowment); },
          [&](const NarrowMode&) { return utility(agent.model, presented); },
          [&](const PartialMode&) {
            return utility(agent.model,
                           Bundle{presented.tasks + endowment.tasks, presented.money});
          },
          [](const ConvexKappa&) -> double {
            throw ModeUnsupported(
                "ConvexKappa is defined on reservation wages, not on option utilities");
          },
      },
      agent.mode);
}

double reservation_wage_or_bound(const Agent& agent, const TreatmentSpec& spec) {
  const double shift = is_narrow_framing_label(spec.treatment) ? agent.framing_shift : 0.0;
  if (const auto* convex = std::get_if<ConvexKappa>(&agent.mode)) {
    const Agent broad{agent.model, BroadMode{}, 0.0};
    const Agent narrow{agent.model, NarrowMode{}, 0.0};
    const double r_broad = pure_reservation_wage(broad, spec);
    const double r_narrow = pure_reservation_wage(narrow, spec) + shift;
    return convex_combination(convex->kappa, r_broad, r_narrow);
  }
  const double r = pure_reservation_wage(agent, spec);
  return std::holds_alternative<NarrowMode>(agent.mode) ? r + shift : r;
}

double reservation_wage_exact(const Agent& agent, const TreatmentSpec& spec) {
  const double r = reservation_wage_or_bound(agent, spec);
  if (!std::isfinite(r)) {
    throw NoIndifference(fmt::format(
        "{} {}: no switch for extra wage in [{}, {}] under {}", to_string(spec.treatment),
        to_string(spec.scenario), kWageSearchLow, kWageSearchHigh, describe(agent.model)));
  }
  return r;
}

SnappedWage snap_to_list(double reservation_wage, const PriceList& list) {
  for (double wage : list.extra_wages) {
    if (wage >= reservation_wage - kSnapTolerance) return {wage, false};
  }
  return {kCensorCode, true};
}

}  // namespace bracketlab
