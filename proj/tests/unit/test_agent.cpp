#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "bracketlab/agent.hpp"
#include "bracketlab/errors.hpp"
#include "support/generators.hpp"

using namespace bracketlab;
using namespace bracketlab::testing;

namespace {

const UtilityModel kQuad = QuasiLinearPowerCost{0.004, 2.0};

double cost(double alpha, double gamma, int tasks) {
  return tasks == 0 ? 0.0 : alpha * std::pow(tasks, gamma);
}

// Wages outside the search window come back as infinite bounds.
void expect_wage(double actual, double expected) {
  if (expected > kWageSearchHigh) {
    EXPECT_EQ(actual, std::numeric_limits<double>::infinity());
  } else if (expected < kWageSearchLow) {
    EXPECT_EQ(actual, -std::numeric_limits<double>::infinity());
  } else {
    EXPECT_NEAR(actual, expected, 1e-9);
  }
}

}  // namespace

TEST(Treatments, NamesRoundTrip) {
  for (auto t : kAllTreatments) EXPECT_EQ(parse_treatment(to_string(t)), t);
  for (auto s : kAllScenarios) EXPECT_EQ(parse_scenario(to_string(s)), s);
  EXPECT_FALSE(parse_treatment("WIDE").has_value());
}

TEST(Treatments, NarrowS1) {
  const TreatmentSpec s = treatment_spec(Treatment::Narrow, Scenario::S1);
  EXPECT_EQ(s.option_a, (Bundle{0, 4.0}));
  EXPECT_EQ(s.option_b(1.0), (Bundle{15, 5.0}));
  EXPECT_EQ(s.endowment, (Bundle{15, 2.0}));
  EXPECT_EQ(s.full_a(), (Bundle{15, 6.0}));
  EXPECT_EQ(s.full_b(1.0), (Bundle{30, 7.0}));
}

TEST(Treatments, BroadS2) {
  const TreatmentSpec s = treatment_spec(Treatment::Broad, Scenario::S2);
  EXPECT_EQ(s.option_a, (Bundle{30, 6.0}));
  EXPECT_EQ(s.option_b(0.5), (Bundle{45, 6.5}));
  EXPECT_EQ(s.endowment, Bundle{});
}

TEST(Treatments, LowS2) {
  const TreatmentSpec s = treatment_spec(Treatment::Low, Scenario::S2);
  EXPECT_EQ(s.option_a, (Bundle{15, 4.0}));
  EXPECT_EQ(s.option_b(0.0), (Bundle{30, 4.0}));
  EXPECT_EQ(s.endowment, (Bundle{0, 2.0}));
}

TEST(Treatments, FullOutcomesAgreeAcrossEquivalentTreatments) {
  const std::array<Treatment, 5> same = {Treatment::Broad, Treatment::Narrow, Treatment::Partial,
                                         Treatment::Before, Treatment::After};
  for (auto s : kAllScenarios) {
    const TreatmentSpec ref = treatment_spec(Treatment::Broad, s);
    for (auto t : same) {
      const TreatmentSpec spec = treatment_spec(t, s);
      EXPECT_EQ(spec.full_a(), ref.full_a()) << to_string(t) << " " << to_string(s);
      for (double w : price_list().extra_wages) {
        EXPECT_EQ(spec.full_b(w), ref.full_b(w)) << to_string(t) << " " << to_string(s);
      }
    }
  }
}

TEST(Treatments, LowDiffersFromNarrowOnlyInEndowmentTasks) {
  for (auto s : kAllScenarios) {
    const TreatmentSpec low = treatment_spec(Treatment::Low, s);
    const TreatmentSpec narrow = treatment_spec(Treatment::Narrow, s);
    EXPECT_EQ(low.option_a, narrow.option_a);
    EXPECT_EQ(low.option_b(2.0), narrow.option_b(2.0));
    EXPECT_EQ(low.endowment, (Bundle{0, narrow.endowment.money}));
    EXPECT_EQ(narrow.endowment.tasks, 15);
  }
}

TEST(PriceList, Rows) {
  const PriceList list = price_list();
  EXPECT_EQ(list.extra_wages.size(), 16u);
  EXPECT_EQ(list.extra_wages.front(), 0.25);
  EXPECT_EQ(list.extra_wages.back(), 4.00);
  EXPECT_TRUE(std::is_sorted(list.extra_wages.begin(), list.extra_wages.end()));
}

TEST(EvaluateOption, Examples) {
  const Agent broad{kQuad, BroadMode{}};
  const Agent narrow{kQuad, NarrowMode{}};
  EXPECT_NEAR(evaluate_option(broad, {15, 4.0}, {15, 2.0}), 2.4, 1e-12);
  EXPECT_NEAR(evaluate_option(narrow, {15, 4.0}, {15, 2.0}), 3.1, 1e-12);
  for (const Agent& a : {broad, narrow, Agent{kQuad, PartialMode{}}}) {
    EXPECT_EQ(evaluate_option(a, {10, 1.0}, Bundle{}), utility(kQuad, {10, 1.0}));
  }
  EXPECT_THROW((void)evaluate_option(Agent{kQuad, ConvexKappa{0.5}}, {1, 1.0}, Bundle{}),
               ModeUnsupported);
}

TEST(ReservationWage, Examples) {
  const Agent broad{kQuad, BroadMode{}};
  const Agent narrow{kQuad, NarrowMode{}};
  EXPECT_NEAR(reservation_wage_exact(broad, treatment_spec(Treatment::Broad, Scenario::S1)), 2.7,
              1e-9);
  EXPECT_NEAR(reservation_wage_exact(narrow, treatment_spec(Treatment::Narrow, Scenario::S1)),
              0.9, 1e-9);
}

TEST(ReservationWage, ConvexKappaEndpoints) {
  for (auto t : kAllTreatments) {
    for (auto s : kAllScenarios) {
      const TreatmentSpec spec = treatment_spec(t, s);
      EXPECT_EQ(reservation_wage_exact(Agent{kQuad, ConvexKappa{1.0}}, spec),
                reservation_wage_exact(Agent{kQuad, NarrowMode{}}, spec));
      EXPECT_EQ(reservation_wage_exact(Agent{kQuad, ConvexKappa{0.0}}, spec),
                reservation_wage_exact(Agent{kQuad, BroadMode{}}, spec));
    }
  }
}

TEST(ReservationWage, ClosedFormProperty) {
  // Quasi-linear money: the wage equals the marginal effort cost of the 15
  // extra tasks in whichever frame the agent uses.
  auto g = property_stream(10);
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto m = any_power_cost(g);
    const auto t = kAllTreatments[static_cast<std::size_t>(uniform_int(g, 0, 5))];
    const auto s = kAllScenarios[static_cast<std::size_t>(uniform_int(g, 0, 1))];
    const TreatmentSpec spec = treatment_spec(t, s);
    const double money_gap = spec.option_a.money - spec.option_b_base_money;

    const int broad_base = spec.full_a().tasks;
    const double broad = cost(m.alpha, m.gamma, broad_base + kExtraTasks) -
                         cost(m.alpha, m.gamma, broad_base) + money_gap;
    expect_wage(reservation_wage_or_bound(Agent{m, BroadMode{}}, spec), broad);

    const int narrow_base = spec.option_a.tasks;
    const double narrow = cost(m.alpha, m.gamma, narrow_base + kExtraTasks) -
                          cost(m.alpha, m.gamma, narrow_base) + money_gap;
    expect_wage(reservation_wage_or_bound(Agent{m, NarrowMode{}}, spec), narrow);
  }
}

TEST(ReservationWage, BroadAgentsIgnoreFraming) {
  auto g = property_stream(11);
  for (int i = 0; i < 100; ++i) {
    const Agent agent{any_model(g), BroadMode{}, uniform(g, -1, 1)};
    for (auto s : kAllScenarios) {
      const double ref = reservation_wage_or_bound(agent, treatment_spec(Treatment::Broad, s));
      for (auto t : {Treatment::Narrow, Treatment::Partial, Treatment::Before, Treatment::After}) {
        expect_wage(reservation_wage_or_bound(agent, treatment_spec(t, s)), ref);
      }
    }
  }
}

TEST(ReservationWage, FramingShiftOnlyForBeforeAfter) {
  const Agent plain{kQuad, NarrowMode{}, 0.0};
  const Agent shifted{kQuad, NarrowMode{}, 0.3};
  for (auto t : kAllTreatments) {
    const TreatmentSpec spec = treatment_spec(t, Scenario::S1);
    const double delta =
        reservation_wage_exact(shifted, spec) - reservation_wage_exact(plain, spec);
    EXPECT_NEAR(delta, is_narrow_framing_label(t) ? 0.3 : 0.0, 1e-12) << to_string(t);
  }
}

TEST(ReservationWage, UnboundedWithoutIndifference) {
  const Agent lazy{QuasiLinearPowerCost{50.0, 2.0}, BroadMode{}};
  const TreatmentSpec spec = treatment_spec(Treatment::Broad, Scenario::S1);
  EXPECT_EQ(reservation_wage_or_bound(lazy, spec), std::numeric_limits<double>::infinity());
  EXPECT_THROW((void)reservation_wage_exact(lazy, spec), NoIndifference);
}

TEST(SnapToList, Examples) {
  const PriceList list = price_list();
  EXPECT_EQ(snap_to_list(2.7, list), (SnappedWage{2.75, false}));
  EXPECT_EQ(snap_to_list(4.5, list), (SnappedWage{4.25, true}));
  EXPECT_EQ(snap_to_list(0.25, list), (SnappedWage{0.25, false}));
  EXPECT_EQ(snap_to_list(-3.0, list), (SnappedWage{0.25, false}));
  EXPECT_EQ(snap_to_list(4.0, list), (SnappedWage{4.0, false}));
}

TEST(SnapToList, SmallestListedWageAtOrAbove) {
  const PriceList list = price_list();
  auto g = property_stream(12);
  for (int i = 0; i < kPropertyCases; ++i) {
    const double r = uniform(g, -1.0, 5.0);
    const SnappedWage s = snap_to_list(r, list);
    if (s.censored) {
      EXPECT_GT(r, 4.0);
    } else {
      EXPECT_GE(s.recorded, r - kSnapTolerance);
      EXPECT_TRUE(s.recorded == 0.25 || s.recorded - 0.25 < r);
    }
  }
}
