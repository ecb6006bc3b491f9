#pragma once

/**
 * @file treatments.hpp
 * @brief The six treatments, two scenarios and the 16-row price list.
 *
 * Every treatment offers a binary choice between a lighter option A and an
 * option B with 15 more tasks whose pay rises down the price list. The
 * endowment is shown on the page but not folded into the options.
 *
 *   treatment  presented A / B (S1)        endowment   full outcome (S1)
 *   BROAD      (15,$6) / (30,$M+2)         (0,0)       (15,$6) / (30,$M+2)
 *   NARROW     (0,$4)  / (15,$M)           (15,$2)     (15,$6) / (30,$M+2)
 *   LOW        (0,$4)  / (15,$M)           (0,$2)      (0,$6)  / (15,$M+2)
 *   PARTIAL    (15,$4) / (30,$M)           (0,$2)      (15,$6) / (30,$M+2)
 *
 * Scenario 2 adds 15 tasks to both presented options (and hence to the
 * full outcomes). BEFORE and AFTER reuse NARROW's structure. M = $4 + w
 * where w is the extra wage on a price-list row.
 */

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "bracketlab/prefs.hpp"

namespace bracketlab {

enum class Treatment { Broad, Narrow, Low, Partial, Before, After };
enum class Scenario { S1, S2 };

inline constexpr std::array<Treatment, 6> kAllTreatments = {
    Treatment::Broad,   Treatment::Narrow, Treatment::Low,
    Treatment::Partial, Treatment::Before, Treatment::After};
inline constexpr std::array<Scenario, 2> kAllScenarios = {Scenario::S1, Scenario::S2};

std::string_view to_string(Treatment t) noexcept;
std::string_view to_string(Scenario s) noexcept;
std::optional<Treatment> parse_treatment(std::string_view name) noexcept;
std::optional<Scenario> parse_scenario(std::string_view name) noexcept;

constexpr bool is_narrow_framing_label(Treatment t) noexcept {
  return t == Treatment::Before || t == Treatment::After;
}

inline constexpr int kExtraTasks = 15;
inline constexpr double kBaseWage = 4.00;
inline constexpr double kParticipationFee = 2.00;
inline constexpr double kCensorCode = 4.25;

struct TreatmentSpec {
  Treatment treatment = Treatment::Broad;
  Scenario scenario = Scenario::S1;
  Bundle option_a;
  int option_b_tasks = 0;
  /// Money on option B before the extra wage: $4 plus the $2 fee in BROAD.
  double option_b_base_money = kBaseWage;
  Bundle endowment;

  Bundle option_b(double extra_wage) const noexcept {
    return {option_b_tasks, option_b_base_money + extra_wage};
  }
  Bundle full_a() const noexcept { return option_a + endowment; }
  Bundle full_b(double extra_wage) const noexcept { return option_b(extra_wage) + endowment; }
};

TreatmentSpec treatment_spec(Treatment t, Scenario s);

inline constexpr int kPriceListRows = 16;
inline constexpr double kPriceStep = 0.25;

struct PriceList {
  std::array<double, kPriceListRows> extra_wages{};
};

PriceList price_list();

}  // namespace bracketlab
