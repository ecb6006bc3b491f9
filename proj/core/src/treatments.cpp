#include "bracketlab/treatments.hpp"

namespace bracketlab {

std::string_view to_string(Treatment t) noexcept {
  switch (t) {
    case Treatment::Broad: return "BROAD";
    case Treatment::Narrow: return "NARROW";
    case Treatment::Low: return "LOW";
    case Treatment::Partial: return "PARTIAL";
    case Treatment::Before: return "BEFORE";
    case Treatment::After: return "AFTER";
  }
  return "?";
}

std::string_view to_string(Scenario s) noexcept { return s == Scenario::S1 ? "S1" : "S2"; }

std::optional<Treatment> parse_treatment(std::string_view name) noexcept {
  for (auto t : kAllTreatments) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::optional<Scenario> parse_scenario(std::string_view name) noexcept {
  if (name == "S1" || name == "1") return Scenario::S1;
  if (name == "S2" || name == "2") return Scenario::S2;
  return std::nullopt;
}

TreatmentSpec treatment_spec(Treatment t, Scenario s) {
  // Scenario 2 shifts every presented option by 15 tasks.
  const int shift = s == Scenario::S2 ? kExtraTasks : 0;
  TreatmentSpec spec;
  spec.treatment = t;
  spec.scenario = s;
  switch (t) {
    case Treatment::Broad:
      spec.option_a = {kExtraTasks + shift, kBaseWage + kParticipationFee};
      spec.option_b_tasks = 2 * kExtraTasks + shift;
      spec.option_b_base_money = kBaseWage + kParticipationFee;
      spec.endowment = {0, 0.0};
      break;
    case Treatment::Narrow:
    case Treatment::Before:
    case Treatment::After:
      spec.option_a = {shift, kBaseWage};
      spec.option_b_tasks = kExtraTasks + shift;
      spec.endowment = {kExtraTasks, kParticipationFee};
      break;
    case Treatment::Low:
      spec.option_a = {shift, kBaseWage};
      spec.option_b_tasks = kExtraTasks + shift;
      spec.endowment = {0, kParticipationFee};
      break;
    case Treatment::Partial:
      spec.option_a = {kExtraTasks + shift, kBaseWage};
      spec.option_b_tasks = 2 * kExtraTasks + shift;
      spec.endowment = {0, kParticipationFee};
      break;
  }
  return spec;
}

PriceList price_list() {
  PriceList list;
  for (int row = 0; row < kPriceListRows; ++row) {
    list.extra_wages[static_cast<std::size_t>(row)] = kPriceStep * (row + 1);
  }
  return list;
}

}  // namespace bracketlab
