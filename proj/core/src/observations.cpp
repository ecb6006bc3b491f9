#include "bracketlab/observations.hpp"

#include <algorithm>

namespace bracketlab {

std::vector<Observation> observations(const Dataset& d, bool drop_inconsistent) {
  std::vector<Observation> out;
  out.reserve(d.records.size() * 2);
  for (const auto& rec : d.records) {
    for (auto s : kAllScenarios) {
      const ScenarioResponse& resp = rec.response(s);
      Observation o{rec.subject_id, rec.treatment, s, resp.res_wage, resp.censored,
                    rec.covariates};
      if (!resp.consistent) {
        if (drop_inconsistent) continue;
        const auto rejects = std::count(resp.accept.begin(), resp.accept.end(), false);
        o.censored = rejects == kPriceListRows;
        o.wage = o.censored ? kCensorCode : kPriceStep * static_cast<double>(rejects + 1);
      }
      out.push_back(o);
    }
  }
  return out;
}

std::vector<double> wages(std::span<const Observation> obs, Treatment t, Scenario s) {
  std::vector<double> out;
  for (const auto& o : obs) {
    if (o.treatment == t && o.scenario == s) out.push_back(o.wage);
  }
  return out;
}

}  // namespace bracketlab
