#include "bracketlab/summary.hpp"

#include <cmath>

namespace bracketlab {

std::vector<CellSummary> summarize_means(std::span<const Observation> obs) {
  std::vector<CellSummary> cells;
  for (auto s : kAllScenarios) {
    for (auto t : kAllTreatments) {
      double sum = 0.0;
      int n = 0;
      int upper = 0;
      for (const auto& o : obs) {
        if (o.treatment != t || o.scenario != s) continue;
        sum += o.wage;
        ++n;
        if (o.censored) ++upper;
      }
      if (n == 0) continue;
      const double mean = sum / n;
      double ss = 0.0;
      for (const auto& o : obs) {
        if (o.treatment == t && o.scenario == s) ss += (o.wage - mean) * (o.wage - mean);
      }
      const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
      cells.push_back({t, s, mean, sd, static_cast<double>(upper) / n, n});
    }
  }
  return cells;
}

std::vector<CellSummary> summarize_means(const Dataset& d, bool drop_inconsistent) {
  const auto obs = observations(d, drop_inconsistent);
  return summarize_means(obs);
}

}  // namespace bracketlab
