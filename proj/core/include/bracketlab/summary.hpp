#pragma once

#include <span>
#include <vector>

#include "bracketlab/observations.hpp"

namespace bracketlab {

struct CellSummary {
  Treatment treatment = Treatment::Broad;
  Scenario scenario = Scenario::S1;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single observation
  double share_upper = 0.0;
  int n = 0;
};

/// Cells in scenario-major, treatment-minor order; only non-empty cells.
std::vector<CellSummary> summarize_means(std::span<const Observation> obs);
std::vector<CellSummary> summarize_means(const Dataset& d, bool drop_inconsistent = true);

}  // namespace bracketlab
