#pragma once

#include <span>
#include <vector>

#include "bracketlab/simulate.hpp"

namespace bracketlab {

/// One (subject, scenario) response as the estimators see it.
struct Observation {
  int subject_id = 0;
  Treatment treatment = Treatment::Broad;
  Scenario scenario = Scenario::S1;
  double wage = 0.0;  // censored responses carry the censor code
  bool censored = false;
  Covariates covariates;
};

/// Flattens a dataset. Inconsistent scenarios are dropped when requested;
/// otherwise they enter at 0.25 * (rejections + 1), which is the switch
/// wage the same number of rejections would produce in monotone order.
std::vector<Observation> observations(const Dataset& d, bool drop_inconsistent = true);

std::vector<double> wages(std::span<const Observation> obs, Treatment t, Scenario s);

}  // namespace bracketlab
