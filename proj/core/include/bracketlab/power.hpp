#pragma once

namespace bracketlab {

struct SampleSizes {
  int n_large = 0;
  int n_small = 0;
  double n_small_raw = 0.0;  // before rounding up
};

/// Two-sample normal-approximation sample sizes for standardized effect d
/// with allocation n_large = ratio * n_small:
///
///     n_small = (1 + 1/ratio) (z_{1-alpha/2} + z_power)^2 / d^2  [* pi/3]
///
/// The optional pi/3 factor inflates for the Wilcoxon test's asymptotic
/// relative efficiency under normality.
SampleSizes power_two_sample(double d, double alpha, double power, double ratio,
                             bool wilcoxon_are);

/// Standard normal quantile.
double normal_quantile(double p);

}  // namespace bracketlab
