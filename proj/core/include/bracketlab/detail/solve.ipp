#pragma once

#include <cmath>
#include <string>

#include "bracketlab/errors.hpp"

namespace bracketlab::detail {

template <class F>
double solve_increasing(F&& f, double center) {
  double step = 1.0;
  double lo = center - step;
  double hi = center + step;
  double f_lo = f(lo);
  double f_hi = f(hi);

  int doublings = 0;
  while (!(f_lo <= 0.0 && f_hi >= 0.0)) {
    if (std::isnan(f_lo) || std::isnan(f_hi) || ++doublings > kMaxBracketDoublings) {
      throw NonMonotoneModel("could not bracket a root after " +
                             std::to_string(kMaxBracketDoublings) + " doublings around " +
                             std::to_string(center));
    }
    step *= kBracketGrowth;
    if (f_lo > 0.0) {
      lo = center - step;
      f_lo = f(lo);
    }
    if (f_hi < 0.0) {
      hi = center + step;
      f_hi = f(hi);
    }
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;

  // Bisect until the interval stops shrinking in floating point.
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (std::isnan(f_mid)) {
      throw NonMonotoneModel("objective is undefined at " + std::to_string(mid));
    }
    if (f_mid == 0.0) return mid;
    if (f_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace bracketlab::detail

namespace bracketlab::detail {

/// Bisection on a fixed interval for nondecreasing f. The caller has
/// verified f(lo) <= 0 <= f(hi).
template <class F>
double bisect_increasing(F&& f, double lo, double hi) {
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (f_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace bracketlab::detail
