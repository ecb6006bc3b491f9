#pragma once

/**
 * @file mwu.hpp
 * @brief Wilcoxon rank-sum (Mann-Whitney) tests.
 *
 * mwu_test uses the normal approximation with the tie-corrected variance
 *
 *     Var W = n1 n2 / 12 * [(N + 1) - sum(t^3 - t) / (N (N - 1))]
 *
 * where t runs over tie-group sizes in the pooled sample. mwu_exact
 * enumerates every split of the pooled multiset and is the reference the
 * approximation is checked against on small samples.
 */

#include <span>
#include <vector>

namespace bracketlab {

struct MwuResult {
  double w = 0.0;  // rank sum of the first sample (midranks)
  double z = 0.0;
  double p = 1.0;  // two-sided
  bool tie_corrected = false;
  bool continuity = false;
};

/// Pooled midranks, 1-based; ties share the average of their positions.
std::vector<double> midranks(std::span<const double> pooled);

MwuResult mwu_test(std::span<const double> x, std::span<const double> y,
                   bool continuity = false);

inline constexpr int kMaxExactPooled = 14;

/// Exact two-sided p = P(|W - E W| >= |w_obs - E W|) under random
/// relabelling of the pooled sample. Throws TooLarge above 14 values.
double mwu_exact(std::span<const double> x, std::span<const double> y);

/// Standard normal CDF.
double normal_cdf(double z);

}  // namespace bracketlab
