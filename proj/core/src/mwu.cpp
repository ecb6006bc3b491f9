#include "bracketlab/mwu.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include <fmt/format.h>

#include "bracketlab/errors.hpp"

namespace bracketlab {

namespace {

void require_nonempty(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw EmptySample("rank-sum test needs two nonempty samples");
}

std::vector<double> pooled(std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(x.begin(), x.end());
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

MwuResult mwu_test(std::span<const double> x, std::span<const double> y, bool continuity) {
  require_nonempty(x, y);
  const auto all = pooled(x, y);
  const auto ranks = midranks(all);

  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  const double n = n1 + n2;

  MwuResult result;
  result.continuity = continuity;
  result.w = std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(x.size()), 0.0);

  auto sorted = all;
  std::sort(sorted.begin(), sorted.end());
  double tie_sum = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_sum += t * t * t - t;
    i = j;
  }
  result.tie_corrected = tie_sum > 0.0;

  const double expected = n1 * (n + 1.0) / 2.0;
  const double variance =
      n > 1.0 ? n1 * n2 / 12.0 * ((n + 1.0) - tie_sum / (n * (n - 1.0))) : 0.0;
  if (!(variance > 0.0)) {
    result.z = 0.0;
    result.p = 1.0;
    return result;
  }

  double diff = result.w - expected;
  if (continuity) diff = std::copysign(std::max(std::abs(diff) - 0.5, 0.0), diff);
  result.z = diff / std::sqrt(variance);
  result.p = result.z == 0.0 ? 1.0 : std::min(1.0, 2.0 * normal_cdf(-std::abs(result.z)));
  return result;
}

double mwu_exact(std::span<const double> x, std::span<const double> y) {
  require_nonempty(x, y);
  const std::size_t n = x.size() + y.size();
  if (n > static_cast<std::size_t>(kMaxExactPooled)) {
    throw TooLarge(fmt::format("exact rank-sum enumeration limited to {} pooled values, got {}",
                               kMaxExactPooled, n));
  }
  // Doubled midranks are integers, so comparisons are exact.
  const auto ranks = midranks(pooled(x, y));
  std::vector<std::int64_t> doubled(n);
  for (std::size_t i = 0; i < n; ++i) doubled[i] = std::llround(2.0 * ranks[i]);

  const auto n1 = static_cast<std::int64_t>(x.size());
  const std::int64_t twice_expected = n1 * static_cast<std::int64_t>(n + 1);
  std::int64_t observed = 0;
  for (std::size_t i = 0; i < x.size(); ++i) observed += doubled[i];
  const std::int64_t observed_dev = std::llabs(observed - twice_expected);

  std::int64_t extreme = 0;
  std::int64_t total = 0;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) != n1) continue;
    std::int64_t w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) w += doubled[i];
    }
    ++total;
    if (std::llabs(w - twice_expected) >= observed_dev) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace bracketlab
