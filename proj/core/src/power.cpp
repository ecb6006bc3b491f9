#include "bracketlab/power.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "bracketlab/errors.hpp"

namespace bracketlab {

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), p);
}

SampleSizes power_two_sample(double d, double alpha, double power, double ratio,
                             bool wilcoxon_are) {
  if (!(d > 0.0)) throw InvalidParams(fmt::format("effect size must be > 0, got {}", d));
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidParams(fmt::format("alpha must be in (0, 1), got {}", alpha));
  }
  if (!(power > 0.5 && power < 1.0)) {
    throw InvalidParams(fmt::format("power must be in (0.5, 1), got {}", power));
  }
  if (!(ratio >= 1.0) || !std::isfinite(ratio)) {
    throw InvalidParams(fmt::format("allocation ratio must be >= 1, got {}", ratio));
  }
  const double z = normal_quantile(1.0 - alpha / 2.0) + normal_quantile(power);
  double raw = (1.0 + 1.0 / ratio) * z * z / (d * d);
  if (wilcoxon_are) raw *= std::numbers::pi / 3.0;

  SampleSizes out;
  out.n_small_raw = raw;
  out.n_small = static_cast<int>(std::ceil(raw));
  out.n_large = static_cast<int>(std::ceil(ratio * raw));
  return out;
}

}  // namespace bracketlab
