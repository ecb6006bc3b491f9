#pragma once

/**
 * @file kappa.hpp
 * @brief Degree of narrow bracketing by non-linear least squares.
 *
 * Responses y in scenario s are fitted by
 *
 *     broad cell:   B_s
 *     narrow cell:  N_s
 *     mid cell:     (1 - kappa) B_s + kappa N_s
 *
 * kappa = 0 puts the mid treatment on the broad frame, kappa = 1 on the
 * narrow frame. The mid treatment is normally NARROW, the narrow one LOW
 * and the broad one BROAD or PARTIAL.
 */

#include <array>
#include <span>

#include "bracketlab/observations.hpp"

namespace bracketlab {

struct KappaLabels {
  Treatment broad = Treatment::Broad;
  Treatment narrow = Treatment::Low;
  Treatment mid = Treatment::Narrow;
};

struct Estimate {
  double value = 0.0;
  double robust_se = 0.0;  // HC0 sandwich
  double model_se = 0.0;   // s^2 (J'J)^-1
};

struct KappaFit {
  KappaLabels labels;
  std::array<Estimate, 2> broad;   // B_1, B_2
  std::array<Estimate, 2> narrow;  // N_1, N_2
  Estimate kappa;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;  // of the half mean squared residual
  double rss = 0.0;
  int n = 0;

  double fitted_mid(Scenario s) const {
    const auto i = static_cast<std::size_t>(s == Scenario::S1 ? 0 : 1);
    return (1.0 - kappa.value) * broad[i].value + kappa.value * narrow[i].value;
  }
};

inline constexpr double kKappaStart = 0.5;
inline constexpr double kKappaStepTolerance = 1e-10;
inline constexpr double kKappaGradientTolerance = 1e-8;
inline constexpr int kKappaMaxIterations = 500;
/// Broad and narrow cell means closer than this in every scenario leave
/// kappa unidentified.
inline constexpr double kIdentificationGap = 1e-9;

/// Damped Gauss-Newton from saturated cell means and kappa = 0.5.
/// Throws Degenerate (missing cells or no broad/narrow gap) or NotConverged.
KappaFit nls_kappa(std::span<const Observation> obs, const KappaLabels& labels = {});
KappaFit nls_kappa(const Dataset& d, const KappaLabels& labels = {},
                   bool drop_inconsistent = true);

enum class CellWeighting {
  CellSize,  // the observation-level least-squares objective nls_kappa minimizes
  Equal,     // every cell mean counts once
};

struct ProfileGrid {
  double lower = -1.0;
  double upper = 3.0;
  double step = 1e-4;
};

/// Brute-force grid over kappa with the fixed effects solved exactly at
/// each grid point. Independent of the Gauss-Newton path.
double kappa_profile_oracle(std::span<const Observation> obs, const KappaLabels& labels = {},
                            const ProfileGrid& grid = {},
                            CellWeighting weighting = CellWeighting::CellSize);

}  // namespace bracketlab
