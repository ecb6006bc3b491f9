#include "bracketlab/kappa.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "bracketlab/errors.hpp"

namespace bracketlab {

namespace {

enum class Role { Broad, Narrow, Mid };

struct Row {
  Role role;
  int scenario;  // 0 or 1
  double y;
};

struct CellStats {
  double sum = 0.0;
  int n = 0;
  double mean() const { return sum / n; }
};

// cells[scenario][role]
using Cells = std::array<std::array<CellStats, 3>, 2>;

std::vector<Row> select_rows(std::span<const Observation> obs, const KappaLabels& labels) {
  std::vector<Row> rows;
  for (const auto& o : obs) {
    const int s = o.scenario == Scenario::S1 ? 0 : 1;
    if (o.treatment == labels.broad) rows.push_back({Role::Broad, s, o.wage});
    if (o.treatment == labels.narrow) rows.push_back({Role::Narrow, s, o.wage});
    if (o.treatment == labels.mid) rows.push_back({Role::Mid, s, o.wage});
  }
  return rows;
}

Cells cell_stats(const std::vector<Row>& rows) {
  Cells cells{};
  for (const auto& r : rows) {
    auto& c = cells[static_cast<std::size_t>(r.scenario)][static_cast<std::size_t>(r.role)];
    c.sum += r.y;
    ++c.n;
  }
  return cells;
}

void check_identified(const Cells& cells, const KappaLabels& labels) {
  static constexpr std::array<const char*, 3> kRoleNames = {"broad", "narrow", "mid"};
  const std::array<Treatment, 3> treatments = {labels.broad, labels.narrow, labels.mid};
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t r = 0; r < 3; ++r) {
      if (cells[s][r].n == 0) {
        throw Degenerate(fmt::format(
            "kappa needs observations for {} ({}) in scenario {}; the data has none. "
            "Include {}, {} and {} responses for both scenarios (for simulated data, give "
            "each of these treatments a positive count).",
            to_string(treatments[r]), kRoleNames[r], s + 1, to_string(labels.broad),
            to_string(labels.narrow), to_string(labels.mid)));
      }
    }
  }
  bool any_gap = false;
  for (std::size_t s = 0; s < 2; ++s) {
    if (std::abs(cells[s][0].mean() - cells[s][1].mean()) > kIdentificationGap) any_gap = true;
  }
  if (!any_gap) {
    throw Degenerate(fmt::format(
        "{} and {} cell means coincide in both scenarios, so kappa is not identified "
        "(the broad and narrow frames predict the same wage, as with linear effort costs)",
        to_string(labels.broad), to_string(labels.narrow)));
  }
}

struct Evaluation {
  Eigen::VectorXd residual;
  Eigen::MatrixXd jacobian;  // of the fitted values
};

// Parameters: B1, B2, N1, N2, kappa.
Evaluation evaluate(const std::vector<Row>& rows, const Eigen::Matrix<double, 5, 1>& theta) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Evaluation ev{Eigen::VectorXd(n), Eigen::MatrixXd::Zero(n, 5)};
  const double kappa = theta(4);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Row& r = rows[static_cast<std::size_t>(i)];
    const Eigen::Index b = r.scenario;
    const Eigen::Index nn = 2 + r.scenario;
    double fit = 0.0;
    switch (r.role) {
      case Role::Broad:
        fit = theta(b);
        ev.jacobian(i, b) = 1.0;
        break;
      case Role::Narrow:
        fit = theta(nn);
        ev.jacobian(i, nn) = 1.0;
        break;
      case Role::Mid:
        fit = (1.0 - kappa) * theta(b) + kappa * theta(nn);
        ev.jacobian(i, b) = 1.0 - kappa;
        ev.jacobian(i, nn) = kappa;
        ev.jacobian(i, 4) = theta(nn) - theta(b);
        break;
    }
    ev.residual(i) = r.y - fit;
  }
  return ev;
}

}  // namespace

KappaFit nls_kappa(std::span<const Observation> obs, const KappaLabels& labels) {
  const auto rows = select_rows(obs, labels);
  const Cells cells = cell_stats(rows);
  check_identified(cells, labels);

  const double n = static_cast<double>(rows.size());
  Eigen::Matrix<double, 5, 1> theta;
  theta << cells[0][0].mean(), cells[1][0].mean(), cells[0][1].mean(), cells[1][1].mean(),
      kKappaStart;

  KappaFit fit;
  fit.labels = labels;
  fit.n = static_cast<int>(rows.size());

  Evaluation ev = evaluate(rows, theta);
  double rss = ev.residual.squaredNorm();
  Eigen::VectorXd gradient = -ev.jacobian.transpose() * ev.residual / n;

  int iter = 0;
  for (; iter < kKappaMaxIterations; ++iter) {
    if (gradient.norm() < kKappaGradientTolerance) break;
    const Eigen::MatrixXd jtj = ev.jacobian.transpose() * ev.jacobian;
    const Eigen::VectorXd step = jtj.ldlt().solve(ev.jacobian.transpose() * ev.residual);
    if (!step.allFinite()) break;

    // Halve the step until the residual sum of squares does not increase.
    double scale = 1.0;
    Eigen::Matrix<double, 5, 1> candidate;
    Evaluation cand_ev;
    double cand_rss = std::numeric_limits<double>::infinity();
    for (int halving = 0; halving < 60; ++halving) {
      candidate = theta + scale * step;
      cand_ev = evaluate(rows, candidate);
      cand_rss = cand_ev.residual.squaredNorm();
      if (cand_rss <= rss) break;
      scale *= 0.5;
    }
    if (!(cand_rss <= rss)) break;

    const double step_norm = (candidate - theta).norm();
    theta = candidate;
    ev = std::move(cand_ev);
    rss = cand_rss;
    gradient = -ev.jacobian.transpose() * ev.residual / n;
    if (step_norm < kKappaStepTolerance) {
      ++iter;
      break;
    }
  }

  fit.iterations = iter;
  fit.rss = rss;
  fit.gradient_norm = gradient.norm();
  fit.converged = fit.gradient_norm < kKappaGradientTolerance;
  if (!fit.converged) {
    throw NotConverged(fmt::format("kappa NLS stopped after {} iterations with gradient norm {:g}",
                                   iter, fit.gradient_norm));
  }

  const Eigen::MatrixXd jtj = ev.jacobian.transpose() * ev.jacobian;
  const Eigen::MatrixXd bread = jtj.inverse();
  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(5, 5);
  for (Eigen::Index i = 0; i < ev.jacobian.rows(); ++i) {
    const Eigen::VectorXd g = ev.jacobian.row(i).transpose();
    meat += ev.residual(i) * ev.residual(i) * g * g.transpose();
  }
  const Eigen::MatrixXd robust = bread * meat * bread;
  const double dof = std::max(1.0, n - 5.0);
  const Eigen::MatrixXd model = (rss / dof) * bread;

  auto estimate = [&](Eigen::Index k) {
    return Estimate{theta(k), std::sqrt(std::max(0.0, robust(k, k))),
                    std::sqrt(std::max(0.0, model(k, k)))};
  };
  fit.broad = {estimate(0), estimate(1)};
  fit.narrow = {estimate(2), estimate(3)};
  fit.kappa = estimate(4);
  return fit;
}

KappaFit nls_kappa(const Dataset& d, const KappaLabels& labels, bool drop_inconsistent) {
  const auto obs = observations(d, drop_inconsistent);
  return nls_kappa(obs, labels);
}

double kappa_profile_oracle(std::span<const Observation> obs, const KappaLabels& labels,
                            const ProfileGrid& grid, CellWeighting weighting) {
  const auto rows = select_rows(obs, labels);
  const Cells cells = cell_stats(rows);
  check_identified(cells, labels);

  auto weight = [&](const CellStats& c) {
    return weighting == CellWeighting::CellSize ? static_cast<double>(c.n) : 1.0;
  };

  // Between-cell part of the objective; within-cell variation is constant in kappa.
  auto objective = [&](double kappa) {
    double total = 0.0;
    for (const auto& sc : cells) {
      const double wb = weight(sc[0]);
      const double wn = weight(sc[1]);
      const double wm = weight(sc[2]);
      const double b = sc[0].mean();
      const double l = sc[1].mean();
      const double m = sc[2].mean();
      const double a11 = wb + wm * (1.0 - kappa) * (1.0 - kappa);
      const double a12 = wm * kappa * (1.0 - kappa);
      const double a22 = wn + wm * kappa * kappa;
      const double r1 = wb * b + wm * (1.0 - kappa) * m;
      const double r2 = wn * l + wm * kappa * m;
      const double det = a11 * a22 - a12 * a12;
      const double big_b = (r1 * a22 - r2 * a12) / det;
      const double big_n = (a11 * r2 - a12 * r1) / det;
      const double fit_m = (1.0 - kappa) * big_b + kappa * big_n;
      total += wb * (b - big_b) * (b - big_b) + wn * (l - big_n) * (l - big_n) +
               wm * (m - fit_m) * (m - fit_m);
    }
    return total;
  };

  const auto steps = static_cast<long>(std::llround((grid.upper - grid.lower) / grid.step));
  double best_kappa = grid.lower;
  double best_value = std::numeric_limits<double>::infinity();
  for (long i = 0; i <= steps; ++i) {
    const double kappa = grid.lower + static_cast<double>(i) * grid.step;
    const double value = objective(kappa);
    if (value < best_value) {
      best_value = value;
      best_kappa = kappa;
    }
  }
  return best_kappa;
}

}  // namespace bracketlab
