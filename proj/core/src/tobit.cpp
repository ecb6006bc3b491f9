#include "bracketlab/tobit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "bracketlab/errors.hpp"

namespace bracketlab {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))
constexpr double kCensorSlack = 1e-12;

double log_normal_pdf(double z) { return -0.5 * z * z - kLogSqrt2Pi; }

// phi(c) / (1 - Phi(c))
double inverse_mills(double c) { return std::exp(log_normal_pdf(c) - log_normal_survival(c)); }

struct Problem {
  std::span<const double> y;
  const Eigen::MatrixXd& x;
  double limit;
  std::vector<bool> censored;

  // theta = (beta, log sigma)
  double log_likelihood(const Eigen::VectorXd& theta) const {
    const Eigen::Index k = x.cols();
    const double log_sigma = theta(k);
    const double sigma = std::exp(log_sigma);
    const Eigen::VectorXd xb = x * theta.head(k);
    double ll = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (censored[static_cast<std::size_t>(i)]) {
        ll += log_normal_survival((limit - xb(i)) / sigma);
      } else {
        ll += log_normal_pdf((y[static_cast<std::size_t>(i)] - xb(i)) / sigma) - log_sigma;
      }
    }
    return ll;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& theta) const {
    const Eigen::Index k = x.cols();
    const double sigma = std::exp(theta(k));
    const Eigen::VectorXd xb = x * theta.head(k);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(k + 1);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (censored[static_cast<std::size_t>(i)]) {
        const double c = (limit - xb(i)) / sigma;
        const double lambda = inverse_mills(c);
        g.head(k) += (lambda / sigma) * x.row(i).transpose();
        g(k) += lambda * c;
      } else {
        const double z = (y[static_cast<std::size_t>(i)] - xb(i)) / sigma;
        g.head(k) += (z / sigma) * x.row(i).transpose();
        g(k) += z * z - 1.0;
      }
    }
    return g;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& theta) const {
    const Eigen::Index p = theta.size();
    Eigen::MatrixXd h(p, p);
    for (Eigen::Index j = 0; j < p; ++j) {
      const double step = 1e-5 * std::max(1.0, std::abs(theta(j)));
      Eigen::VectorXd up = theta;
      Eigen::VectorXd down = theta;
      up(j) += step;
      down(j) -= step;
      h.col(j) = (gradient(up) - gradient(down)) / (2.0 * step);
    }
    return 0.5 * (h + h.transpose());
  }
};

Eigen::VectorXd least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  return x.colPivHouseholderQr().solve(y);
}

}  // namespace

double log_normal_survival(double c) {
  if (c < 30.0) return std::log(0.5 * std::erfc(c / std::numbers::sqrt2));
  // Asymptotic series for the Mills ratio in the far tail.
  const double c2 = c * c;
  return log_normal_pdf(c) - std::log(c) + std::log1p(-1.0 / c2 + 3.0 / (c2 * c2));
}

double tobit_log_likelihood(std::span<const double> y, const Eigen::MatrixXd& x, double limit,
                            const Eigen::VectorXd& beta, double sigma) {
  Problem problem{y, x, limit, {}};
  problem.censored.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) problem.censored[i] = y[i] >= limit - kCensorSlack;
  Eigen::VectorXd theta(beta.size() + 1);
  theta << beta, std::log(sigma);
  return problem.log_likelihood(theta);
}

TobitFit tobit_right(std::span<const double> y, const Eigen::MatrixXd& x, double limit) {
  if (static_cast<Eigen::Index>(y.size()) != x.rows()) {
    throw InvalidParams(fmt::format("tobit: {} responses but {} design rows", y.size(), x.rows()));
  }
  if (y.empty()) throw EmptySample("tobit: no observations");
  const Eigen::Index k = x.cols();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (x.rows() < k || qr.rank() < k) {
    throw RankDeficient(fmt::format("tobit: design matrix has rank {} < {} columns",
                                    qr.rank(), k));
  }

  Problem problem{y, x, limit, std::vector<bool>(y.size())};
  TobitFit fit;
  for (std::size_t i = 0; i < y.size(); ++i) {
    problem.censored[i] = y[i] >= limit - kCensorSlack;
    problem.censored[i] ? ++fit.n_censored : ++fit.n_uncensored;
  }
  if (fit.n_uncensored == 0) throw AllCensored("tobit: every observation is censored");

  // Start from least squares on the uncensored rows when they identify beta.
  Eigen::MatrixXd xu(fit.n_uncensored, k);
  Eigen::VectorXd yu(fit.n_uncensored);
  for (Eigen::Index i = 0, r = 0; i < x.rows(); ++i) {
    if (problem.censored[static_cast<std::size_t>(i)]) continue;
    xu.row(r) = x.row(i);
    yu(r) = y[static_cast<std::size_t>(i)];
    ++r;
  }
  Eigen::VectorXd beta0;
  Eigen::VectorXd resid0;
  if (xu.rows() >= k && Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(xu).rank() == k) {
    beta0 = least_squares(xu, yu);
    resid0 = yu - xu * beta0;
  } else {
    const Eigen::Map<const Eigen::VectorXd> yall(y.data(), static_cast<Eigen::Index>(y.size()));
    beta0 = least_squares(x, yall);
    resid0 = yall - x * beta0;
  }
  double sigma0 = std::sqrt(resid0.squaredNorm() / static_cast<double>(resid0.size()));
  if (!(sigma0 > 1e-6)) sigma0 = 1.0;

  Eigen::VectorXd theta(k + 1);
  theta << beta0, std::log(sigma0);

  // BFGS on the negative log-likelihood.
  auto f = [&](const Eigen::VectorXd& t) { return -problem.log_likelihood(t); };
  auto grad = [&](const Eigen::VectorXd& t) { return Eigen::VectorXd(-problem.gradient(t)); };

  double value = f(theta);
  fit.start_log_likelihood = -value;
  Eigen::VectorXd g = grad(theta);
  Eigen::MatrixXd inv_h = Eigen::MatrixXd::Identity(k + 1, k + 1) /
                          std::max(1.0, static_cast<double>(x.rows()));

  // The log-likelihood is a sum over rows, so convergence is judged per row.
  const double scale = std::max(1.0, static_cast<double>(x.rows()));
  auto gradient_size = [&](const Eigen::VectorXd& v) { return v.lpNorm<Eigen::Infinity>() / scale; };

  // BFGS gets close; the Newton polish below finishes.
  int iter = 0;
  for (; iter < kTobitMaxIterations; ++iter) {
    if (gradient_size(g) < kTobitHandoffTolerance) break;
    Eigen::VectorXd direction = -inv_h * g;
    if (direction.dot(g) >= 0.0) {
      inv_h = Eigen::MatrixXd::Identity(k + 1, k + 1) / std::max(1.0, static_cast<double>(x.rows()));
      direction = -inv_h * g;
    }
    double step = 1.0;
    Eigen::VectorXd next;
    double next_value = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      next = theta + step * direction;
      next_value = f(next);
      if (std::isfinite(next_value) && next_value <= value + 1e-4 * step * g.dot(direction)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd next_g = grad(next);
    const Eigen::VectorXd s = next - theta;
    const Eigen::VectorXd yv = next_g - g;
    const double sy = s.dot(yv);
    if (sy > 1e-14) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(k + 1, k + 1);
      inv_h = (eye - rho * s * yv.transpose()) * inv_h * (eye - rho * yv * s.transpose()) +
              rho * s * s.transpose();
    }
    theta = next;
    value = next_value;
    g = next_g;
  }

  // Newton polish with the finite-difference Hessian; quadratic near the optimum.
  for (int polish = 0; polish < 10 && gradient_size(g) >= kTobitGradientTolerance; ++polish) {
    const Eigen::MatrixXd h = -problem.hessian(theta);  // Hessian of the negative ll
    const Eigen::VectorXd direction = -h.ldlt().solve(g);
    if (!direction.allFinite()) break;
    const Eigen::VectorXd next = theta + direction;
    const double next_value = f(next);
    if (!(next_value <= value + 1e-12 * std::abs(value))) break;
    theta = next;
    value = next_value;
    g = grad(theta);
    ++iter;
  }

  fit.iterations = iter;
  fit.converged = gradient_size(g) < kTobitGradientTolerance;
  if (!fit.converged) {
    throw NotConverged(fmt::format("tobit: gradient {:g} per row after {} iterations",
                                   gradient_size(g), iter));
  }

  fit.beta = theta.head(k);
  fit.sigma = std::exp(theta(k));
  fit.log_likelihood = -value;

  const Eigen::MatrixXd information = -problem.hessian(theta);
  const Eigen::MatrixXd cov = information.inverse();
  fit.beta_se.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) fit.beta_se(j) = std::sqrt(std::max(0.0, cov(j, j)));
  fit.sigma_se = fit.sigma * std::sqrt(std::max(0.0, cov(k, k)));
  return fit;
}

}  // namespace bracketlab
