#pragma once

/**
 * @file tobit.hpp
 * @brief Right-censored Tobit regression by maximum likelihood.
 *
 * Latent y* = x'beta + sigma e, e ~ N(0, 1); observed y = min(y*, limit).
 * Rows with y >= limit are treated as censored. The log-likelihood
 *
 *     sum_uncens [log phi(z_i) - log sigma] + sum_cens log(1 - Phi(c_i)),
 *     z_i = (y_i - x_i'beta) / sigma,  c_i = (limit - x_i'beta) / sigma
 *
 * is maximized by BFGS over (beta, log sigma) with the analytic gradient,
 * starting from least squares on the uncensored rows. Standard errors come
 * from the inverse of a finite-difference Hessian of that gradient.
 */

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bracketlab {

struct TobitFit {
  Eigen::VectorXd beta;
  Eigen::VectorXd beta_se;
  double sigma = 0.0;
  double sigma_se = 0.0;
  double log_likelihood = 0.0;
  double start_log_likelihood = 0.0;
  int n_censored = 0;
  int n_uncensored = 0;
  int iterations = 0;
  bool converged = false;
};

// Max-norm of the log-likelihood gradient divided by the number of rows.
inline constexpr double kTobitGradientTolerance = 1e-9;
inline constexpr double kTobitHandoffTolerance = 1e-5;
inline constexpr int kTobitMaxIterations = 1000;

TobitFit tobit_right(std::span<const double> y, const Eigen::MatrixXd& x, double limit);

/// Log-likelihood at (beta, sigma); exposed for oracles and diagnostics.
double tobit_log_likelihood(std::span<const double> y, const Eigen::MatrixXd& x, double limit,
                            const Eigen::VectorXd& beta, double sigma);

/// log(1 - Phi(c)), accurate far into the upper tail.
double log_normal_survival(double c);

}  // namespace bracketlab
