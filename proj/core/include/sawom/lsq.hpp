#pragma once

#include <Eigen/Dense>
#include <functional>

namespace sawom::lsq {

struct Options {
  double initial_damping = 1e-3;
  double damping_factor = 10.0;
  double relative_tolerance = 1e-9;
  int max_iterations = 200;
};

struct Result {
  Eigen::VectorXd params;
  double cost = 0.0;          // 0.5 * |r|^2
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
};

// residuals(params, out) fills out (pre-sized to n_residuals).
using ResidualFunction = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct Problem {
  ResidualFunction residuals;
  Eigen::Index n_residuals = 0;
  Eigen::VectorXd initial;
  // Typical magnitude of each parameter; sets the finite-difference step.
  Eigen::VectorXd scale;
};

// Levenberg-Marquardt with Marquardt (diag J^T J) scaling and a central
// difference Jacobian. Deterministic: no randomness, fixed evaluation order.
Result levenberg_marquardt(const Problem& problem, const Options& options = {});

}  // namespace sawom::lsq
