#include "sawom/lsq.hpp"

#include <cmath>
#include <limits>

#include "sawom/errors.hpp"

namespace sawom::lsq {
namespace {

void jacobian(const Problem& pb, const Eigen::VectorXd& p, Eigen::MatrixXd& jac) {
  const Eigen::Index n = p.size();
  Eigen::VectorXd hi(pb.n_residuals);
  Eigen::VectorXd lo(pb.n_residuals);
  Eigen::VectorXd q = p;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = 1e-6 * (std::fabs(p[i]) + std::fabs(pb.scale[i]));
    q[i] = p[i] + h;
    pb.residuals(q, hi);
    q[i] = p[i] - h;
    pb.residuals(q, lo);
    q[i] = p[i];
    jac.col(i) = (hi - lo) / (2.0 * h);
  }
}

}  // namespace

Result levenberg_marquardt(const Problem& pb, const Options& opt) {
  const Eigen::Index n = pb.initial.size();
  if (n == 0 || pb.n_residuals < n || pb.scale.size() != n) {
    throw ValidationError("least squares: inconsistent problem dimensions");
  }

  Result res;
  res.params = pb.initial;
  Eigen::VectorXd r(pb.n_residuals);
  pb.residuals(res.params, r);
  double cost = 0.5 * r.squaredNorm();
  if (!std::isfinite(cost)) throw ComputationError("fit failed: non-finite initial residual");

  Eigen::MatrixXd jac(pb.n_residuals, n);
  Eigen::VectorXd trial_r(pb.n_residuals);
  double damping = opt.initial_damping;
  constexpr double kMaxDamping = 1e16;

  for (int it = 1; it <= opt.max_iterations; ++it) {
    res.iterations = it;
    jacobian(pb, res.params, jac);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    Eigen::VectorXd diag = jtj.diagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(diag[i] > 0.0)) diag[i] = 1e-30;
    }

    bool accepted = false;
    bool step_small = false;
    double new_cost = cost;
    while (damping <= kMaxDamping) {
      Eigen::MatrixXd a = jtj;
      a.diagonal() += damping * diag;
      const Eigen::VectorXd step = a.ldlt().solve(-grad);
      const Eigen::VectorXd trial = res.params + step;
      pb.residuals(trial, trial_r);
      const double trial_cost = 0.5 * trial_r.squaredNorm();
      step_small = true;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double ref = std::fabs(res.params[i]) + std::fabs(pb.scale[i]) * 1e-3;
        if (std::fabs(step[i]) > opt.relative_tolerance * ref) step_small = false;
      }
      if (std::isfinite(trial_cost) && trial_cost <= cost) {
        res.params = trial;
        r = trial_r;
        new_cost = trial_cost;
        damping = std::max(damping / opt.damping_factor, 1e-12);
        accepted = true;
        break;
      }
      if (step_small) break;
      damping *= opt.damping_factor;
    }

    if (!accepted) {
      // No downhill step exists at any damping: we are at the minimum to
      // working precision.
      res.converged = true;
      break;
    }
    const double drop = cost - new_cost;
    cost = new_cost;
    if (step_small || drop <= opt.relative_tolerance * cost ||
        cost <= std::numeric_limits<double>::min()) {
      res.converged = true;
      break;
    }
  }

  res.cost = cost;
  res.residual_rms = std::sqrt(2.0 * cost / static_cast<double>(pb.n_residuals));
  return res;
}

}  // namespace sawom::lsq
