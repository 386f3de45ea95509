#include "gppopf/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gppopf {

IpmResult solve_nlp(const NlpProblem& prob, const Eigen::VectorXd& x0,
                    const IpmOptions& opt) {
  const int nx = prob.num_vars();
  const int neq = prob.num_eq();
  const int ni = prob.num_ineq();

  IpmResult res;
  res.x = x0;
  res.lam_eq = Eigen::VectorXd::Zero(neq);

  Eigen::VectorXd h = prob.eval_ineq(res.x);
  res.slack = Eigen::VectorXd(ni);
  res.mu_ineq = Eigen::VectorXd(ni);
  const double z0 = 1.0;
  const double gamma0 = 1.0;
  for (int i = 0; i < ni; ++i) {
    res.slack(i) = std::max(z0, -h(i));
    res.mu_ineq(i) = gamma0 / res.slack(i);
  }

  double gamma = gamma0;
  double prev_feas = std::numeric_limits<double>::infinity();
  int feas_growth = 0;

  for (int it = 0; it <= opt.max_iter; ++it) {
    res.iterations = it;
    Eigen::VectorXd g = prob.eval_eq(res.x);
    h = prob.eval_ineq(res.x);
    Eigen::MatrixXd G = prob.eq_jacobian(res.x);
    Eigen::MatrixXd H = prob.ineq_jacobian(res.x);
    Eigen::VectorXd df = prob.objective_grad(res.x);

    Eigen::VectorXd lx = df;
    if (neq > 0) lx += G.transpose() * res.lam_eq;
    if (ni > 0) lx += H.transpose() * res.mu_ineq;

    res.objective = prob.objective(res.x);
    res.eq_residual = neq > 0 ? g.cwiseAbs().maxCoeff() : 0.0;
    res.ineq_violation = ni > 0 ? std::max(0.0, h.maxCoeff()) : 0.0;
    res.comp_residual =
        ni > 0 ? (res.slack.array() * res.mu_ineq.array()).maxCoeff() : 0.0;
    double mult_scale = 1.0;
    if (neq > 0) mult_scale = std::max(mult_scale, res.lam_eq.cwiseAbs().maxCoeff());
    if (ni > 0) mult_scale = std::max(mult_scale, res.mu_ineq.cwiseAbs().maxCoeff());
    res.grad_residual = lx.cwiseAbs().maxCoeff() / (1.0 + mult_scale);

    if (res.eq_residual <= opt.tol_eq && res.ineq_violation <= opt.tol_eq &&
        res.comp_residual <= opt.tol_comp && res.grad_residual <= opt.tol_grad) {
      res.converged = true;
      res.message = "converged";
      return res;
    }
    if (it == opt.max_iter) break;

    // divergence bookkeeping for the infeasibility diagnostic
    double feas = std::max(res.eq_residual, res.ineq_violation);
    feas_growth = feas > prev_feas * (1.0 + 1e-12) ? feas_growth + 1 : 0;
    prev_feas = feas;

    gamma = ni > 0 ? opt.sigma * res.slack.dot(res.mu_ineq) / ni : 0.0;

    // reduced KKT system in (dx, dlam)
    Eigen::MatrixXd M = prob.lagrangian_hessian(res.x, res.lam_eq, res.mu_ineq);
    Eigen::VectorXd N = lx;
    if (ni > 0) {
      Eigen::ArrayXd sinv = res.slack.array().inverse();
      M.noalias() += H.transpose() *
                     (sinv * res.mu_ineq.array()).matrix().asDiagonal() * H;
      N.noalias() += H.transpose() *
                     (sinv * (gamma + res.mu_ineq.array() * h.array())).matrix();
    }

    const int nkkt = nx + neq;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nkkt, nkkt);
    K.topLeftCorner(nx, nx) = M;
    if (neq > 0) {
      K.topRightCorner(nx, neq) = G.transpose();
      K.bottomLeftCorner(neq, nx) = G;
    }
    Eigen::VectorXd rhs(nkkt);
    rhs.head(nx) = -N;
    rhs.tail(neq) = -g;

    Eigen::VectorXd step;
    double reg = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::MatrixXd Kreg = K;
      if (reg > 0.0) {
        Kreg.topLeftCorner(nx, nx).diagonal().array() += reg;
        Kreg.bottomRightCorner(neq, neq).diagonal().array() -= reg;
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(Kreg);
      step = lu.solve(rhs);
      double err = (Kreg * step - rhs).cwiseAbs().maxCoeff();
      double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
      if (step.allFinite() && err <= 1e-7 * scale) break;
      step.resize(0);
      reg = reg == 0.0 ? 1e-10 : reg * 100.0;
    }
    if (step.size() == 0) {
      res.message = "KKT factorization failed";
      return res;
    }

    Eigen::VectorXd dx = step.head(nx);
    Eigen::VectorXd dlam = step.tail(neq);
    Eigen::VectorXd ds, dmu;
    double alpha_p = 1.0, alpha_d = 1.0;
    if (ni > 0) {
      ds = -h - res.slack - H * dx;
      dmu = (gamma - res.mu_ineq.array() * ds.array()).matrix().cwiseQuotient(res.slack) -
            res.mu_ineq;
      for (int i = 0; i < ni; ++i) {
        if (ds(i) < 0.0) alpha_p = std::min(alpha_p, -opt.xi * res.slack(i) / ds(i));
        if (dmu(i) < 0.0) alpha_d = std::min(alpha_d, -opt.xi * res.mu_ineq(i) / dmu(i));
      }
    }

    res.x += alpha_p * dx;
    if (ni > 0) {
      res.slack += alpha_p * ds;
      res.mu_ineq += alpha_d * dmu;
    }
    res.lam_eq += alpha_d * dlam;
  }

  res.message = feas_growth >= 5
                    ? "appears infeasible: primal residual diverging"
                    : "iteration limit reached";
  return res;
}

}  // namespace gppopf
