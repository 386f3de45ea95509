// Primal-dual interior point method for smooth NLPs
//
//   min f(x)   s.t.  g(x) = 0,  h(x) <= 0
//
// following the standard reduced-KKT scheme: slacks s > 0 and multipliers
// mu > 0 on the inequalities, Newton steps on the perturbed KKT system with
// the (s, mu) block eliminated, fraction-to-boundary step clipping, and a
// barrier parameter reduced by sigma * complementarity each iteration.
// Problems are dense and small; factorizations use LDLT with diagonal
// regularization fallback.
#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace gppopf {

class NlpProblem {
 public:
  virtual ~NlpProblem() = default;

  virtual int num_vars() const = 0;
  virtual int num_eq() const = 0;
  virtual int num_ineq() const = 0;

  virtual double objective(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd objective_grad(const Eigen::VectorXd& x) const = 0;

  virtual Eigen::VectorXd eval_eq(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd eval_ineq(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::MatrixXd eq_jacobian(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::MatrixXd ineq_jacobian(const Eigen::VectorXd& x) const = 0;

  // Hessian of f + lam_eq' g + mu_ineq' h
  virtual Eigen::MatrixXd lagrangian_hessian(const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& lam_eq,
                                             const Eigen::VectorXd& mu_ineq) const = 0;
};

struct IpmOptions {
  double tol_eq = 1e-8;     // max |g| at the solution
  double tol_comp = 1e-6;   // max s_i * mu_i
  double tol_grad = 1e-6;   // scaled dual infeasibility
  int max_iter = 150;
  double sigma = 0.1;       // barrier reduction factor
  double xi = 0.99995;      // fraction-to-boundary
};

struct IpmResult {
  bool converged = false;
  int iterations = 0;
  double objective = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd lam_eq;
  Eigen::VectorXd mu_ineq;
  Eigen::VectorXd slack;
  double eq_residual = 0.0;       // max |g|
  double ineq_violation = 0.0;    // max h, clamped at 0
  double comp_residual = 0.0;     // max s_i * mu_i
  double grad_residual = 0.0;
  std::string message;
};

IpmResult solve_nlp(const NlpProblem& prob, const Eigen::VectorXd& x0,
                    const IpmOptions& opt = {});

}  // namespace gppopf
