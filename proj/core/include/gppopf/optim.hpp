// Limited-memory BFGS minimizer with backtracking line search. Objectives
// may signal an invalid region by returning a non-finite value; the line
// search backs off. Used for log-marginal-likelihood maximization.
#pragma once

#include <functional>

#include <Eigen/Dense>

namespace gppopf {

// Evaluate f(x); when grad is non-null also fill the gradient.
using ObjectiveFn = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct LbfgsOptions {
  int max_iter = 60;
  int memory = 8;
  double grad_tol_abs = 1e-5;       // on the gradient infinity norm
  double grad_tol_rel = 1e-8;       // relative to |f|
  double f_tol = 1e-10;             // relative decrease considered stalled
  int max_line_search = 30;
  double armijo_c1 = 1e-4;
};

struct OptimResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;   // gradient tolerance met (stall counts as done)
};

OptimResult lbfgs_minimize(const ObjectiveFn& fn, const Eigen::VectorXd& x0,
                           const LbfgsOptions& opt = {});

}  // namespace gppopf
