#include "gppopf/optim.hpp"

#include <cmath>
#include <deque>

namespace gppopf {

OptimResult lbfgs_minimize(const ObjectiveFn& fn, const Eigen::VectorXd& x0,
                           const LbfgsOptions& opt) {
  OptimResult res;
  const Eigen::Index n = x0.size();
  Eigen::VectorXd x = x0;
  Eigen::VectorXd grad(n);

  double f = fn(x, &grad);
  ++res.evaluations;
  if (!std::isfinite(f)) {
    res.x = x;
    res.f = f;
    return res;
  }

  struct Pair {
    Eigen::VectorXd s, y;
    double rho;
  };
  std::deque<Pair> history;
  int stalls = 0;

  for (int it = 0; it < opt.max_iter; ++it) {
    res.iterations = it;
    double gnorm = grad.cwiseAbs().maxCoeff();
    if (gnorm <= opt.grad_tol_abs || gnorm <= opt.grad_tol_rel * std::abs(f)) {
      res.converged = true;
      break;
    }

    // two-loop recursion
    Eigen::VectorXd q = grad;
    std::vector<double> alpha(history.size());
    for (int i = static_cast<int>(history.size()) - 1; i >= 0; --i) {
      alpha[i] = history[i].rho * history[i].s.dot(q);
      q -= alpha[i] * history[i].y;
    }
    if (!history.empty()) {
      const Pair& last = history.back();
      q *= last.s.dot(last.y) / last.y.squaredNorm();
    }
    for (std::size_t i = 0; i < history.size(); ++i) {
      double beta = history[i].rho * history[i].y.dot(q);
      q += (alpha[i] - beta) * history[i].s;
    }
    Eigen::VectorXd dir = -q;

    double slope = grad.dot(dir);
    if (slope >= 0.0) {  // not a descent direction; reset to steepest descent
      history.clear();
      dir = -grad;
      slope = -grad.squaredNorm();
    }

    double step = 1.0;
    double f_new = f;
    Eigen::VectorXd x_new;
    bool accepted = false;
    for (int ls = 0; ls < opt.max_line_search; ++ls) {
      x_new = x + step * dir;
      f_new = fn(x_new, nullptr);
      ++res.evaluations;
      if (std::isfinite(f_new) && f_new <= f + opt.armijo_c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    Eigen::VectorXd grad_new(n);
    f_new = fn(x_new, &grad_new);
    ++res.evaluations;
    if (!std::isfinite(f_new)) break;

    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = grad_new - grad;
    double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      history.push_back({s, y, 1.0 / sy});
      if (static_cast<int>(history.size()) > opt.memory) history.pop_front();
    }

    bool stalled = std::abs(f - f_new) <= opt.f_tol * (1.0 + std::abs(f));
    x = x_new;
    grad = grad_new;
    f = f_new;
    if (stalled && ++stalls >= 2) {
      res.converged = true;
      break;
    }
    if (!stalled) stalls = 0;
  }

  res.x = x;
  res.f = f;
  return res;
}

}  // namespace gppopf
