// Newton-Raphson power flow in polar coordinates. Used both as a standalone
// solver (dispatch fixed, slack absorbs the mismatch) and as the warm start
// for the optimal power flow.
#pragma once

#include <string>

#include <Eigen/Dense>

#include "gppopf/matpower.hpp"

namespace gppopf {

struct PowerFlowResult {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // max |mismatch| in pu over solved equations
  Eigen::VectorXd vm;     // pu, all buses
  Eigen::VectorXd va;     // rad, all buses
  Eigen::VectorXd pg;     // MW per generator (slack gen absorbs mismatch)
  Eigen::VectorXd qg;     // MVAr per generator
  std::string message;
};

struct PowerFlowOptions {
  double tol = 1e-10;
  int max_iter = 30;
  bool flat_start = true;
};

// A bus regulates voltage only when its type says PV/slack and it has an
// in-service generator with qmin < qmax; renewable-style fixed-Q units do
// not qualify. Throws ParseError when no slack bus exists; a singular
// Jacobian or the iteration cap yields converged = false.
PowerFlowResult solve_power_flow(const NetworkCase& nc,
                                 const PowerFlowOptions& opt = {});

}  // namespace gppopf
