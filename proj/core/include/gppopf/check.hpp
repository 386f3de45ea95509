// Independent feasibility check for OPF solutions. Re-derives bus power
// mismatches branch by branch from the pi model (no admittance matrix, no
// solver code) so it cannot share a bug with the solve path.
#pragma once

#include "gppopf/acopf.hpp"
#include "gppopf/matpower.hpp"

namespace gppopf {

struct FeasibilityReport {
  double balance_residual = 0.0;   // max |S mismatch| pu over buses
  double bound_violation = 0.0;    // max violation / bound range
  double flow_violation = 0.0;     // max (|S| - rate)/rate over limited branches
  bool ok(double tol_balance = 1e-8, double tol_bound = 1e-6) const {
    return balance_residual <= tol_balance && bound_violation <= tol_bound &&
           flow_violation <= tol_bound;
  }
};

FeasibilityReport check_solution(const NetworkCase& nc, const OpfSolution& sol);

}  // namespace gppopf
