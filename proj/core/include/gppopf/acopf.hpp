// Deterministic OPF oracle. solve_opf runs a primal-dual interior point
// method on the polar AC formulation (variables va, vm, pg, qg; nodal
// balance equalities; voltage, dispatch and branch MVA inequalities),
// warm-started from a Newton power flow. A linear-DC quadratic program
// (lossless, angles only) is available for fast property tests.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gppopf/ipm.hpp"
#include "gppopf/matpower.hpp"

namespace gppopf {

// Uncertain input vector, ordered [P_r, P_d, Q_d].
struct InputVector {
  Eigen::VectorXd p_r;  // MW per renewable bus
  Eigen::VectorXd p_d;  // MW per load bus (case order)
  Eigen::VectorXd q_d;  // MVAr per load bus

  Eigen::Index size() const { return p_r.size() + p_d.size() + q_d.size(); }
  Eigen::VectorXd flat() const;
  static InputVector from_flat(const Eigen::VectorXd& x, Eigen::Index n_renewable,
                               Eigen::Index n_load);
};

enum class OracleMode { AcIpm, DcQp };

struct OracleConfig {
  double tol = 1e-8;        // feasibility (power balance, pu)
  double tol_opt = 1e-6;    // optimality / complementarity
  int max_iter = 150;
  bool flat_start = false;  // true: skip the power-flow warm start
  OracleMode mode = OracleMode::AcIpm;
};

struct OpfSolution {
  bool converged = false;
  int iterations = 0;
  double cost = 0.0;        // $/h
  Eigen::VectorXd pg;       // MW per generator
  Eigen::VectorXd qg;       // MVAr per generator
  Eigen::VectorXd vm;       // pu per bus
  Eigen::VectorXd va;       // rad per bus
  double balance_residual = 0.0;  // max |power mismatch| pu
  double bound_violation = 0.0;   // max violation relative to bound range
  double comp_residual = 0.0;
  std::string message;
};

// Returns a copy of the case with bus demands overwritten by (p_d, q_d) over
// the case's load buses and each renewable generator's pmax (and power-flow
// seed) set to the realized injection p_r; conventional units untouched.
// Throws std::invalid_argument on dimension mismatch or when a renewable bus
// lacks a renewable generator.
NetworkCase apply_input(const NetworkCase& nc, const InputVector& x,
                        const std::vector<int>& renewable_buses);

OpfSolution solve_opf(const NetworkCase& nc, const OracleConfig& cfg = {});

// Problem builders, exposed so tests can check every derivative against
// finite differences through the NlpProblem interface.
struct OpfProblemBundle {
  std::unique_ptr<NlpProblem> problem;
  Eigen::VectorXd x0;
  int nb = 0;
  int ng_active = 0;               // variables exist for these units
  std::vector<int> active_gens;    // indices into nc.generators
};
OpfProblemBundle build_ac_opf_problem(const NetworkCase& nc, const OracleConfig& cfg);
OpfProblemBundle build_dc_opf_problem(const NetworkCase& nc, const OracleConfig& cfg);

}  // namespace gppopf
