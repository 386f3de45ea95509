#include "gppopf/powerflow.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace gppopf {

namespace {

Eigen::VectorXcd bus_injections(const Eigen::MatrixXcd& Y, const Eigen::VectorXd& vm,
                                const Eigen::VectorXd& va) {
  Eigen::VectorXcd V(vm.size());
  for (Eigen::Index i = 0; i < vm.size(); ++i) V(i) = std::polar(vm(i), va(i));
  return V.cwiseProduct((Y * V).conjugate());
}

}  // namespace

PowerFlowResult solve_power_flow(const NetworkCase& nc, const PowerFlowOptions& opt) {
  const int nb = static_cast<int>(nc.buses.size());
  const int ng = static_cast<int>(nc.generators.size());
  const int slack = nc.slack_index();
  if (slack < 0) throw ParseError("power flow requires a slack bus");

  Eigen::MatrixXcd Y = admittance_matrix(nc);

  // fixed injections: generator dispatch from the case, loads as given
  Eigen::VectorXd pspec = Eigen::VectorXd::Zero(nb);
  Eigen::VectorXd qspec = Eigen::VectorXd::Zero(nb);
  std::vector<bool> regulated(nb, false);
  Eigen::VectorXd vset = Eigen::VectorXd::Zero(nb);
  for (int g = 0; g < ng; ++g) {
    const Generator& gen = nc.generators[g];
    if (!gen.status) continue;
    int i = nc.bus_index(gen.bus);
    pspec(i) += gen.pg0;
    qspec(i) += gen.qg0;
    if (gen.qmin < gen.qmax) {
      regulated[i] = true;
      vset(i) = gen.vg;
    }
  }
  for (int i = 0; i < nb; ++i) {
    pspec(i) = (pspec(i) - nc.buses[i].pd) / nc.base_mva;
    qspec(i) = (qspec(i) - nc.buses[i].qd) / nc.base_mva;
  }

  // role assignment: slack from the table; PV only if the bus regulates
  std::vector<int> pv, pq;
  for (int i = 0; i < nb; ++i) {
    if (i == slack) continue;
    if (nc.buses[i].bus_type == BusType::PV && regulated[i])
      pv.push_back(i);
    else
      pq.push_back(i);
  }

  PowerFlowResult res;
  res.vm = Eigen::VectorXd::Ones(nb);
  res.va = Eigen::VectorXd::Zero(nb);
  if (!opt.flat_start)
    for (int i = 0; i < nb; ++i) {
      res.vm(i) = nc.buses[i].v0;
      res.va(i) = nc.buses[i].theta0;
    }
  res.vm(slack) = regulated[slack] ? vset(slack) : nc.buses[slack].v0;
  res.va(slack) = nc.buses[slack].theta0;
  for (int i : pv) res.vm(i) = vset(i);

  const int npv = static_cast<int>(pv.size());
  const int npq = static_cast<int>(pq.size());
  const int n = npv + 2 * npq;

  std::vector<int> pvpq(pv);
  pvpq.insert(pvpq.end(), pq.begin(), pq.end());

  for (int it = 0; it <= opt.max_iter; ++it) {
    Eigen::VectorXcd S = bus_injections(Y, res.vm, res.va);
    Eigen::VectorXd f(n);
    for (int k = 0; k < npv + npq; ++k) f(k) = S(pvpq[k]).real() - pspec(pvpq[k]);
    for (int k = 0; k < npq; ++k) f(npv + npq + k) = S(pq[k]).imag() - qspec(pq[k]);
    res.residual = n == 0 ? 0.0 : f.cwiseAbs().maxCoeff();
    res.iterations = it;
    if (res.residual < opt.tol) {
      res.converged = true;
      break;
    }
    if (it == opt.max_iter) {
      res.message = "did not converge: residual " + std::to_string(res.residual);
      break;
    }

    // polar Jacobian
    Eigen::VectorXcd V(nb);
    for (int i = 0; i < nb; ++i) V(i) = std::polar(res.vm(i), res.va(i));
    Eigen::VectorXcd I = Y * V;
    Eigen::MatrixXcd dS_dva = Eigen::MatrixXcd::Zero(nb, nb);
    Eigen::MatrixXcd dS_dvm = Eigen::MatrixXcd::Zero(nb, nb);
    for (int i = 0; i < nb; ++i) {
      std::complex<double> e = V(i) / res.vm(i);
      for (int j = 0; j < nb; ++j) {
        std::complex<double> Yc = std::conj(Y(i, j));
        std::complex<double> common = V(i) * Yc * std::conj(V(j)) / res.vm(j);
        dS_dvm(i, j) = common;
        dS_dva(i, j) = std::complex<double>(0, -1) * common * res.vm(j);
      }
      dS_dva(i, i) += std::complex<double>(0, 1) * V(i) * std::conj(I(i));
      dS_dvm(i, i) += e * std::conj(I(i));
    }

    Eigen::MatrixXd J(n, n);
    for (int r = 0; r < npv + npq; ++r)
      for (int c = 0; c < npv + npq; ++c)
        J(r, c) = dS_dva(pvpq[r], pvpq[c]).real();
    for (int r = 0; r < npv + npq; ++r)
      for (int c = 0; c < npq; ++c)
        J(r, npv + npq + c) = dS_dvm(pvpq[r], pq[c]).real();
    for (int r = 0; r < npq; ++r)
      for (int c = 0; c < npv + npq; ++c)
        J(npv + npq + r, c) = dS_dva(pq[r], pvpq[c]).imag();
    for (int r = 0; r < npq; ++r)
      for (int c = 0; c < npq; ++c)
        J(npv + npq + r, npv + npq + c) = dS_dvm(pq[r], pq[c]).imag();

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    Eigen::VectorXd dx = lu.solve(-f);
    if (!dx.allFinite()) {
      res.message = "singular Jacobian";
      break;
    }
    for (int k = 0; k < npv + npq; ++k) res.va(pvpq[k]) += dx(k);
    for (int k = 0; k < npq; ++k) res.vm(pq[k]) += dx(npv + npq + k);
  }

  // recover generator outputs: slack P and regulated-bus Q from the solution
  Eigen::VectorXcd S = bus_injections(Y, res.vm, res.va);
  res.pg = Eigen::VectorXd::Zero(ng);
  res.qg = Eigen::VectorXd::Zero(ng);
  for (int i = 0; i < nb; ++i) {
    double p_gen_mw = S(i).real() * nc.base_mva + nc.buses[i].pd;
    double q_gen_mvar = S(i).imag() * nc.base_mva + nc.buses[i].qd;
    std::vector<int> here, reg_here;
    for (int g = 0; g < ng; ++g)
      if (nc.generators[g].status && nc.bus_index(nc.generators[g].bus) == i) {
        here.push_back(g);
        if (nc.generators[g].qmin < nc.generators[g].qmax) reg_here.push_back(g);
      }
    if (here.empty()) continue;
    if (i == slack) {
      // keep non-slack units at their dispatch; first unit takes the mismatch
      double rest = 0.0;
      for (std::size_t k = 1; k < here.size(); ++k) {
        res.pg(here[k]) = nc.generators[here[k]].pg0;
        rest += nc.generators[here[k]].pg0;
      }
      res.pg(here[0]) = p_gen_mw - rest;
    } else {
      for (int g : here) res.pg(g) = nc.generators[g].pg0;
    }
    if (!reg_here.empty()) {
      double fixed_q = 0.0;
      for (int g : here)
        if (nc.generators[g].qmin >= nc.generators[g].qmax) {
          res.qg(g) = nc.generators[g].qg0;
          fixed_q += nc.generators[g].qg0;
        }
      double share = (q_gen_mvar - fixed_q) / static_cast<double>(reg_here.size());
      for (int g : reg_here) res.qg(g) = share;
    } else {
      for (int g : here) res.qg(g) = nc.generators[g].qg0;
    }
  }
  return res;
}

}  // namespace gppopf
