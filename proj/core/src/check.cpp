#include "gppopf/check.hpp"

#include <cmath>
#include <complex>

namespace gppopf {

FeasibilityReport check_solution(const NetworkCase& nc, const OpfSolution& sol) {
  using C = std::complex<double>;
  const int nb = static_cast<int>(nc.buses.size());
  const double base = nc.base_mva;

  std::vector<C> V(nb);
  for (int i = 0; i < nb; ++i) V[i] = std::polar(sol.vm(i), sol.va(i));

  // power leaving each bus through branches, accumulated per branch
  std::vector<C> outflow(nb, C(0, 0));
  FeasibilityReport rep;
  for (const auto& br : nc.branches) {
    int f = nc.bus_index(br.from);
    int t = nc.bus_index(br.to);
    C zs(br.r, br.x);
    C tc = std::polar(br.tap, br.shift);
    C vf_int = V[f] / tc;             // from-side voltage behind the tap
    C il = (vf_int - V[t]) / zs;      // series current, from -> to
    C half_charge(0, br.b / 2.0);
    C if_side = (il + half_charge * vf_int) / std::conj(tc);
    C it_side = -il + half_charge * V[t];
    C Sf = V[f] * std::conj(if_side);
    C St = V[t] * std::conj(it_side);
    outflow[f] += Sf;
    outflow[t] += St;
    if (br.rate_a > 0.0) {
      double cap = br.rate_a / base;
      double worst = std::max(std::abs(Sf), std::abs(St));
      rep.flow_violation = std::max(rep.flow_violation, (worst - cap) / cap);
    }
  }

  for (int i = 0; i < nb; ++i) {
    const Bus& bus = nc.buses[i];
    C shunt = std::norm(V[i]) * C(bus.gs, -bus.bs) / base;
    C gen(0, 0);
    for (std::size_t g = 0; g < nc.generators.size(); ++g)
      if (nc.generators[g].status && nc.generators[g].bus == bus.id)
        gen += C(sol.pg(static_cast<Eigen::Index>(g)), sol.qg(static_cast<Eigen::Index>(g)));
    C mismatch = gen / base - C(bus.pd, bus.qd) / base - shunt - outflow[i];
    rep.balance_residual = std::max(
        rep.balance_residual, std::max(std::abs(mismatch.real()), std::abs(mismatch.imag())));
  }

  double viol = 0.0;
  for (int i = 0; i < nb; ++i) {
    const Bus& bus = nc.buses[i];
    double range = std::max(bus.vmax - bus.vmin, 1e-12);
    viol = std::max(viol, (bus.vmin - sol.vm(i)) / range);
    viol = std::max(viol, (sol.vm(i) - bus.vmax) / range);
  }
  for (std::size_t g = 0; g < nc.generators.size(); ++g) {
    const Generator& gen = nc.generators[g];
    if (!gen.status) continue;
    auto gi = static_cast<Eigen::Index>(g);
    double prange = std::max(gen.pmax - gen.pmin, 1e-12);
    double qrange = std::max(gen.qmax - gen.qmin, 1e-12);
    viol = std::max(viol, (gen.pmin - sol.pg(gi)) / prange);
    viol = std::max(viol, (sol.pg(gi) - gen.pmax) / prange);
    viol = std::max(viol, (gen.qmin - sol.qg(gi)) / qrange);
    viol = std::max(viol, (sol.qg(gi) - gen.qmax) / qrange);
  }
  rep.bound_violation = std::max(0.0, viol);
  rep.flow_violation = std::max(0.0, rep.flow_violation);
  return rep;
}

}  // namespace gppopf
