#include "gppopf/acopf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "gppopf/counters.hpp"
#include "gppopf/powerflow.hpp"

namespace gppopf {

using Cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

Eigen::VectorXd InputVector::flat() const {
  Eigen::VectorXd x(size());
  x << p_r, p_d, q_d;
  return x;
}

InputVector InputVector::from_flat(const Eigen::VectorXd& x, Eigen::Index n_renewable,
                                   Eigen::Index n_load) {
  if (x.size() != n_renewable + 2 * n_load)
    throw std::invalid_argument("input vector has wrong dimension");
  InputVector v;
  v.p_r = x.head(n_renewable);
  v.p_d = x.segment(n_renewable, n_load);
  v.q_d = x.tail(n_load);
  return v;
}

NetworkCase apply_input(const NetworkCase& nc, const InputVector& x,
                        const std::vector<int>& renewable_buses) {
  std::vector<int> load_ids = nc.load_bus_ids();
  if (x.p_r.size() != static_cast<Eigen::Index>(renewable_buses.size()))
    throw std::invalid_argument("p_r dimension does not match renewable bus list");
  if (x.p_d.size() != static_cast<Eigen::Index>(load_ids.size()) ||
      x.q_d.size() != static_cast<Eigen::Index>(load_ids.size()))
    throw std::invalid_argument("p_d/q_d dimension does not match the case's load buses");

  NetworkCase out = nc;
  for (std::size_t k = 0; k < load_ids.size(); ++k) {
    int i = out.bus_index(load_ids[k]);
    out.buses[i].pd = x.p_d(static_cast<Eigen::Index>(k));
    out.buses[i].qd = x.q_d(static_cast<Eigen::Index>(k));
  }
  for (std::size_t k = 0; k < renewable_buses.size(); ++k) {
    bool found = false;
    for (auto& g : out.generators) {
      if (g.is_renewable && g.bus == renewable_buses[k]) {
        g.pmax = x.p_r(static_cast<Eigen::Index>(k));
        g.pmin = 0.0;
        g.pg0 = g.pmax;
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("no renewable generator at bus " +
                                  std::to_string(renewable_buses[k]));
  }
  return out;
}

namespace {

// A bound pair narrower than this (in MW / MVAr) is treated as a fixed
// injection rather than a variable; the barrier needs a strict interior.
constexpr double kFixedSpan = 1e-6;

// Generator variables actually present in the NLP after fixing.
struct GenLayout {
  std::vector<int> gens;     // indices into nc.generators (in service)
  std::vector<int> p_var;    // positions in `gens` with free active power
  std::vector<int> q_var;    // positions in `gens` with free reactive power
  Eigen::VectorXd p_fixed;   // pu per `gens` entry, used when p is fixed
  Eigen::VectorXd q_fixed;
  std::vector<bool> p_free, q_free;

  static GenLayout build(const NetworkCase& nc) {
    GenLayout l;
    for (std::size_t g = 0; g < nc.generators.size(); ++g)
      if (nc.generators[g].status) l.gens.push_back(static_cast<int>(g));
    if (l.gens.empty())
      throw std::invalid_argument("case has no in-service generators");
    const int n = static_cast<int>(l.gens.size());
    l.p_fixed = Eigen::VectorXd::Zero(n);
    l.q_fixed = Eigen::VectorXd::Zero(n);
    l.p_free.assign(n, false);
    l.q_free.assign(n, false);
    for (int k = 0; k < n; ++k) {
      const Generator& gen = nc.generators[l.gens[k]];
      if (gen.pmax - gen.pmin > kFixedSpan) {
        l.p_free[k] = true;
        l.p_var.push_back(k);
      } else {
        l.p_fixed(k) = 0.5 * (gen.pmin + gen.pmax) / nc.base_mva;
      }
      if (gen.qmax - gen.qmin > kFixedSpan) {
        l.q_free[k] = true;
        l.q_var.push_back(k);
      } else {
        l.q_fixed(k) = 0.5 * (gen.qmin + gen.qmax) / nc.base_mva;
      }
    }
    return l;
  }
};

// Hessian blocks of W(V) = sum_ab B_ab V_a conj(V_b) with respect to polar
// coordinates, returned as one complex 2n x 2n matrix
// [[d2W/dva2, d2W/dva dvm], [sym, d2W/dvm2]]. The caller folds complex
// weights into B and takes the real part of the result.
MatC bilinear_hessian(const MatC& B, const VecC& V, const Eigen::VectorXd& vm) {
  const Eigen::Index n = V.size();
  MatC A = V.asDiagonal() * B * V.conjugate().asDiagonal();
  VecC r = A.rowwise().sum();
  VecC s = A.colwise().sum().transpose();
  VecC vinv = vm.cwiseInverse().cast<Cplx>();

  MatC H(2 * n, 2 * n);
  MatC At = A.transpose();
  H.topLeftCorner(n, n) = A + At;
  H.topLeftCorner(n, n) -= MatC((r + s).asDiagonal());
  MatC hav = Cplx(0, 1) * ((A - At) * vinv.asDiagonal());
  hav += MatC((Cplx(0, 1) * (r - s).cwiseProduct(vinv)).asDiagonal());
  H.topRightCorner(n, n) = hav;
  H.bottomLeftCorner(n, n) = hav.transpose();
  H.bottomRightCorner(n, n) = vinv.asDiagonal() * (A + At) * vinv.asDiagonal();
  return H;
}

struct LimitedBranch {
  int f, t;
  Cplx yff, yft, ytf, ytt;
  double rate2;  // (rate_a / base)^2
};

class AcOpfProblem final : public NlpProblem {
 public:
  AcOpfProblem(const NetworkCase& nc, GenLayout layout)
      : nc_(nc), lay_(std::move(layout)) {
    nb_ = static_cast<int>(nc_.buses.size());
    npv_ = static_cast<int>(lay_.p_var.size());
    nqv_ = static_cast<int>(lay_.q_var.size());
    slack_ = nc_.slack_index();
    base_ = nc_.base_mva;
    Y_ = admittance_matrix(nc_);

    pd_ = Eigen::VectorXd(nb_);
    qd_ = Eigen::VectorXd(nb_);
    for (int i = 0; i < nb_; ++i) {
      pd_(i) = nc_.buses[i].pd / base_;
      qd_(i) = nc_.buses[i].qd / base_;
    }
    // fixed injections fold into the demand vectors
    for (std::size_t k = 0; k < lay_.gens.size(); ++k) {
      int b = nc_.bus_index(nc_.generators[lay_.gens[k]].bus);
      if (!lay_.p_free[k]) pd_(b) -= lay_.p_fixed(static_cast<int>(k));
      if (!lay_.q_free[k]) qd_(b) -= lay_.q_fixed(static_cast<int>(k));
    }

    for (const auto& br : nc_.branches) {
      if (br.rate_a <= 0.0) continue;
      LimitedBranch lb;
      lb.f = nc_.bus_index(br.from);
      lb.t = nc_.bus_index(br.to);
      Cplx ys = 1.0 / Cplx(br.r, br.x);
      Cplx charge(0.0, br.b / 2.0);
      Cplx tc = std::polar(br.tap, br.shift);
      lb.yff = (ys + charge) / (br.tap * br.tap);
      lb.yft = -ys / std::conj(tc);
      lb.ytf = -ys / tc;
      lb.ytt = ys + charge;
      lb.rate2 = (br.rate_a / base_) * (br.rate_a / base_);
      limited_.push_back(lb);
    }
    nlim_ = static_cast<int>(limited_.size());

    fixed_cost_ = 0.0;
    for (std::size_t k = 0; k < lay_.gens.size(); ++k)
      if (!lay_.p_free[k])
        fixed_cost_ += nc_.costs[lay_.gens[k]].eval(lay_.p_fixed(static_cast<int>(k)) * base_);
  }

  const GenLayout& layout() const { return lay_; }

  int num_vars() const override { return 2 * nb_ + npv_ + nqv_; }
  int num_eq() const override { return 2 * nb_ + 1; }
  int num_ineq() const override { return 2 * nb_ + 2 * npv_ + 2 * nqv_ + 2 * nlim_; }

  int iva(int b) const { return b; }
  int ivm(int b) const { return nb_ + b; }
  int ipg(int v) const { return 2 * nb_ + v; }                // v in [0, npv)
  int iqg(int v) const { return 2 * nb_ + npv_ + v; }         // v in [0, nqv)

  const Generator& pgen(int v) const { return nc_.generators[lay_.gens[lay_.p_var[v]]]; }
  const Generator& qgen(int v) const { return nc_.generators[lay_.gens[lay_.q_var[v]]]; }
  const GenCost& pcost(int v) const { return nc_.costs[lay_.gens[lay_.p_var[v]]]; }

  double objective(const Eigen::VectorXd& x) const override {
    double f = fixed_cost_;
    for (int v = 0; v < npv_; ++v) f += pcost(v).eval(x(ipg(v)) * base_);
    return f;
  }

  Eigen::VectorXd objective_grad(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(num_vars());
    for (int v = 0; v < npv_; ++v) {
      const GenCost& c = pcost(v);
      grad(ipg(v)) = (2.0 * c.c2 * x(ipg(v)) * base_ + c.c1) * base_;
    }
    return grad;
  }

  VecC voltages(const Eigen::VectorXd& x) const {
    VecC V(nb_);
    for (int i = 0; i < nb_; ++i) V(i) = std::polar(x(ivm(i)), x(iva(i)));
    return V;
  }

  Eigen::VectorXd eval_eq(const Eigen::VectorXd& x) const override {
    VecC V = voltages(x);
    VecC S = V.cwiseProduct((Y_ * V).conjugate());
    Eigen::VectorXd g(num_eq());
    g.head(nb_) = S.real() + pd_;
    g.segment(nb_, nb_) = S.imag() + qd_;
    for (int v = 0; v < npv_; ++v)
      g(nc_.bus_index(pgen(v).bus)) -= x(ipg(v));
    for (int v = 0; v < nqv_; ++v)
      g(nb_ + nc_.bus_index(qgen(v).bus)) -= x(iqg(v));
    g(2 * nb_) = x(iva(slack_)) - nc_.buses[slack_].theta0;
    return g;
  }

  Eigen::MatrixXd eq_jacobian(const Eigen::VectorXd& x) const override {
    VecC V = voltages(x);
    VecC I = Y_ * V;
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(num_eq(), num_vars());
    for (int i = 0; i < nb_; ++i) {
      Cplx e = V(i) / x(ivm(i));
      for (int j = 0; j < nb_; ++j) {
        Cplx common = V(i) * std::conj(Y_(i, j)) * std::conj(V(j)) / x(ivm(j));
        Cplx dva = Cplx(0, -1) * common * x(ivm(j));
        Cplx dvm = common;
        if (i == j) {
          dva += Cplx(0, 1) * V(i) * std::conj(I(i));
          dvm += e * std::conj(I(i));
        }
        G(i, iva(j)) = dva.real();
        G(i, ivm(j)) = dvm.real();
        G(nb_ + i, iva(j)) = dva.imag();
        G(nb_ + i, ivm(j)) = dvm.imag();
      }
    }
    for (int v = 0; v < npv_; ++v)
      G(nc_.bus_index(pgen(v).bus), ipg(v)) = -1.0;
    for (int v = 0; v < nqv_; ++v)
      G(nb_ + nc_.bus_index(qgen(v).bus), iqg(v)) = -1.0;
    G(2 * nb_, iva(slack_)) = 1.0;
    return G;
  }

  // inequality layout: [vm-ub; lb-vm; pg-ub; lb-pg; qg-ub; lb-qg; |Sf|^2; |St|^2]
  Eigen::VectorXd eval_ineq(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd h(num_ineq());
    int k = 0;
    for (int i = 0; i < nb_; ++i) h(k++) = x(ivm(i)) - nc_.buses[i].vmax;
    for (int i = 0; i < nb_; ++i) h(k++) = nc_.buses[i].vmin - x(ivm(i));
    for (int v = 0; v < npv_; ++v) h(k++) = x(ipg(v)) - pgen(v).pmax / base_;
    for (int v = 0; v < npv_; ++v) h(k++) = pgen(v).pmin / base_ - x(ipg(v));
    for (int v = 0; v < nqv_; ++v) h(k++) = x(iqg(v)) - qgen(v).qmax / base_;
    for (int v = 0; v < nqv_; ++v) h(k++) = qgen(v).qmin / base_ - x(iqg(v));
    if (nlim_ > 0) {
      VecC V = voltages(x);
      for (const auto& lb : limited_) {
        Cplx Sf = V(lb.f) * std::conj(lb.yff * V(lb.f) + lb.yft * V(lb.t));
        h(k++) = std::norm(Sf) - lb.rate2;
      }
      for (const auto& lb : limited_) {
        Cplx St = V(lb.t) * std::conj(lb.ytf * V(lb.f) + lb.ytt * V(lb.t));
        h(k++) = std::norm(St) - lb.rate2;
      }
    }
    return h;
  }

  Eigen::MatrixXd ineq_jacobian(const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(num_ineq(), num_vars());
    int k = 0;
    for (int i = 0; i < nb_; ++i) H(k++, ivm(i)) = 1.0;
    for (int i = 0; i < nb_; ++i) H(k++, ivm(i)) = -1.0;
    for (int v = 0; v < npv_; ++v) H(k++, ipg(v)) = 1.0;
    for (int v = 0; v < npv_; ++v) H(k++, ipg(v)) = -1.0;
    for (int v = 0; v < nqv_; ++v) H(k++, iqg(v)) = 1.0;
    for (int v = 0; v < nqv_; ++v) H(k++, iqg(v)) = -1.0;
    if (nlim_ > 0) {
      VecC V = voltages(x);
      for (int side = 0; side < 2; ++side) {
        for (const auto& lb : limited_) {
          int a = side == 0 ? lb.f : lb.t;
          int o = side == 0 ? lb.t : lb.f;
          Cplx yaa = side == 0 ? lb.yff : lb.ytt;
          Cplx yao = side == 0 ? lb.yft : lb.ytf;
          Cplx Iax = yaa * V(a) + yao * V(o);
          Cplx S = V(a) * std::conj(Iax);
          Cplx ea = V(a) / x(ivm(a));
          Cplx eo = V(o) / x(ivm(o));
          Cplx dS_tha = Cplx(0, 1) * V(a) * std::conj(Iax) +
                        V(a) * std::conj(Cplx(0, 1) * yaa * V(a));
          Cplx dS_tho = V(a) * std::conj(Cplx(0, 1) * yao * V(o));
          Cplx dS_va = ea * std::conj(Iax) + V(a) * std::conj(yaa * ea);
          Cplx dS_vo = V(a) * std::conj(yao * eo);
          H(k, iva(a)) = 2.0 * (std::conj(S) * dS_tha).real();
          H(k, iva(o)) = 2.0 * (std::conj(S) * dS_tho).real();
          H(k, ivm(a)) = 2.0 * (std::conj(S) * dS_va).real();
          H(k, ivm(o)) = 2.0 * (std::conj(S) * dS_vo).real();
          ++k;
        }
      }
    }
    return H;
  }

  Eigen::MatrixXd lagrangian_hessian(const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& lam_eq,
                                     const Eigen::VectorXd& mu_ineq) const override {
    const int nv = num_vars();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(nv, nv);
    for (int v = 0; v < npv_; ++v)
      L(ipg(v), ipg(v)) = 2.0 * pcost(v).c2 * base_ * base_;

    VecC V = voltages(x);
    Eigen::VectorXd vm = x.segment(nb_, nb_);

    // bus balance enters with weights lamP - i lamQ; the second-order part
    // of each flow limit folds in with weight 2 mu conj(S)
    VecC w = lam_eq.head(nb_).cast<Cplx>() -
             Cplx(0, 1) * lam_eq.segment(nb_, nb_).cast<Cplx>();
    MatC B = w.asDiagonal() * Y_.conjugate();

    MatC Jflow;
    Eigen::VectorXd muf;
    if (nlim_ > 0) {
      Jflow = MatC::Zero(2 * nlim_, 2 * nb_);
      muf = Eigen::VectorXd(2 * nlim_);
      const int mu0 = 2 * nb_ + 2 * npv_ + 2 * nqv_;
      for (int side = 0; side < 2; ++side) {
        for (int l = 0; l < nlim_; ++l) {
          const auto& lb = limited_[l];
          int a = side == 0 ? lb.f : lb.t;
          int o = side == 0 ? lb.t : lb.f;
          Cplx yaa = side == 0 ? lb.yff : lb.ytt;
          Cplx yao = side == 0 ? lb.yft : lb.ytf;
          Cplx Iax = yaa * V(a) + yao * V(o);
          Cplx S = V(a) * std::conj(Iax);
          double mu = mu_ineq(mu0 + side * nlim_ + l);
          int row = side * nlim_ + l;
          muf(row) = mu;
          Cplx ea = V(a) / vm(a);
          Cplx eo = V(o) / vm(o);
          Jflow(row, a) = Cplx(0, 1) * V(a) * std::conj(Iax) +
                          V(a) * std::conj(Cplx(0, 1) * yaa * V(a));
          Jflow(row, o) = V(a) * std::conj(Cplx(0, 1) * yao * V(o));
          Jflow(row, nb_ + a) = ea * std::conj(Iax) + V(a) * std::conj(yaa * ea);
          Jflow(row, nb_ + o) = V(a) * std::conj(yao * eo);
          Cplx wf = 2.0 * mu * std::conj(S);
          B(a, a) += wf * std::conj(yaa);
          B(a, o) += wf * std::conj(yao);
        }
      }
    }

    MatC Hc = bilinear_hessian(B, V, vm);
    L.topLeftCorner(2 * nb_, 2 * nb_) += Hc.real();
    if (nlim_ > 0) {
      MatC JmJ = Jflow.adjoint() * muf.cast<Cplx>().asDiagonal() * Jflow;
      L.topLeftCorner(2 * nb_, 2 * nb_) += 2.0 * JmJ.real();
    }
    return L;
  }

 private:
  NetworkCase nc_;
  GenLayout lay_;
  int nb_ = 0, npv_ = 0, nqv_ = 0, slack_ = 0, nlim_ = 0;
  double base_ = 100.0;
  double fixed_cost_ = 0.0;
  MatC Y_;
  Eigen::VectorXd pd_, qd_;
  std::vector<LimitedBranch> limited_;
};

class DcOpfProblem final : public NlpProblem {
 public:
  DcOpfProblem(const NetworkCase& nc, GenLayout layout)
      : nc_(nc), lay_(std::move(layout)) {
    nb_ = static_cast<int>(nc_.buses.size());
    npv_ = static_cast<int>(lay_.p_var.size());
    slack_ = nc_.slack_index();
    base_ = nc_.base_mva;

    Bbus_ = Eigen::MatrixXd::Zero(nb_, nb_);
    for (const auto& br : nc_.branches) {
      int f = nc_.bus_index(br.from);
      int t = nc_.bus_index(br.to);
      double b = 1.0 / (br.x * br.tap);
      Bbus_(f, f) += b;
      Bbus_(t, t) += b;
      Bbus_(f, t) -= b;
      Bbus_(t, f) -= b;
      if (br.rate_a > 0.0) limited_.push_back({f, t, b, br.rate_a / base_});
    }
    nlim_ = static_cast<int>(limited_.size());

    pd_ = Eigen::VectorXd(nb_);
    for (int i = 0; i < nb_; ++i) pd_(i) = nc_.buses[i].pd / base_;
    fixed_cost_ = 0.0;
    for (std::size_t k = 0; k < lay_.gens.size(); ++k)
      if (!lay_.p_free[k]) {
        int b = nc_.bus_index(nc_.generators[lay_.gens[k]].bus);
        pd_(b) -= lay_.p_fixed(static_cast<int>(k));
        fixed_cost_ += nc_.costs[lay_.gens[k]].eval(lay_.p_fixed(static_cast<int>(k)) * base_);
      }

    G_ = Eigen::MatrixXd::Zero(num_eq(), num_vars());
    G_.topLeftCorner(nb_, nb_) = Bbus_;
    for (int v = 0; v < npv_; ++v)
      G_(nc_.bus_index(pgen(v).bus), nb_ + v) = -1.0;
    G_(nb_, slack_) = 1.0;
  }

  const GenLayout& layout() const { return lay_; }
  const Generator& pgen(int v) const { return nc_.generators[lay_.gens[lay_.p_var[v]]]; }
  const GenCost& pcost(int v) const { return nc_.costs[lay_.gens[lay_.p_var[v]]]; }

  int num_vars() const override { return nb_ + npv_; }
  int num_eq() const override { return nb_ + 1; }
  int num_ineq() const override { return 2 * npv_ + 2 * nlim_; }

  double objective(const Eigen::VectorXd& x) const override {
    double f = fixed_cost_;
    for (int v = 0; v < npv_; ++v) f += pcost(v).eval(x(nb_ + v) * base_);
    return f;
  }

  Eigen::VectorXd objective_grad(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(num_vars());
    for (int v = 0; v < npv_; ++v) {
      const GenCost& c = pcost(v);
      grad(nb_ + v) = (2.0 * c.c2 * x(nb_ + v) * base_ + c.c1) * base_;
    }
    return grad;
  }

  Eigen::VectorXd eval_eq(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd g(num_eq());
    g.head(nb_) = Bbus_ * x.head(nb_) + pd_;
    for (int v = 0; v < npv_; ++v)
      g(nc_.bus_index(pgen(v).bus)) -= x(nb_ + v);
    g(nb_) = x(slack_) - nc_.buses[slack_].theta0;
    return g;
  }

  Eigen::MatrixXd eq_jacobian(const Eigen::VectorXd&) const override { return G_; }

  Eigen::VectorXd eval_ineq(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd h(num_ineq());
    int k = 0;
    for (int v = 0; v < npv_; ++v) h(k++) = x(nb_ + v) - pgen(v).pmax / base_;
    for (int v = 0; v < npv_; ++v) h(k++) = pgen(v).pmin / base_ - x(nb_ + v);
    for (const auto& lb : limited_) h(k++) = lb.b * (x(lb.f) - x(lb.t)) - lb.rate;
    for (const auto& lb : limited_) h(k++) = lb.b * (x(lb.t) - x(lb.f)) - lb.rate;
    return h;
  }

  Eigen::MatrixXd ineq_jacobian(const Eigen::VectorXd&) const override {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(num_ineq(), num_vars());
    int k = 0;
    for (int v = 0; v < npv_; ++v) H(k++, nb_ + v) = 1.0;
    for (int v = 0; v < npv_; ++v) H(k++, nb_ + v) = -1.0;
    for (const auto& lb : limited_) {
      H(k, lb.f) = lb.b;
      H(k++, lb.t) = -lb.b;
    }
    for (const auto& lb : limited_) {
      H(k, lb.t) = lb.b;
      H(k++, lb.f) = -lb.b;
    }
    return H;
  }

  Eigen::MatrixXd lagrangian_hessian(const Eigen::VectorXd&, const Eigen::VectorXd&,
                                     const Eigen::VectorXd&) const override {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(num_vars(), num_vars());
    for (int v = 0; v < npv_; ++v)
      L(nb_ + v, nb_ + v) = 2.0 * pcost(v).c2 * base_ * base_;
    return L;
  }

 private:
  struct DcBranch {
    int f, t;
    double b, rate;
  };
  NetworkCase nc_;
  GenLayout lay_;
  int nb_ = 0, npv_ = 0, slack_ = 0, nlim_ = 0;
  double base_ = 100.0;
  double fixed_cost_ = 0.0;
  Eigen::MatrixXd Bbus_, G_;
  Eigen::VectorXd pd_;
  std::vector<DcBranch> limited_;
};

double clamp_interior(double v, double lo, double hi, double margin) {
  if (!(lo < hi)) return 0.5 * (lo + hi);
  double m = std::min(margin, 0.25 * (hi - lo));
  return std::clamp(v, lo + m, hi - m);
}

}  // namespace

OpfProblemBundle build_ac_opf_problem(const NetworkCase& nc, const OracleConfig& cfg) {
  GenLayout lay = GenLayout::build(nc);
  auto prob = std::make_unique<AcOpfProblem>(nc, lay);
  const auto& l = prob->layout();

  OpfProblemBundle b;
  b.nb = static_cast<int>(nc.buses.size());
  b.ng_active = static_cast<int>(l.gens.size());
  b.active_gens = l.gens;

  const int nb = b.nb;
  const int npv = static_cast<int>(l.p_var.size());
  const int nqv = static_cast<int>(l.q_var.size());
  Eigen::VectorXd x0(2 * nb + npv + nqv);

  PowerFlowResult pf;
  if (!cfg.flat_start) pf = solve_power_flow(nc);
  const bool warm = pf.converged;
  for (int i = 0; i < nb; ++i) {
    x0(i) = warm ? pf.va(i) : nc.buses[i].theta0;
    double v = warm ? pf.vm(i) : 1.0;
    x0(nb + i) = clamp_interior(v, nc.buses[i].vmin, nc.buses[i].vmax, 1e-4);
  }
  for (int v = 0; v < npv; ++v) {
    const Generator& gen = nc.generators[l.gens[l.p_var[v]]];
    double seed = warm ? pf.pg(l.gens[l.p_var[v]]) : 0.5 * (gen.pmin + gen.pmax);
    x0(2 * nb + v) =
        clamp_interior(seed, gen.pmin, gen.pmax, 1e-4 * (gen.pmax - gen.pmin)) /
        nc.base_mva;
  }
  for (int v = 0; v < nqv; ++v) {
    const Generator& gen = nc.generators[l.gens[l.q_var[v]]];
    double seed = warm ? pf.qg(l.gens[l.q_var[v]]) : 0.5 * (gen.qmin + gen.qmax);
    x0(2 * nb + npv + v) =
        clamp_interior(seed, gen.qmin, gen.qmax, 1e-4 * (gen.qmax - gen.qmin)) /
        nc.base_mva;
  }
  b.x0 = x0;
  b.problem = std::move(prob);
  return b;
}

OpfProblemBundle build_dc_opf_problem(const NetworkCase& nc, const OracleConfig&) {
  GenLayout lay = GenLayout::build(nc);
  auto prob = std::make_unique<DcOpfProblem>(nc, lay);
  const auto& l = prob->layout();

  OpfProblemBundle b;
  b.nb = static_cast<int>(nc.buses.size());
  b.ng_active = static_cast<int>(l.gens.size());
  b.active_gens = l.gens;

  const int npv = static_cast<int>(l.p_var.size());
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(b.nb + npv);
  for (int i = 0; i < b.nb; ++i) x0(i) = nc.buses[i].theta0;
  for (int v = 0; v < npv; ++v) {
    const Generator& gen = nc.generators[l.gens[l.p_var[v]]];
    x0(b.nb + v) = 0.5 * (gen.pmin + gen.pmax) / nc.base_mva;
  }
  b.x0 = x0;
  b.problem = std::move(prob);
  return b;
}

OpfSolution solve_opf(const NetworkCase& nc, const OracleConfig& cfg) {
  counters::opf_solves().fetch_add(1, std::memory_order_relaxed);
  validate_case(nc);

  const bool dc = cfg.mode == OracleMode::DcQp;
  OpfProblemBundle bundle =
      dc ? build_dc_opf_problem(nc, cfg) : build_ac_opf_problem(nc, cfg);

  IpmOptions opt;
  opt.tol_eq = cfg.tol;
  opt.tol_comp = cfg.tol_opt;
  opt.tol_grad = cfg.tol_opt;
  opt.max_iter = cfg.max_iter;
  IpmResult r = solve_nlp(*bundle.problem, bundle.x0, opt);

  // reconstruct per-generator outputs, including fixed injections
  GenLayout lay = GenLayout::build(nc);
  const int nb = bundle.nb;
  const int npv = static_cast<int>(lay.p_var.size());
  const int ng_all = static_cast<int>(nc.generators.size());

  OpfSolution sol;
  sol.converged = r.converged;
  sol.iterations = r.iterations;
  sol.message = r.message;
  sol.cost = r.objective;
  sol.balance_residual = r.eq_residual;
  sol.comp_residual = r.comp_residual;
  sol.pg = Eigen::VectorXd::Zero(ng_all);
  sol.qg = Eigen::VectorXd::Zero(ng_all);
  sol.va = r.x.head(nb);
  sol.vm = dc ? Eigen::VectorXd::Ones(nb) : r.x.segment(nb, nb);

  for (std::size_t k = 0; k < lay.gens.size(); ++k) {
    if (!lay.p_free[k]) sol.pg(lay.gens[k]) = lay.p_fixed(static_cast<int>(k)) * nc.base_mva;
    if (!lay.q_free[k]) sol.qg(lay.gens[k]) = lay.q_fixed(static_cast<int>(k)) * nc.base_mva;
  }
  const int pg0 = dc ? nb : 2 * nb;
  for (std::size_t v = 0; v < lay.p_var.size(); ++v)
    sol.pg(lay.gens[lay.p_var[v]]) = r.x(pg0 + static_cast<int>(v)) * nc.base_mva;
  if (!dc)
    for (std::size_t v = 0; v < lay.q_var.size(); ++v)
      sol.qg(lay.gens[lay.q_var[v]]) = r.x(2 * nb + npv + static_cast<int>(v)) * nc.base_mva;

  double viol = 0.0;
  if (!dc)
    for (int i = 0; i < nb; ++i) {
      const Bus& bus = nc.buses[i];
      double range = std::max(bus.vmax - bus.vmin, 1e-12);
      viol = std::max(viol, (bus.vmin - sol.vm(i)) / range);
      viol = std::max(viol, (sol.vm(i) - bus.vmax) / range);
    }
  for (int g = 0; g < ng_all; ++g) {
    if (!nc.generators[g].status) continue;
    const Generator& gen = nc.generators[g];
    double prange = std::max(gen.pmax - gen.pmin, 1e-12);
    viol = std::max(viol, (gen.pmin - sol.pg(g)) / prange);
    viol = std::max(viol, (sol.pg(g) - gen.pmax) / prange);
    if (!dc) {
      double qrange = std::max(gen.qmax - gen.qmin, 1e-12);
      viol = std::max(viol, (gen.qmin - sol.qg(g)) / qrange);
      viol = std::max(viol, (sol.qg(g) - gen.qmax) / qrange);
    }
  }
  sol.bound_violation = std::max(0.0, viol);
  return sol;
}

}  // namespace gppopf
