// MATPOWER-format case parsing and the nodal admittance matrix.
//
// Supports the version-2 table subset used by the bundled test systems:
// baseMVA plus the bus, gen, branch and gencost matrices, with polynomial
// costs of degree <= 2. Piecewise-linear costs are rejected.
#pragma once

#include <complex>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gppopf {

enum class BusType { Slack, PV, PQ };

struct Bus {
  int id = 0;
  BusType bus_type = BusType::PQ;
  double pd = 0.0;      // MW
  double qd = 0.0;      // MVAr
  double gs = 0.0;      // MW at 1 pu
  double bs = 0.0;      // MVAr at 1 pu
  double vmax = 1.1;    // pu
  double vmin = 0.9;    // pu
  double v0 = 1.0;      // pu
  double theta0 = 0.0;  // rad
};

struct Generator {
  int bus = 0;
  double pg0 = 0.0;   // MW, dispatch from the case file (power-flow seed)
  double qg0 = 0.0;   // MVAr
  double pmax = 0.0;  // MW
  double pmin = 0.0;
  double qmax = 0.0;  // MVAr
  double qmin = 0.0;
  double vg = 1.0;    // pu voltage setpoint
  bool status = true;
  bool is_renewable = false;  // assigned by experiment config, never parsed
};

struct Branch {
  int from = 0;
  int to = 0;
  double r = 0.0;     // pu
  double x = 0.0;     // pu
  double b = 0.0;     // pu total charging
  double tap = 1.0;   // off-nominal ratio, 1.0 if absent
  double shift = 0.0; // rad
  double rate_a = 0.0; // MVA, 0 = unlimited
};

// polynomial cost c2*p^2 + c1*p + c0 with p in MW, value in $/h
struct GenCost {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double eval(double p_mw) const { return (c2 * p_mw + c1) * p_mw + c0; }
};

struct NetworkCase {
  std::string name;
  double base_mva = 100.0;
  std::vector<Bus> buses;
  std::vector<Generator> generators;
  std::vector<Branch> branches;
  std::vector<GenCost> costs;  // one per generator

  int bus_index(int bus_id) const;  // -1 if unknown
  int slack_index() const;
  double total_pd() const;
  std::vector<int> load_bus_ids() const;  // buses with pd != 0 or qd != 0
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Parses MATPOWER case text. Throws ParseError with a line number on syntax
// errors and with the offending row on semantic errors (dangling bus
// reference, missing slack, unsupported cost model). Table row order is
// preserved; out-of-service branches are dropped.
NetworkCase parse_case(std::istream& text, const std::string& name = "");
NetworkCase parse_case_string(const std::string& text, const std::string& name = "");
NetworkCase parse_case_file(const std::string& path);

// Checks all NetworkCase invariants; throws ParseError describing the first
// violation. parse_case calls this before returning.
void validate_case(const NetworkCase& nc);

// Canonical case text; parse(serialize(nc)) reproduces nc field-by-field.
std::string serialize_case(const NetworkCase& nc);

// Standard pi-model nodal admittance matrix in pu, bus shunts included.
Eigen::MatrixXcd admittance_matrix(const NetworkCase& nc);

}  // namespace gppopf
