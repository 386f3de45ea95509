#include "gppopf/matpower.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace gppopf {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct RawTables {
  double base_mva = 0.0;
  bool have_base = false;
  std::vector<std::vector<double>> bus, gen, branch, gencost;
};

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

// Reads "mpc.<table> = [ rows... ];" bodies and baseMVA assignments.
// Comments (%) and MATLAB line continuations are stripped.
RawTables read_tables(std::istream& in) {
  RawTables raw;
  std::string line;
  int line_no = 0;
  std::vector<std::vector<double>>* active = nullptr;
  std::string active_name;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('%'); pos != std::string::npos) line.erase(pos);
    // trim
    auto is_space = [](unsigned char c) { return std::isspace(c); };
    while (!line.empty() && is_space(line.back())) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && is_space(line[start])) ++start;
    line.erase(0, start);
    if (line.empty()) continue;

    if (!active) {
      if (line.rfind("function", 0) == 0 || line.rfind("mpc.version", 0) == 0)
        continue;
      static const std::string kBase = "mpc.baseMVA";
      if (line.rfind(kBase, 0) == 0) {
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "malformed baseMVA assignment");
        std::string rhs = line.substr(eq + 1);
        if (auto sc = rhs.find(';'); sc != std::string::npos) rhs.erase(sc);
        try {
          raw.base_mva = std::stod(rhs);
        } catch (const std::exception&) {
          fail(line_no, "cannot parse baseMVA value '" + rhs + "'");
        }
        raw.have_base = true;
        continue;
      }
      const std::pair<const char*, std::vector<std::vector<double>>*> tables[] = {
          {"bus", &raw.bus}, {"gen", &raw.gen},
          {"branch", &raw.branch}, {"gencost", &raw.gencost}};
      std::string rest;
      for (const auto& [name, tab] : tables) {
        std::string key = std::string("mpc.") + name;
        if (line.rfind(key, 0) == 0 &&
            (line.size() == key.size() || !std::isalnum((unsigned char)line[key.size()]))) {
          auto open = line.find('[');
          if (open == std::string::npos)
            fail(line_no, "expected '[' opening table " + key);
          active = tab;
          active_name = name;
          rest = line.substr(open + 1);
          break;
        }
      }
      if (!active || rest.empty()) continue;
      line = rest;  // fall through: rows may start on the opening line
    }

    // inside a table: rows are whitespace-separated numbers, ';' separated
    bool closing = line.find(']') != std::string::npos;
    if (auto br = line.find(']'); br != std::string::npos) line.erase(br);
    for (std::size_t from = 0; from < line.size() || from == 0;) {
      auto semi = line.find(';', from);
      std::string chunk = line.substr(from, semi == std::string::npos
                                                ? std::string::npos
                                                : semi - from);
      std::istringstream row_in(chunk);
      std::vector<double> row;
      std::string tok;
      while (row_in >> tok) {
        try {
          std::size_t used = 0;
          double v = std::stod(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
          row.push_back(v);
        } catch (const std::exception&) {
          fail(line_no, "cannot parse number '" + tok + "' in mpc." + active_name);
        }
      }
      if (!row.empty()) active->push_back(std::move(row));
      if (semi == std::string::npos) break;
      from = semi + 1;
    }
    if (closing) active = nullptr;
  }
  if (active) throw ParseError("unterminated table mpc." + active_name);
  return raw;
}

double col(const std::vector<double>& row, std::size_t idx, double fallback) {
  return idx < row.size() ? row[idx] : fallback;
}

}  // namespace

int NetworkCase::bus_index(int bus_id) const {
  for (std::size_t i = 0; i < buses.size(); ++i)
    if (buses[i].id == bus_id) return static_cast<int>(i);
  return -1;
}

int NetworkCase::slack_index() const {
  for (std::size_t i = 0; i < buses.size(); ++i)
    if (buses[i].bus_type == BusType::Slack) return static_cast<int>(i);
  return -1;
}

double NetworkCase::total_pd() const {
  double s = 0.0;
  for (const auto& b : buses) s += b.pd;
  return s;
}

std::vector<int> NetworkCase::load_bus_ids() const {
  std::vector<int> ids;
  for (const auto& b : buses)
    if (b.pd != 0.0 || b.qd != 0.0) ids.push_back(b.id);
  return ids;
}

NetworkCase parse_case(std::istream& text, const std::string& name) {
  RawTables raw = read_tables(text);
  if (!raw.have_base) throw ParseError("missing mpc.baseMVA");
  if (raw.bus.empty()) throw ParseError("missing or empty mpc.bus table");
  if (raw.gen.empty()) throw ParseError("missing or empty mpc.gen table");
  if (raw.branch.empty()) throw ParseError("missing or empty mpc.branch table");
  if (raw.gencost.empty()) throw ParseError("missing or empty mpc.gencost table");

  NetworkCase nc;
  nc.name = name;
  nc.base_mva = raw.base_mva;

  for (std::size_t i = 0; i < raw.bus.size(); ++i) {
    const auto& r = raw.bus[i];
    if (r.size() < 13)
      throw ParseError("bus row " + std::to_string(i + 1) + ": expected 13 columns, got " +
                       std::to_string(r.size()));
    Bus b;
    b.id = static_cast<int>(r[0]);
    switch (static_cast<int>(r[1])) {
      case 1: b.bus_type = BusType::PQ; break;
      case 2: b.bus_type = BusType::PV; break;
      case 3: b.bus_type = BusType::Slack; break;
      default:
        throw ParseError("bus row " + std::to_string(i + 1) + ": unsupported bus type " +
                         std::to_string(static_cast<int>(r[1])));
    }
    b.pd = r[2];
    b.qd = r[3];
    b.gs = r[4];
    b.bs = r[5];
    b.v0 = r[7];
    b.theta0 = r[8] * kDegToRad;
    b.vmax = r[11];
    b.vmin = r[12];
    nc.buses.push_back(b);
  }

  for (std::size_t i = 0; i < raw.gen.size(); ++i) {
    const auto& r = raw.gen[i];
    if (r.size() < 10)
      throw ParseError("gen row " + std::to_string(i + 1) + ": expected >=10 columns, got " +
                       std::to_string(r.size()));
    Generator g;
    g.bus = static_cast<int>(r[0]);
    g.pg0 = r[1];
    g.qg0 = r[2];
    g.qmax = r[3];
    g.qmin = r[4];
    g.vg = r[5];
    g.status = r[7] != 0.0;
    g.pmax = r[8];
    g.pmin = r[9];
    nc.generators.push_back(g);
  }

  for (std::size_t i = 0; i < raw.branch.size(); ++i) {
    const auto& r = raw.branch[i];
    if (r.size() < 5)
      throw ParseError("branch row " + std::to_string(i + 1) + ": expected >=5 columns, got " +
                       std::to_string(r.size()));
    if (col(r, 10, 1.0) == 0.0) continue;  // out of service
    Branch br;
    br.from = static_cast<int>(r[0]);
    br.to = static_cast<int>(r[1]);
    br.r = r[2];
    br.x = r[3];
    br.b = r[4];
    br.rate_a = col(r, 5, 0.0);
    double ratio = col(r, 8, 0.0);
    br.tap = ratio == 0.0 ? 1.0 : ratio;
    br.shift = col(r, 9, 0.0) * kDegToRad;
    nc.branches.push_back(br);
  }

  for (std::size_t i = 0; i < raw.gencost.size(); ++i) {
    const auto& r = raw.gencost[i];
    if (r.size() < 4)
      throw ParseError("gencost row " + std::to_string(i + 1) + ": too few columns");
    int model = static_cast<int>(r[0]);
    if (model == 1)
      throw ParseError("gencost row " + std::to_string(i + 1) +
                       ": piecewise-linear cost models are not supported");
    if (model != 2)
      throw ParseError("gencost row " + std::to_string(i + 1) + ": unknown cost model " +
                       std::to_string(model));
    int ncoef = static_cast<int>(r[3]);
    if (ncoef < 1 || ncoef > 3)
      throw ParseError("gencost row " + std::to_string(i + 1) + ": polynomial degree " +
                       std::to_string(ncoef - 1) + " not supported (max 2)");
    if (r.size() < 4 + static_cast<std::size_t>(ncoef))
      throw ParseError("gencost row " + std::to_string(i + 1) + ": missing coefficients");
    GenCost c;
    // coefficients are highest order first
    std::vector<double> coef(r.begin() + 4, r.begin() + 4 + ncoef);
    if (ncoef == 3) {
      c.c2 = coef[0];
      c.c1 = coef[1];
      c.c0 = coef[2];
    } else if (ncoef == 2) {
      c.c1 = coef[0];
      c.c0 = coef[1];
    } else {
      c.c0 = coef[0];
    }
    nc.costs.push_back(c);
  }

  validate_case(nc);
  return nc;
}

NetworkCase parse_case_string(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  return parse_case(in, name);
}

NetworkCase parse_case_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open case file: " + path);
  std::string name = path;
  if (auto pos = name.find_last_of("/\\"); pos != std::string::npos) name.erase(0, pos + 1);
  if (auto pos = name.rfind(".m"); pos != std::string::npos && pos == name.size() - 2)
    name.erase(pos);
  return parse_case(in, name);
}

void validate_case(const NetworkCase& nc) {
  if (!(nc.base_mva > 0.0)) throw ParseError("baseMVA must be positive");
  int slack_count = 0;
  for (std::size_t i = 0; i < nc.buses.size(); ++i) {
    const Bus& b = nc.buses[i];
    if (b.bus_type == BusType::Slack) ++slack_count;
    if (!(b.vmin > 0.0))
      throw ParseError("bus " + std::to_string(b.id) + ": vmin must be positive");
    if (!(b.vmin <= b.v0 && b.v0 <= b.vmax))
      throw ParseError("bus " + std::to_string(b.id) + ": v0 outside [vmin, vmax]");
    for (std::size_t j = i + 1; j < nc.buses.size(); ++j)
      if (nc.buses[j].id == b.id)
        throw ParseError("duplicate bus id " + std::to_string(b.id));
  }
  if (slack_count != 1)
    throw ParseError("expected exactly one slack bus, found " + std::to_string(slack_count));

  if (nc.costs.size() != nc.generators.size())
    throw ParseError("gencost has " + std::to_string(nc.costs.size()) + " rows for " +
                     std::to_string(nc.generators.size()) + " generators");
  for (std::size_t i = 0; i < nc.generators.size(); ++i) {
    const Generator& g = nc.generators[i];
    if (nc.bus_index(g.bus) < 0)
      throw ParseError("gen row " + std::to_string(i + 1) + ": references undefined bus " +
                       std::to_string(g.bus));
    if (g.pmin > g.pmax)
      throw ParseError("gen row " + std::to_string(i + 1) + ": pmin > pmax");
    if (g.qmin > g.qmax)
      throw ParseError("gen row " + std::to_string(i + 1) + ": qmin > qmax");
    if (nc.costs[i].c2 < 0.0)
      throw ParseError("gencost row " + std::to_string(i + 1) +
                       ": negative quadratic coefficient");
  }
  for (std::size_t i = 0; i < nc.branches.size(); ++i) {
    const Branch& br = nc.branches[i];
    if (nc.bus_index(br.from) < 0)
      throw ParseError("branch row " + std::to_string(i + 1) + ": references undefined bus " +
                       std::to_string(br.from));
    if (nc.bus_index(br.to) < 0)
      throw ParseError("branch row " + std::to_string(i + 1) + ": references undefined bus " +
                       std::to_string(br.to));
    if (br.r == 0.0 && br.x == 0.0)
      throw ParseError("branch row " + std::to_string(i + 1) + ": zero series impedance");
    if (!(br.tap > 0.0))
      throw ParseError("branch row " + std::to_string(i + 1) + ": tap must be positive");
  }
}

std::string serialize_case(const NetworkCase& nc) {
  std::ostringstream out;
  out.precision(17);
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  // Angles are stored in radians but the format carries degrees. Pick a
  // degree value whose reparse (deg * pi/180) reproduces the stored radians
  // bit-for-bit so that parse(serialize(nc)) == nc field-by-field.
  auto deg = [&num](double rad) {
    const double inf = std::numeric_limits<double>::infinity();
    double d = rad / kDegToRad;
    double up = std::nextafter(d, inf);
    double dn = std::nextafter(d, -inf);
    for (double cand : {d, up, dn, std::nextafter(up, inf), std::nextafter(dn, -inf)}) {
      if (cand * kDegToRad == rad) return num(cand);
    }
    return num(d);
  };
  out << "function mpc = " << (nc.name.empty() ? "case_unnamed" : nc.name) << "\n";
  out << "mpc.version = '2';\n";
  out << "mpc.baseMVA = " << num(nc.base_mva) << ";\n";
  out << "mpc.bus = [\n";
  for (const auto& b : nc.buses) {
    int type = b.bus_type == BusType::Slack ? 3 : (b.bus_type == BusType::PV ? 2 : 1);
    out << "\t" << b.id << "\t" << type << "\t" << num(b.pd) << "\t" << num(b.qd) << "\t"
        << num(b.gs) << "\t" << num(b.bs) << "\t1\t" << num(b.v0) << "\t"
        << deg(b.theta0) << "\t0\t1\t" << num(b.vmax) << "\t" << num(b.vmin) << ";\n";
  }
  out << "];\n";
  out << "mpc.gen = [\n";
  for (const auto& g : nc.generators) {
    out << "\t" << g.bus << "\t" << num(g.pg0) << "\t" << num(g.qg0) << "\t" << num(g.qmax)
        << "\t" << num(g.qmin) << "\t" << num(g.vg) << "\t" << num(nc.base_mva) << "\t"
        << (g.status ? 1 : 0) << "\t" << num(g.pmax) << "\t" << num(g.pmin) << ";\n";
  }
  out << "];\n";
  out << "mpc.branch = [\n";
  for (const auto& br : nc.branches) {
    out << "\t" << br.from << "\t" << br.to << "\t" << num(br.r) << "\t" << num(br.x) << "\t"
        << num(br.b) << "\t" << num(br.rate_a) << "\t0\t0\t"
        << (br.tap == 1.0 ? std::string("0") : num(br.tap)) << "\t" << deg(br.shift)
        << "\t1\t-360\t360;\n";
  }
  out << "];\n";
  out << "mpc.gencost = [\n";
  for (const auto& c : nc.costs) {
    out << "\t2\t0\t0\t3\t" << num(c.c2) << "\t" << num(c.c1) << "\t" << num(c.c0) << ";\n";
  }
  out << "];\n";
  return out.str();
}

Eigen::MatrixXcd admittance_matrix(const NetworkCase& nc) {
  const int n = static_cast<int>(nc.buses.size());
  Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& br : nc.branches) {
    int f = nc.bus_index(br.from);
    int t = nc.bus_index(br.to);
    std::complex<double> ys = 1.0 / std::complex<double>(br.r, br.x);
    std::complex<double> charge(0.0, br.b / 2.0);
    std::complex<double> tc = std::polar(br.tap, br.shift);
    Y(f, f) += (ys + charge) / (br.tap * br.tap);
    Y(t, t) += ys + charge;
    Y(f, t) += -ys / std::conj(tc);
    Y(t, f) += -ys / tc;
  }
  for (int i = 0; i < n; ++i)
    Y(i, i) += std::complex<double>(nc.buses[i].gs, nc.buses[i].bs) / nc.base_mva;
  return Y;
}

}  // namespace gppopf
