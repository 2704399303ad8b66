#include "capflow/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace capflow {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("bad-config: cannot write " + path);
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

}  // namespace

void write_grid_fn_csv(const GridFn& u, const std::string& path, const std::string& value_header) {
  std::ofstream out = open_out(path);
  out << "xi," << value_header << "\n";
  for (int j = 0; j < u.size(); ++j)
    out << format_double(u.grid().node(j)) << ',' << format_double(u[j]) << "\n";
}

GridFn read_grid_fn_csv(const std::string& path, GridMode mode) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("bad-config: cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("bad-config: empty csv " + path);
  const auto head = split(line, ',');
  if (head.size() != 2 || head[0] != "xi" || (head[1] != "value" && head[1] != "f"))
    throw std::runtime_error("bad-config: expected header 'xi,value' or 'xi,f' in " + path);
  std::vector<double> xi, val;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 2) throw std::runtime_error("bad-config: malformed row in " + path);
    xi.push_back(std::stod(cols[0]));
    val.push_back(std::stod(cols[1]));
  }
  const int n = static_cast<int>(xi.size());
  if (n < 8) throw std::runtime_error("grid-too-coarse: csv has fewer than 8 nodes");
  const double dx = xi[1] - xi[0];
  for (int j = 1; j < n; ++j)
    if (std::abs(xi[j] - xi[0] - j * dx) > 1e-9 * std::abs(dx) * n)
      throw std::runtime_error("bad-config: non-uniform nodes in " + path);
  Grid g(xi[0], xi[0] + n * dx, n, mode);
  return GridFn(g, std::move(val));
}

void write_geometry_csv(const GridFn& f, const std::string& path) {
  const GeometryBundle geo = geometry(f);
  std::ofstream out = open_out(path);
  out << "xi,fprime,omega,phi1,phi2,kappa,nu1,nu2\n";
  for (int j = 0; j < f.size(); ++j) {
    out << format_double(f.grid().node(j)) << ',' << format_double(geo.fprime[j]) << ','
        << format_double(geo.omega[j]) << ',' << format_double(geo.phi1[j]) << ','
        << format_double(geo.phi2[j]) << ',' << format_double(geo.kappa[j]) << ','
        << format_double(geo.nu1[j]) << ',' << format_double(geo.nu2[j]) << "\n";
  }
}

void write_diagnostics_csv(const std::vector<Diagnostics>& series, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "t,mass,energy,max_abs_f,hs_proxy,dt,alpha_min\n";
  for (const Diagnostics& d : series) {
    out << format_double(d.time) << ',' << format_double(d.mass) << ','
        << format_double(d.energy) << ',' << format_double(d.max_abs_f) << ','
        << format_double(d.hs_proxy) << ',' << format_double(d.dt_used) << ','
        << format_double(d.alpha_min) << "\n";
  }
}

void write_field_slice_csv(const std::vector<FieldSliceRow>& rows, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "x1,x2,v1,v2,q\n";
  for (const FieldSliceRow& r : rows) {
    out << format_double(r.x1) << ',' << format_double(r.x2) << ',' << format_double(r.v1)
        << ',' << format_double(r.v2) << ',' << format_double(r.q) << "\n";
  }
}

}  // namespace capflow
