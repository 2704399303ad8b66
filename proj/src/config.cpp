#include "capflow/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "capflow/csv_io.hpp"

namespace capflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void missing(const std::string& key) {
  throw std::runtime_error("bad-config: missing key '" + key + "'");
}

[[noreturn]] void malformed(const std::string& key, const std::string& val) {
  throw std::runtime_error("bad-config: key '" + key + "' has malformed value '" + val + "'");
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("bad-config: cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

Config Config::parse_text(const std::string& text) {
  Config c;
  c.raw_ = text;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad-config: line " + std::to_string(lineno) +
                               " is not key=value: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw std::runtime_error("bad-config: empty key on line " + std::to_string(lineno));
    c.kv_[key] = val;
  }
  return c;
}

std::string Config::get_str(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) missing(key);
  return it->second;
}

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_num(const std::string& key) const {
  const std::string v = get_str(key);
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) malformed(key, v);
    return x;
  } catch (const std::logic_error&) {
    malformed(key, v);
  }
}

double Config::get_num(const std::string& key, double fallback) const {
  return has(key) ? get_num(key) : fallback;
}

long Config::get_int(const std::string& key) const {
  const std::string v = get_str(key);
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) malformed(key, v);
    return x;
  } catch (const std::logic_error&) {
    malformed(key, v);
  }
}

long Config::get_int(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

GridFn build_initial(const Config& cfg, const Grid& grid) {
  const std::string kind = cfg.get_str("init.kind");
  if (kind == "gaussian") {
    const double amp = cfg.get_num("init.amplitude");
    const double width = cfg.get_num("init.width", 1.0);
    const double center = cfg.get_num("init.center", 0.5 * (grid.xmin + grid.xmax));
    if (!(width > 0.0)) throw std::runtime_error("bad-config: key 'init.width' must be positive");
    return GridFn::sample(grid, [&](double x) {
      const double t = (x - center) / width;
      return amp * std::exp(-t * t);
    });
  }
  if (kind == "cosine") {
    const double amp = cfg.get_num("init.amplitude");
    const double k = cfg.get_num("init.k");
    if (grid.mode != GridMode::periodic)
      throw std::runtime_error("bad-config: key 'init.kind' = cosine needs a periodic grid");
    const double k0 = 2.0 * M_PI / grid.span();
    return GridFn::sample(grid, [&](double x) { return amp * std::cos(k * k0 * (x - grid.xmin)); });
  }
  if (kind == "file") {
    const std::string path = cfg.get_str("init.path");
    GridFn loaded = read_grid_fn_csv(path, grid.mode);
    if (!(loaded.grid() == grid))
      throw std::runtime_error("bad-config: key 'init.path' grid differs from grid.*");
    return loaded;
  }
  throw std::runtime_error("bad-config: key 'init.kind' must be gaussian, cosine or file");
}

LoadedProblem load_problem(const Config& cfg) {
  const std::string mode_s = cfg.get_str("grid.mode");
  GridMode mode;
  if (mode_s == "line")
    mode = GridMode::line;
  else if (mode_s == "periodic")
    mode = GridMode::periodic;
  else
    throw std::runtime_error("bad-config: key 'grid.mode' must be line or periodic");

  Grid grid(cfg.get_num("grid.xmin"), cfg.get_num("grid.xmax"),
            static_cast<int>(cfg.get_int("grid.n")), mode);
  PhysParams params(cfg.get_num("params.mu"), cfg.get_num("params.sigma"));

  SimConfig sim;
  sim.grid = grid;
  sim.params = params;
  sim.t_end = cfg.get_num("time.t_end");
  const std::string dts = cfg.get_str("time.dt", "auto");
  if (dts != "auto") sim.dt = cfg.get_num("time.dt");
  const std::string scheme = cfg.get_str("time.scheme", "rk4");
  if (scheme == "rk4")
    sim.scheme = Scheme::rk4;
  else if (scheme == "imex")
    sim.scheme = Scheme::imex;
  else
    throw std::runtime_error("bad-config: key 'time.scheme' must be rk4 or imex");
  sim.snapshot_every = static_cast<int>(cfg.get_int("time.snapshot_every", 10));
  sim.monitor.hs_s = cfg.get_num("monitor.hs_s", 1.75);
  sim.monitor.blowup_factor = cfg.get_num("monitor.blowup_factor", 1e3);

  GridFn f0 = build_initial(cfg, grid);
  if (f0.support_violation() > kSupportTol)
    std::fprintf(stderr,
                 "warning: initial profile violates the line-mode support condition "
                 "(outer-5%% relative magnitude %.2e > %.0e)\n",
                 f0.support_violation(), kSupportTol);

  std::string outdir = cfg.get_str("output.dir");
  if (const char* env = std::getenv("CAPFLOW_OUTPUT_DIR"); env && *env) outdir = env;
  return LoadedProblem{sim, std::move(f0), std::move(outdir)};
}

}  // namespace capflow
