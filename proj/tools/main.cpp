// capflow: boundary-integral laboratory for capillarity-driven two-phase
// Stokes flow with a graph interface.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "capflow/config.hpp"
#include "capflow/csv_io.hpp"
#include "capflow/evolution.hpp"
#include "capflow/field.hpp"
#include "capflow/singular_ops.hpp"
#include "capflow/spectral.hpp"
#include "capflow/stepper.hpp"
#include "capflow/threading.hpp"
#include "capflow/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int cmd_simulate(const std::string& config_path) {
  const auto t0 = std::chrono::steady_clock::now();
  capflow::Config cfg = capflow::Config::parse_file(config_path);
  capflow::LoadedProblem prob = capflow::load_problem(cfg);
  fs::create_directories(prob.output_dir);

  const capflow::RunResult rr = capflow::run(prob.sim, prob.f0);

  std::vector<std::string> outputs;
  for (std::size_t i = 0; i < rr.snapshots.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%06zu.csv", i);
    const std::string path = (fs::path(prob.output_dir) / name).string();
    capflow::write_grid_fn_csv(rr.snapshots[i].f, path, "f");
    outputs.push_back(path);
  }
  const std::string diag_path = (fs::path(prob.output_dir) / "diagnostics.csv").string();
  capflow::write_diagnostics_csv(rr.series, diag_path);
  outputs.push_back(diag_path);

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json summary;
  summary["status"] =
      rr.status == capflow::RunStatus::completed ? "completed" : "blow-up-suspected";
  summary["steps"] = rr.steps;
  summary["wall_time_seconds"] = wall;
  summary["manifest"] = {{"artifact_version", kVersion},
                         {"input_hash", fnv1a_hex(cfg.text())},
                         {"config", cfg.entries()},
                         {"outputs", outputs},
                         {"threads", capflow::thread_count()}};
  const std::string summary_path = (fs::path(prob.output_dir) / "summary.json").string();
  std::ofstream(summary_path) << summary.dump(2) << "\n";

  std::printf("status: %s  steps: %ld  wall: %.2fs  outputs: %s\n",
              summary["status"].get<std::string>().c_str(), rr.steps, wall,
              prob.output_dir.c_str());
  return rr.status == capflow::RunStatus::completed ? 0 : 2;
}

int cmd_validate(const std::string& level) {
  const auto lv =
      level == "quick" ? capflow::ValidateLevel::quick : capflow::ValidateLevel::full;
  const auto results = capflow::run_acceptance(lv);
  bool all = true;
  for (const auto& r : results) {
    std::puts(capflow::format_criterion(r).c_str());
    all = all && r.pass;
  }
  std::printf("%zu criteria, %s\n", results.size(), all ? "all PASS" : "FAILURES present");
  return all ? 0 : 1;
}

int cmd_bench(const std::vector<int>& sizes, const std::vector<int>& threads,
              const std::string& out_path) {
  if (sizes.empty()) {
    std::fprintf(stderr, "bench: empty size list\n");
    return 1;
  }
  const capflow::BSpec spec{3, 2};
  std::string csv = "n,threads,seconds,nodes_per_sec\n";
  std::map<std::pair<int, int>, double> times;
  for (int nt : threads) {
    capflow::set_thread_count(nt);
    for (int n : sizes) {
      const capflow::BenchResult b = capflow::bench_apply_B0(spec, n, 5);
      times[{n, nt}] = b.seconds;
      char row[128];
      std::snprintf(row, sizeof(row), "%d,%d,%s,%s\n", n, nt,
                    capflow::format_double(b.seconds).c_str(),
                    capflow::format_double(b.nodes_per_sec).c_str());
      csv += row;
    }
  }
  capflow::set_thread_count(0);
  std::fputs(csv.c_str(), stdout);
  if (!out_path.empty()) std::ofstream(out_path) << csv;

  bool ok = true;
  // O(N^2) complexity fit on the lowest thread count
  const int nt0 = *std::min_element(threads.begin(), threads.end());
  if (sizes.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n : sizes) {
      const double x = std::log(double(n)), y = std::log(times[{n, nt0}]);
      sx += x; sy += y; sxx += x * x; sxy += y * x;
    }
    const double m = double(sizes.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    std::printf("complexity: log-log slope %.2f (want 2 +/- 0.2)\n", slope);
    if (std::abs(slope - 2.0) > 0.2) ok = false;
  }
  // 4-thread speedup at the largest N >= 4096
  const bool have14 = std::count(threads.begin(), threads.end(), 1) &&
                      std::count(threads.begin(), threads.end(), 4);
  const int nmax = *std::max_element(sizes.begin(), sizes.end());
  if (have14 && nmax >= 4096) {
    const double speedup = times[{nmax, 1}] / times[{nmax, 4}];
    std::printf("speedup at N=%d: %.2fx at 4 threads (want >= 3x; hardware threads: %d)\n",
                nmax, speedup, std::max(1u, std::thread::hardware_concurrency()));
    if (speedup < 3.0) ok = false;
  }
  return ok ? 0 : 1;
}

int cmd_field(const std::string& config_path, const std::string& rect_spec,
              const std::string& out_path) {
  capflow::Config cfg = capflow::Config::parse_file(config_path);
  capflow::LoadedProblem prob = capflow::load_problem(cfg);
  // rect spec: x1min:x1max:n1,x2min:x2max:n2
  double a1, b1, a2, b2;
  int n1, n2;
  if (std::sscanf(rect_spec.c_str(), "%lf:%lf:%d,%lf:%lf:%d", &a1, &b1, &n1, &a2, &b2, &n2) != 6 ||
      n1 < 1 || n2 < 1) {
    std::fprintf(stderr, "field: malformed rect spec '%s'\n", rect_spec.c_str());
    return 1;
  }
  capflow::InterfaceState st{prob.f0, prob.sim.params, 0.0};
  capflow::FieldEvaluator ev(st);
  std::vector<capflow::FieldSliceRow> rows;
  long skipped = 0;
  for (int i = 0; i < n1; ++i) {
    const double x1 = n1 == 1 ? a1 : a1 + (b1 - a1) * i / (n1 - 1);
    for (int j = 0; j < n2; ++j) {
      const double x2 = n2 == 1 ? a2 : a2 + (b2 - a2) * j / (n2 - 1);
      if (ev.distance_to_interface(x1, x2) <= 2.0 * ev.dx()) {
        ++skipped;
        continue;
      }
      const capflow::FieldVQ f = ev.vq_raw(x1, x2);
      rows.push_back({x1, x2, f.v[0], f.v[1], f.q});
    }
  }
  fs::create_directories(fs::path(out_path).parent_path().empty()
                             ? "."
                             : fs::path(out_path).parent_path().string());
  capflow::write_field_slice_csv(rows, out_path);
  std::printf("field: wrote %zu probes to %s (%ld inside the 2*dx exclusion band skipped)\n",
              rows.size(), out_path.c_str(), skipped);
  return 0;
}

int cmd_linearize(int kmax, int n) {
  capflow::Grid g(0.0, 2.0 * M_PI, n, capflow::GridMode::periodic);
  const capflow::PhysParams params(1.0, 1.0);
  capflow::InterfaceState flat{capflow::GridFn::zero(g), params, 0.0};
  std::puts("k,measured_symbol,exact_symbol");
  for (int k = 1; k <= kmax; ++k) {
    capflow::GridFn h = capflow::GridFn::sample(g, [k](double x) { return std::cos(k * x); });
    const capflow::GridFn d = capflow::dpsi(flat, h);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.n; ++j) {
      const double c = std::cos(k * g.node(j));
      num += d[j] * c;
      den += c * c;
    }
    std::printf("%d,%s,%s\n", k, capflow::format_double(num / den).c_str(),
                capflow::format_double(capflow::flat_symbol(params, k)).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary-integral simulator for capillarity-driven two-phase Stokes flow"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads for the O(N^2) kernels (0 = hardware)");

  std::string sim_config;
  auto* sim = app.add_subcommand("simulate", "integrate df/dt = Psi(f) from a config file");
  sim->add_option("config", sim_config, "key=value config file")->required();

  std::string level = "full";
  auto* val = app.add_subcommand("validate", "run the acceptance checks");
  val->add_option("--level", level, "quick|full")->check(CLI::IsMember({"quick", "full"}));

  std::vector<int> sizes{1024, 2048, 4096, 8192};
  std::vector<int> bench_threads{1, 4};
  std::string bench_out;
  auto* ben = app.add_subcommand("bench", "time the apply_B0((3,2)) kernel");
  ben->add_option("--sizes", sizes, "grid sizes")->delimiter(',');
  ben->add_option("--thread-list", bench_threads, "thread counts")->delimiter(',');
  ben->add_option("--out", bench_out, "also write the CSV here");

  std::string field_config, rect, field_out = "field.csv";
  auto* fld = app.add_subcommand("field", "export a velocity/pressure slice");
  fld->add_option("config", field_config, "config file providing the profile")->required();
  fld->add_option("--rect", rect, "x1min:x1max:n1,x2min:x2max:n2")->required();
  fld->add_option("--out", field_out, "output CSV path");

  int kmax = 8, lin_n = 512;
  auto* lin = app.add_subcommand("linearize", "probe dpsi at f = 0 against the exact symbol");
  lin->add_option("--kmax", kmax, "largest wavenumber");
  lin->add_option("--n", lin_n, "periodic grid size");

  CLI11_PARSE(app, argc, argv);
  capflow::set_thread_count(threads);

  try {
    if (*sim) return cmd_simulate(sim_config);
    if (*val) return cmd_validate(level);
    if (*ben) return cmd_bench(sizes, bench_threads, bench_out);
    if (*fld) return cmd_field(field_config, rect, field_out);
    if (*lin) return cmd_linearize(kmax, lin_n);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
