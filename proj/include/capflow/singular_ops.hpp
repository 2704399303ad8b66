#pragma once

#include <vector>

#include "capflow/grid.hpp"

namespace capflow {

/// Order of a multilinear principal-value operator: n difference-quotient
/// numerator factors, m quadratic denominator factors.
struct BSpec {
  int n = 0;
  int m = 0;
};

/// The singular integral operator
///
///   B_{n,m}(a_1..a_m)[b_1..b_n, h](xi)
///     = PV int h(xi-eta)/eta * prod_i (d_eta b_i / eta)
///                            / prod_i [1 + (d_eta a_i / eta)^2] d_eta,
///
/// d_eta u = u(xi) - u(xi-eta), discretized on the alternate-point lattice
/// eta = l*dx, l odd, weights 2*dx (composite midpoint with the singular cell
/// omitted; the PV cancels in +/- pairs). Line grids truncate |eta| at the
/// span with zero extension; periodic grids resum the horizontal images of
/// the singular factor, 1/eta -> (pi/P)cot(pi*eta/P), and keep half weight at
/// the antipode. Symmetric in the a and b argument lists (bit-exact: the
/// lists are evaluated in a canonical order) and linear in h.
GridFn apply_B(const BSpec& spec, const std::vector<GridFn>& a, const std::vector<GridFn>& b,
               const GridFn& h);

/// Diagonal operator B^0_{n,m}(f)[h]: every a and b slot filled with f.
GridFn apply_B0(const GridFn& f, const BSpec& spec, const GridFn& h);

/// Directional derivative of f -> apply_B0(f, spec, h) in direction g:
///   n * B_{n,m}(f..)[g, f.., h]  -  2m * B_{n+2,m+1}(f..)[g, f.., h].
GridFn apply_dB0(const GridFn& f, const BSpec& spec, const GridFn& g, const GridFn& h);

/// Instrumented benchmark entry point for the kernel sweep.
struct BenchResult {
  int n_nodes = 0;
  int threads = 0;
  double seconds = 0.0;        // best-of-reps wall time of one apply
  double nodes_per_sec = 0.0;  // output-node throughput
};
BenchResult bench_apply_B0(const BSpec& spec, int n_nodes, int reps);

constexpr int kMaxBOrder = 8;

}  // namespace capflow
