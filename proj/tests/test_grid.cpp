#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <filesystem>
#include <random>

#include "capflow/csv_io.hpp"
#include "capflow/grid.hpp"
#include "capflow/spectral.hpp"

using namespace capflow;

namespace {

Grid periodic_grid(int n) { return Grid(0.0, 2.0 * M_PI, n, GridMode::periodic); }

GridFn random_trig(const Grid& g, unsigned seed, double amp = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
  std::array<double, 8> phases{};
  for (auto& p : phases) p = ph(rng);
  return GridFn::sample(g, [&](double x) {
    double s = 0.0;
    for (int k = 1; k <= 8; ++k) s += std::cos(k * x + phases[k - 1]) / (k * k);
    return amp * s;
  });
}

double max_diff(const GridFn& a, const GridFn& b) {
  double m = 0.0;
  for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

}  // namespace

TEST_CASE("grid invariants") {
  CHECK_THROWS_WITH_AS(Grid(1.0, 0.0, 64, GridMode::line), doctest::Contains("grid-too-coarse"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(Grid(0.0, 1.0, 4, GridMode::line), doctest::Contains("grid-too-coarse"),
                       std::invalid_argument);
  CHECK_THROWS_AS(Grid(0.0, 1.0, 9, GridMode::periodic), std::invalid_argument);
  const Grid g(-2.0, 2.0, 16, GridMode::line);
  CHECK(g.dx() == doctest::Approx(0.25));
  CHECK(g.node(0) == -2.0);
  CHECK(g.node(15) == doctest::Approx(1.75));
}

TEST_CASE("physical parameters must be positive") {
  CHECK_THROWS_AS(PhysParams(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PhysParams(1.0, 0.0), std::invalid_argument);
  const PhysParams p(0.5, 2.0);
  CHECK(p.mu == 0.5);
  CHECK(p.sigma == 2.0);
}

TEST_CASE("grid fn construction and support check") {
  const Grid g(-10.0, 10.0, 64, GridMode::line);
  CHECK_THROWS_AS(GridFn(g, std::vector<double>(63, 0.0)), std::invalid_argument);
  std::vector<double> bad(64, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(GridFn(g, bad), std::invalid_argument);

  GridFn compact = GridFn::sample(g, [](double x) { return std::exp(-x * x); });
  CHECK(compact.support_violation() < kSupportTol);
  GridFn wide = GridFn::sample(g, [](double x) { return std::cos(0.1 * x); });
  CHECK(wide.support_violation() > 0.1);
}

TEST_CASE("derivative: constants, spectral modes, analytic oracle") {
  const Grid gp = periodic_grid(256);
  GridFn c = GridFn::sample(gp, [](double) { return 3.7; });
  GridFn dc = derivative(c, 1);
  for (int j = 0; j < dc.size(); ++j) CHECK(dc[j] == 0.0);

  GridFn s = GridFn::sample(gp, [](double x) { return std::sin(x); });
  GridFn ds = derivative(s, 1);
  GridFn want = GridFn::sample(gp, [](double x) { return std::cos(x); });
  CHECK(max_diff(ds, want) <= 1e-10);

  const Grid gl(-20.0, 20.0, 1024, GridMode::line);
  GridFn u = GridFn::sample(gl, [](double x) { return std::exp(-x * x); });
  GridFn du = derivative(u, 1);
  GridFn du_want = GridFn::sample(gl, [](double x) { return -2.0 * x * std::exp(-x * x); });
  CHECK(max_diff(du, du_want) <= 1e-8);

  CHECK_THROWS_AS(derivative(u, 3), std::invalid_argument);
}

TEST_CASE("derivative: line stencils reproduce polynomials") {
  const Grid gl(-1.0, 1.0, 32, GridMode::line);
  GridFn p = GridFn::sample(gl, [](double x) { return 1.0 + x * (2.0 + x * (3.0 + x * 4.0)); });
  GridFn dp = derivative(p, 1);
  GridFn ddp = derivative(p, 2);
  for (int j = 0; j < gl.n; ++j) {
    const double x = gl.node(j);
    CHECK(dp[j] == doctest::Approx(2.0 + 6.0 * x + 12.0 * x * x).epsilon(1e-11));
    CHECK(ddp[j] == doctest::Approx(6.0 + 24.0 * x).epsilon(1e-11));
  }
}

TEST_CASE("derivative commutes with reflection bit-exactly on a symmetric line grid") {
  const int n = 128;
  const double dx = 0.05;
  const Grid g(-(n - 1) * dx / 2.0, -(n - 1) * dx / 2.0 + n * dx, n, GridMode::line);
  GridFn seedfn = random_trig(periodic_grid(n), 3);
  GridFn ul(g, seedfn.values());
  std::vector<double> mirrored(n);
  for (int j = 0; j < n; ++j) mirrored[j] = ul[n - 1 - j];
  GridFn um(g, mirrored);
  for (int order : {1, 2}) {
    GridFn d = derivative(ul, order);
    GridFn dm = derivative(um, order);
    const double sgn = order == 1 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) CHECK(dm[j] == sgn * d[n - 1 - j]);
  }
}

TEST_CASE("hilbert transform multipliers") {
  const Grid g = periodic_grid(128);
  for (int k : {1, 3, 7}) {
    GridFn c = GridFn::sample(g, [k](double x) { return std::cos(k * x); });
    GridFn s = GridFn::sample(g, [k](double x) { return std::sin(k * x); });
    CHECK(max_diff(hilbert(c), s) <= 1e-12);
    CHECK(max_diff(hilbert(s), -c) <= 1e-12);
  }
  GridFn u = random_trig(g, 11);
  const double mean = integrate(u) / g.span();
  GridFn hh = hilbert(hilbert(u));
  GridFn want = map(u, [mean](double x) { return -(x - mean); });
  CHECK(max_diff(hh, want) <= 1e-12);

  const Grid gl(-1.0, 1.0, 64, GridMode::line);
  CHECK_THROWS_WITH_AS(hilbert(GridFn::zero(gl)), doctest::Contains("periodic-only"),
                       std::invalid_argument);
}

TEST_CASE("half laplacian") {
  const Grid g = periodic_grid(128);
  for (int k : {1, 4}) {
    GridFn c = GridFn::sample(g, [k](double x) { return std::cos(k * x); });
    GridFn want = GridFn::sample(g, [k](double x) { return k * std::cos(k * x); });
    CHECK(max_diff(half_laplacian(c), want) <= 1e-12);
  }
  GridFn c = GridFn::sample(g, [](double) { return 2.0; });
  CHECK(max_diff(half_laplacian(c), GridFn::zero(g)) <= 1e-14);

  GridFn u = random_trig(g, 5);
  CHECK(max_diff(half_laplacian(u), hilbert(derivative(u, 1))) <= 1e-12);
}

TEST_CASE("interpolation") {
  const Grid gl(-2.0, 2.0, 64, GridMode::line);
  GridFn cubic = GridFn::sample(gl, [](double x) { return x * (1.0 + x * (2.0 - x)); });
  for (double x : {-1.3, -0.1234, 0.77, 1.5}) {
    CHECK(interpolate(cubic, x) == doctest::Approx(x * (1.0 + x * (2.0 - x))).epsilon(1e-12));
  }
  CHECK(interpolate(cubic, gl.node(17)) == cubic[17]);
  CHECK_THROWS_WITH_AS(interpolate(cubic, 2.5), doctest::Contains("out-of-domain"),
                       std::invalid_argument);

  // fourth-order convergence against an analytic value
  double err_coarse = 0.0, err_fine = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const int n = pass == 0 ? 128 : 256;
    const Grid g(-8.0, 8.0, n, GridMode::line);
    GridFn u = GridFn::sample(g, [](double x) { return std::exp(-x * x); });
    const double x = 0.5 + 0.4 * g.dx();
    const double err = std::abs(interpolate(u, x) - std::exp(-x * x));
    (pass == 0 ? err_coarse : err_fine) = err;
  }
  CHECK(err_fine <= err_coarse / 8.0);  // ~2^4 with slack
  CHECK(err_coarse <= 1e-3);

  const Grid gp = periodic_grid(64);
  GridFn s = GridFn::sample(gp, [](double x) { return std::sin(x); });
  CHECK(interpolate(s, 10.0 + 2.0 * M_PI) == doctest::Approx(interpolate(s, 10.0)).epsilon(1e-13));
}

TEST_CASE("norms and the Sobolev proxy") {
  const Grid g = periodic_grid(256);
  const Norms z = norms(GridFn::zero(g));
  CHECK(z.l2 == 0.0);
  CHECK(z.linf == 0.0);
  CHECK(hs_proxy(GridFn::zero(g), 1.5) == 0.0);

  GridFn c = GridFn::sample(g, [](double x) { return std::cos(x); });
  CHECK(norms(c).l2 * norms(c).l2 == doctest::Approx(M_PI).epsilon(1e-12));

  GridFn u = random_trig(g, 7);
  const double l22 = norms(u).l2 * norms(u).l2;
  CHECK(hs_proxy(u, 0.0) == doctest::Approx(l22).epsilon(1e-10));
  CHECK(hs_proxy(u, 0.5) > hs_proxy(u, 0.0));
  CHECK(hs_proxy(u, 2.0) > hs_proxy(u, 0.5));

  // line mode: Parseval consistency for a compactly supported profile
  const Grid gl(-16.0, 16.0, 512, GridMode::line);
  GridFn b = GridFn::sample(gl, [](double x) { return std::exp(-x * x); });
  CHECK(hs_proxy(b, 0.0) == doctest::Approx(norms(b).l2 * norms(b).l2).epsilon(1e-8));
  CHECK(hs_proxy(b, 1.75) > hs_proxy(b, 0.0));
}

TEST_CASE("linearity of the spectral operators") {
  const Grid g = periodic_grid(128);
  GridFn u = random_trig(g, 21), v = random_trig(g, 22);
  const double a = 1.7, b = -0.4;
  GridFn lin = zip(u, v, [&](double x, double y) { return a * x + b * y; });
  auto check_linear = [&](auto&& op) {
    GridFn lhs = op(lin);
    GridFn ou = op(u), ov = op(v);
    GridFn rhs = zip(ou, ov, [&](double x, double y) { return a * x + b * y; });
    CHECK(max_diff(lhs, rhs) <= 1e-12);
  };
  check_linear([](const GridFn& w) { return derivative(w, 1); });
  check_linear([](const GridFn& w) { return hilbert(w); });
  check_linear([](const GridFn& w) { return half_laplacian(w); });
}

TEST_CASE("hilbert commutes with whole-node translation") {
  const Grid g = periodic_grid(128);
  GridFn u = random_trig(g, 31);
  const int c = 17;
  std::vector<double> sh(g.n);
  for (int j = 0; j < g.n; ++j) sh[j] = u[(j - c + g.n) % g.n];
  GridFn hu = hilbert(u);
  GridFn hs = hilbert(GridFn(g, sh));
  double worst = 0.0;
  for (int j = 0; j < g.n; ++j) worst = std::max(worst, std::abs(hs[j] - hu[(j - c + g.n) % g.n]));
  CHECK(worst <= 1e-14);
}

TEST_CASE("csv round trip is bit exact") {
  const Grid g(-3.0, 5.0, 32, GridMode::line);
  GridFn u = GridFn::sample(g, [](double x) { return std::sin(3.0 * x) / 7.0 + 1e-17 * x; });
  const std::string path =
      (std::filesystem::temp_directory_path() / "capflow_roundtrip.csv").string();
  write_grid_fn_csv(u, path);
  GridFn back = read_grid_fn_csv(path, GridMode::line);
  REQUIRE(back.grid().n == g.n);
  CHECK(back.grid().xmin == doctest::Approx(g.xmin).epsilon(1e-15));
  for (int j = 0; j < g.n; ++j) CHECK(back[j] == u[j]);
  std::filesystem::remove(path);
}

TEST_CASE("pairwise summation is deterministic and accurate") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> x(10007);
  for (auto& v : x) v = d(rng);
  const double s1 = pairwise_sum(x);
  const double s2 = pairwise_sum(x);
  CHECK(s1 == s2);
  long double ref = 0.0L;
  for (double v : x) ref += v;
  CHECK(std::abs(s1 - double(ref)) <= 1e-12);
}
