#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "capflow/field.hpp"
#include "capflow/spectral.hpp"
#include "oracles.hpp"

using namespace capflow;

namespace {

InterfaceState bump_state(double amp = 0.3, int n = 2048) {
  Grid g(-20.0, 20.0, n, GridMode::line);
  GridFn f = GridFn::sample(g, [amp](double x) { return amp * std::exp(-x * x); });
  return InterfaceState{std::move(f), PhysParams(1.0, 1.0), 0.0};
}

InterfaceState symmetric_bump_state() {
  const int n = 2048;
  const double dx = 40.0 / n;
  const double xmin = -(n - 1) * dx / 2.0;
  Grid g(xmin, xmin + n * dx, n, GridMode::line);
  GridFn f = GridFn::sample(g, [](double x) { return 0.3 * std::exp(-x * x); });
  return InterfaceState{std::move(f), PhysParams(1.0, 1.0), 0.0};
}

}  // namespace

TEST_CASE("fundamental solutions: closed-form values and parities") {
  const FundSol u1 = fundamental_solutions(1, {1.0, 0.0}, 1.0);
  CHECK(u1.U[0] == doctest::Approx(-1.0 / (4.0 * M_PI)).epsilon(1e-15));
  CHECK(u1.U[1] == 0.0);
  CHECK(u1.P == doctest::Approx(-1.0 / (2.0 * M_PI)).epsilon(1e-15));

  for (int k : {1, 2}) {
    const FundSol a = fundamental_solutions(k, {0.37, -0.81}, 1.5);
    const FundSol b = fundamental_solutions(k, {-0.37, 0.81}, 1.5);
    CHECK(a.P == doctest::Approx(-b.P).epsilon(1e-15));   // P^k is odd
    CHECK(a.U[0] == doctest::Approx(b.U[0]).epsilon(1e-15));  // U^k is even
    CHECK(a.U[1] == doctest::Approx(b.U[1]).epsilon(1e-15));
  }
  CHECK_THROWS_WITH_AS(fundamental_solutions(1, {0.0, 0.0}, 1.0),
                       doctest::Contains("singular-point"), std::invalid_argument);
}

TEST_CASE("fundamental solutions solve the homogeneous Stokes system") {
  const double mu = 1.0, h = 1e-4;
  for (int k : {1, 2}) {
    auto U = [&](double y1, double y2) { return fundamental_solutions(k, {y1, y2}, mu).U; };
    auto P = [&](double y1, double y2) { return fundamental_solutions(k, {y1, y2}, mu).P; };
    const double y1 = 0.7, y2 = -0.3;
    for (int c = 0; c < 2; ++c) {
      const double lap = (U(y1 + h, y2)[c] + U(y1 - h, y2)[c] + U(y1, y2 + h)[c] +
                          U(y1, y2 - h)[c] - 4.0 * U(y1, y2)[c]) /
                         (h * h);
      const double gp = c == 0 ? (P(y1 + h, y2) - P(y1 - h, y2)) / (2.0 * h)
                               : (P(y1, y2 + h) - P(y1, y2 - h)) / (2.0 * h);
      CHECK(std::abs(mu * lap - gp) <= 1e-6);
    }
    const double div = (U(y1 + h, y2)[0] - U(y1 - h, y2)[0]) / (2.0 * h) +
                       (U(y1, y2 + h)[1] - U(y1, y2 - h)[1]) / (2.0 * h);
    CHECK(std::abs(div) <= 1e-6);
  }
}

TEST_CASE("stokeslet matrix layout") {
  const PhysParams params(2.0, 3.0);
  const std::array<double, 2> y{0.4, 1.1};
  const StokesletMatrix m = stokeslet_matrix(y, params);
  for (int k = 1; k <= 2; ++k) {
    const FundSol fs = fundamental_solutions(k, y, params.mu);
    CHECK(m.m[0][k - 1] == -params.sigma * fs.U[0]);
    CHECK(m.m[1][k - 1] == -params.sigma * fs.U[1]);
    CHECK(m.m[2][k - 1] == -params.sigma * fs.P);
  }
}

TEST_CASE("field of the flat interface vanishes") {
  Grid g(-20.0, 20.0, 512, GridMode::line);
  InterfaceState st{GridFn::zero(g), PhysParams(1.0, 1.0), 0.0};
  const FieldVQ f = field_vq(st, {0.3, 1.0, Side::above});
  CHECK(f.v[0] == 0.0);
  CHECK(f.v[1] == 0.0);
  CHECK(f.q == 0.0);
}

TEST_CASE("near-interface guard and side tags") {
  const InterfaceState st = bump_state();
  FieldEvaluator ev(st);
  const double dx = ev.dx();
  CHECK_THROWS_WITH_AS(ev.vq({0.0, 0.3 + 1.5 * dx, Side::above}),
                       doctest::Contains("near-interface"), std::invalid_argument);
  CHECK_NOTHROW(ev.vq({0.0, 0.3 + 2.0001 * dx, Side::above}));
  CHECK_THROWS_WITH_AS(ev.vq({0.0, 2.0, Side::below}), doctest::Contains("side tag"),
                       std::invalid_argument);
  CHECK_THROWS_AS(ev.vq({0.0, 2.0, Side::on}), std::invalid_argument);
}

TEST_CASE("field values match the independent kernel oracle") {
  // oracle: adaptive quadrature of the analytic-profile integrand, with the
  // kernel built by finite-differencing the fundamental solutions
  const InterfaceState st = bump_state();
  const double mu = st.params.mu, sigma = st.params.sigma;
  auto fa = [](double s) { return 0.3 * std::exp(-s * s); };
  auto fpa = [](double s) { return -0.6 * s * std::exp(-s * s); };
  auto g1a = [&](double s) {
    const double d = fpa(s);
    return 1.0 / std::sqrt(1.0 + d * d) - 1.0;
  };
  auto g2a = [&](double s) {
    const double d = fpa(s);
    return d / std::sqrt(1.0 + d * d);
  };
  const double hfd = 1e-5;
  auto kernel_row = [&](int row, double x1, double x2, double s) {
    auto M = [&](double y1, double y2, int r, int c) {
      const FundSol fs = fundamental_solutions(c + 1, {y1, y2}, mu);
      return -sigma * (r < 2 ? fs.U[r] : fs.P);
    };
    const double r1 = x1 - s, r2 = x2 - fa(s);
    double out = 0.0;
    for (int c = 0; c < 2; ++c) {
      const double d1 = (M(r1 + hfd, r2, row, c) - M(r1 - hfd, r2, row, c)) / (2.0 * hfd);
      const double d2 = (M(r1, r2 + hfd, row, c) - M(r1, r2 - hfd, row, c)) / (2.0 * hfd);
      out += (d1 + fpa(s) * d2) * (c == 0 ? g1a(s) : g2a(s));
    }
    return out;
  };
  const FieldPoint x{1.0, 3.0, Side::above};
  const FieldVQ got = field_vq(st, x);
  for (int row = 0; row < 3; ++row) {
    const double want = oracles::integrate_split(
        [&](double s) { return kernel_row(row, x.x1, x.x2, s); }, {-20.0, 0.0, 1.0, 2.0, 20.0},
        1e-12);
    const double have = row < 2 ? got.v[row] : got.q;
    CHECK(std::abs(have - want) / std::abs(want) <= 1e-6);
  }
}

TEST_CASE("the two field representations agree") {
  const InterfaceState st = bump_state();
  FieldEvaluator ev(st);
  for (const FieldPoint x : {FieldPoint{1.0, 3.0, Side::above}, FieldPoint{-2.0, -1.5, Side::below},
                             FieldPoint{0.3, 0.9, Side::above}}) {
    const FieldVQ a = ev.vq(x);
    const FieldVQ b = ev.vq_density_route(x);
    const double scale = std::max({std::abs(a.v[0]), std::abs(a.v[1]), std::abs(a.q), 1e-6});
    CHECK(std::abs(a.v[0] - b.v[0]) / scale <= 1e-8);
    CHECK(std::abs(a.v[1] - b.v[1]) / scale <= 1e-8);
    CHECK(std::abs(a.q - b.q) / scale <= 1e-8);
  }
}

TEST_CASE("parity of the field for an even profile") {
  const InterfaceState st = symmetric_bump_state();
  FieldEvaluator ev(st);
  const FieldVQ on_axis = ev.vq({0.0, 2.0, Side::above});
  CHECK(std::abs(on_axis.v[0]) <= 1e-10);
  for (const double x1 : {0.8, 1.7}) {
    const FieldVQ r = ev.vq({x1, 1.4, Side::above});
    const FieldVQ l = ev.vq({-x1, 1.4, Side::above});
    CHECK(std::abs(r.q - l.q) <= 1e-10);
    CHECK(std::abs(r.v[0] + l.v[0]) <= 1e-10);
    CHECK(std::abs(r.v[1] - l.v[1]) <= 1e-10);
  }
}

TEST_CASE("z operators: trivial values, parity, oracle") {
  const InterfaceState st = bump_state();
  const Grid& g = st.f.grid();
  CHECK(z_eval(st.f, GridFn::zero(g), 2, {0.5, 2.0, Side::above}) == 0.0);

  // flat interface, even density, probe on the axis: Z_0 kernel is odd in r1
  Grid gs = symmetric_bump_state().f.grid();
  GridFn feven = GridFn::zero(gs);
  GridFn phi_even = GridFn::sample(gs, [](double x) { return std::exp(-x * x); });
  CHECK(std::abs(z_eval(feven, phi_even, 0, {0.0, 1.5, Side::above})) <= 1e-14);

  auto fa = [](double s) { return 0.3 * std::exp(-s * s); };
  auto phia = [](double s) { return std::exp(-(s - 0.2) * (s - 0.2)); };
  GridFn phi = GridFn::sample(g, phia);
  for (int k = 0; k <= 3; ++k) {
    const double got = z_eval(st.f, phi, k, {0.6, 1.9, Side::above});
    const double want = oracles::z_oracle(fa, phia, k, 0.6, 1.9, 20.0);
    CHECK(std::abs(got - want) / std::max(std::abs(want), 1e-9) <= 1e-6);
  }
  CHECK_THROWS_AS(z_eval(st.f, phi, 5, {0.6, 1.9, Side::above}), std::invalid_argument);
}

TEST_CASE("one-sided limits of the z operators") {
  const InterfaceState st = bump_state();
  const Grid& g = st.f.grid();
  GridFn phi = GridFn::sample(g, [](double x) { return std::exp(-(x - 0.2) * (x - 0.2)); });

  SUBCASE("flat-interface jump of Z_1 is pi/2 of the density") {
    GridFn f0 = GridFn::zero(g);
    const double xi = g.node(g.n / 2 + 10);
    GridFn b12 = apply_B0(f0, BSpec{1, 2}, phi);
    const double above = z_onesided_predicted(f0, phi, 1, xi, Side::above);
    const double below = z_onesided_predicted(f0, phi, 1, xi, Side::below);
    const int j = g.n / 2 + 10;
    CHECK(above == doctest::Approx(b12[j] + M_PI_2 * phi[j]).epsilon(1e-14));
    CHECK(below == doctest::Approx(b12[j] - M_PI_2 * phi[j]).epsilon(1e-14));
  }

  SUBCASE("side average recovers the principal value") {
    const double xi = g.node(g.n / 2 + 26);
    for (int k = 0; k <= 3; ++k) {
      const double above = z_onesided_predicted(st.f, phi, k, xi, Side::above);
      const double below = z_onesided_predicted(st.f, phi, k, xi, Side::below);
      const GridFn bk = apply_B0(st.f, BSpec{k, 2}, phi);
      CHECK(0.5 * (above + below) ==
            doctest::Approx(bk[g.n / 2 + 26]).epsilon(5e-15));
    }
  }

  SUBCASE("Richardson-extrapolated field limits match the prediction") {
    const int j = g.n / 2 + 26;
    const double xi = g.node(j), fx = st.f[j], d = g.dx();
    for (int k = 0; k <= 3; ++k) {
      for (const Side side : {Side::above, Side::below}) {
        const double s = side == Side::above ? 1.0 : -1.0;
        const double pred = z_onesided_predicted(st.f, phi, k, xi, side);
        const double got = detail::richardson_extrapolate(
            [&](double dist) { return z_eval(st.f, phi, k, {xi, fx + s * dist, side}); }, d,
            pred);
        CHECK(std::abs(got - pred) / std::abs(pred) <= 2e-2);
      }
    }
  }
}

TEST_CASE("pressure jump against sigma*kappa") {
  SUBCASE("flat: both zero") {
    Grid g(-20.0, 20.0, 512, GridMode::line);
    InterfaceState st{GridFn::zero(g), PhysParams(1.0, 1.0), 0.0};
    const PressureJump pj = pressure_jump_check(st, g.node(256));
    CHECK(pj.jump_num == 0.0);
    CHECK(pj.jump_exact == 0.0);
  }
  SUBCASE("Gaussian bump: analytic curvature and extrapolated jump") {
    const InterfaceState st = bump_state();
    const Grid& g = st.f.grid();
    const int j = g.n / 2;  // node at xi = 0
    const PressureJump pj = pressure_jump_check(st, g.node(j));
    CHECK(pj.jump_exact == doctest::Approx(-0.6 * st.params.sigma).epsilon(1e-7));
    CHECK(std::abs(pj.jump_num - pj.jump_exact) <= 0.02 * std::abs(pj.jump_exact));
  }
}

TEST_CASE("velocity continuity across the interface") {
  SUBCASE("flat: zero") {
    Grid g(-20.0, 20.0, 512, GridMode::line);
    InterfaceState st{GridFn::zero(g), PhysParams(1.0, 1.0), 0.0};
    const VelocityContinuity vc = velocity_continuity_check(st, g.node(200));
    CHECK(vc.v_mismatch == 0.0);
  }
  SUBCASE("Gaussian bump") {
    const InterfaceState st = bump_state();
    const Grid& g = st.f.grid();
    const VelocityContinuity vc = velocity_continuity_check(st, g.node(g.n / 2 + 26));
    const InterfaceVelocity von = interface_velocity(st);
    double vmax = 0.0;
    for (int j = 0; j < g.n; ++j) vmax = std::max(vmax, std::hypot(von.v1[j], von.v2[j]));
    CHECK(vc.v_mismatch <= 0.01 * vmax);
    const double davg = std::hypot(vc.avg[0] - vc.v_gamma[0], vc.avg[1] - vc.v_gamma[1]);
    CHECK(davg / std::hypot(vc.v_gamma[0], vc.v_gamma[1]) <= 2e-2);
  }
}

TEST_CASE("far-field probe") {
  SUBCASE("flat: all magnitudes zero") {
    Grid g(-20.0, 20.0, 512, GridMode::line);
    InterfaceState st{GridFn::zero(g), PhysParams(1.0, 1.0), 0.0};
    const FarfieldProbe fp = farfield_probe(st, {10.0, 20.0, 40.0});
    for (const auto& s : fp.samples) {
      CHECK(s.vmag == 0.0);
      CHECK(s.qmag == 0.0);
    }
  }
  SUBCASE("Gaussian bump decays monotonically") {
    const InterfaceState st = bump_state();
    const FarfieldProbe fp = farfield_probe(st, {10, 14, 20, 28, 40, 56, 80, 100});
    for (std::size_t i = 1; i < fp.samples.size(); ++i)
      CHECK(fp.samples[i].vmag < fp.samples[i - 1].vmag);
    CHECK(fp.v_slope <= -0.4);
    CHECK(fp.samples.back().qmag < fp.samples.front().qmag);
    CHECK_THROWS_WITH_AS(farfield_probe(st, {0.5}), doctest::Contains("out-of-domain"),
                         std::invalid_argument);
  }
}

TEST_CASE("richardson extrapolation: exact quadratics and divergence detection") {
  // value(d) = limit + c1 d + c2 d^2 is reproduced exactly
  auto quad = [](double d) { return 1.7 - 0.3 * d + 0.9 * d * d; };
  CHECK(detail::richardson_extrapolate(quad, 0.01, 1.0) == doctest::Approx(1.7).epsilon(1e-13));
  // a 1/d blow-up must be flagged
  auto sing = [](double d) { return 1.0 / d; };
  CHECK_THROWS_WITH_AS(detail::richardson_extrapolate(sing, 0.01, 1.0),
                       doctest::Contains("extrapolation-unreliable"), std::runtime_error);
}

TEST_CASE("stokes residual at off-interface probes") {
  const InterfaceState st = bump_state();
  FieldEvaluator ev(st);
  const double h = 1e-3, mu = st.params.mu;
  for (const auto& [x1, x2] : std::vector<std::pair<double, double>>{
           {0.5, 1.2}, {-1.1, -0.9}, {2.0, 2.5}, {-0.4, 1.0}}) {
    const FieldVQ e = ev.vq_raw(x1 + h, x2), w = ev.vq_raw(x1 - h, x2);
    const FieldVQ nn = ev.vq_raw(x1, x2 + h), ss = ev.vq_raw(x1, x2 - h);
    const FieldVQ cc = ev.vq_raw(x1, x2);
    for (int c = 0; c < 2; ++c) {
      const double lap = (e.v[c] + w.v[c] + nn.v[c] + ss.v[c] - 4.0 * cc.v[c]) / (h * h);
      const double gq = c == 0 ? (e.q - w.q) / (2.0 * h) : (nn.q - ss.q) / (2.0 * h);
      const double scale = std::abs(mu * lap) + std::abs(gq);
      CHECK(std::abs(mu * lap - gq) / scale <= 1e-4);
    }
  }
}

TEST_CASE("field evaluation requires line mode") {
  Grid gp(0.0, 2.0 * M_PI, 64, GridMode::periodic);
  InterfaceState st{GridFn::zero(gp), PhysParams(1.0, 1.0), 0.0};
  CHECK_THROWS_AS(FieldEvaluator ev(st), std::invalid_argument);
}
