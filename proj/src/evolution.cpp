#include "capflow/evolution.hpp"

#include <cmath>

#include "capflow/spectral.hpp"

namespace capflow {

namespace {

struct PsiArgs {
  GridFn fp;      // f'
  GridFn A;       // phi1 + f' phi2
  GridFn B;       // 3 f' phi1 - phi2
  GridFn C;       // f' phi1 + phi2
  GridFn D;       // f' phi1 - 3 phi2
  GridFn phi1, phi2;
};

PsiArgs psi_args(const GridFn& f) {
  GeometryBundle geo = geometry(f);
  const int n = f.size();
  std::vector<double> A(n), B(n), C(n), D(n);
  for (int j = 0; j < n; ++j) {
    const double d = geo.fprime[j], p1 = geo.phi1[j], p2 = geo.phi2[j];
    A[j] = p1 + d * p2;
    B[j] = 3.0 * d * p1 - p2;
    C[j] = d * p1 + p2;
    D[j] = d * p1 - 3.0 * p2;
  }
  const Grid& g = f.grid();
  return PsiArgs{std::move(geo.fprime),       GridFn(g, std::move(A)), GridFn(g, std::move(B)),
                 GridFn(g, std::move(C)),     GridFn(g, std::move(D)), std::move(geo.phi1),
                 std::move(geo.phi2)};
}

PsiParts psi_parts_from(const GridFn& f, const PsiArgs& ar) {
  const BSpec b02{0, 2}, b12{1, 2}, b22{2, 2}, b32{3, 2};
  GridFn psi1 = apply_B0(f, b02, ar.A) - apply_B0(f, b22, ar.A) + apply_B0(f, b12, ar.B) +
                apply_B0(f, b32, ar.C);
  GridFn psi2 = -apply_B0(f, b02, ar.C) + apply_B0(f, b12, ar.A) - apply_B0(f, b32, ar.A) +
                apply_B0(f, b22, ar.D);
  return PsiParts{std::move(psi1), std::move(psi2)};
}

}  // namespace

PsiParts psi_parts(const GridFn& f) { return psi_parts_from(f, psi_args(f)); }

GridFn psi(const InterfaceState& state) {
  const PsiArgs ar = psi_args(state.f);
  const PsiParts parts = psi_parts_from(state.f, ar);
  const double pref = state.params.sigma / (4.0 * M_PI * state.params.mu);
  std::vector<double> out(state.f.size());
  for (int j = 0; j < state.f.size(); ++j)
    out[j] = pref * (-ar.fp[j] * parts.psi1[j] + parts.psi2[j]);
  return GridFn(state.f.grid(), std::move(out));
}

InterfaceVelocity interface_velocity(const InterfaceState& state) {
  const GridFn& f = state.f;
  GeometryBundle geo = geometry(f);
  const int n = f.size();
  std::vector<double> E(n), Fv(n), G(n), H(n);
  for (int j = 0; j < n; ++j) {
    const double d = geo.fprime[j], g1 = geo.g1[j], g2 = geo.g2[j];
    E[j] = g1 - d * g2;
    Fv[j] = 3.0 * d * g1 + g2;
    G[j] = d * g1 - g2;
    H[j] = d * g1 + 3.0 * g2;
  }
  const Grid& g = f.grid();
  GridFn argE(g, std::move(E)), argF(g, std::move(Fv)), argG(g, std::move(G)), argH(g, std::move(H));
  const BSpec b02{0, 2}, b12{1, 2}, b22{2, 2}, b32{3, 2};
  const double pref = state.params.sigma / (4.0 * M_PI * state.params.mu);
  GridFn v1 = pref * (apply_B0(f, b22, argE) - apply_B0(f, b02, argE) - apply_B0(f, b12, argF) -
                      apply_B0(f, b32, argG));
  GridFn v2 = pref * (apply_B0(f, b02, argG) + apply_B0(f, b32, argE) - apply_B0(f, b12, argE) -
                      apply_B0(f, b22, argH));
  return InterfaceVelocity{std::move(v1), std::move(v2)};
}

GridFn dpsi(const InterfaceState& state, const GridFn& h) {
  const GridFn& f = state.f;
  require_same_grid(f, h);
  const PsiArgs ar = psi_args(f);
  const PsiParts parts = psi_parts_from(f, ar);
  const LinearizationCoeffs lc = linearization_coeffs(f);
  GridFn hp = derivative(h, 1);

  const int n = f.size();
  std::vector<double> dA(n), dB(n), dC(n), dD(n);
  for (int j = 0; j < n; ++j) {
    const double d = ar.fp[j], p1 = ar.phi1[j], p2 = ar.phi2[j];
    const double a1 = lc.a1[j], a2 = lc.a2[j], hpj = hp[j];
    dA[j] = (a1 + p2 + d * a2) * hpj;
    dB[j] = (3.0 * p1 + 3.0 * d * a1 - a2) * hpj;
    dC[j] = (p1 + d * a1 + a2) * hpj;
    dD[j] = (p1 + d * a1 - 3.0 * a2) * hpj;
  }
  const Grid& g = f.grid();
  GridFn argdA(g, std::move(dA)), argdB(g, std::move(dB)), argdC(g, std::move(dC)),
      argdD(g, std::move(dD));

  const BSpec b02{0, 2}, b12{1, 2}, b22{2, 2}, b32{3, 2};
  GridFn dPsi1 = apply_dB0(f, b02, h, ar.A) - apply_dB0(f, b22, h, ar.A) +
                 apply_dB0(f, b12, h, ar.B) + apply_dB0(f, b32, h, ar.C) +
                 apply_B0(f, b02, argdA) - apply_B0(f, b22, argdA) + apply_B0(f, b12, argdB) +
                 apply_B0(f, b32, argdC);
  GridFn dPsi2 = -apply_dB0(f, b02, h, ar.C) + apply_dB0(f, b12, h, ar.A) -
                 apply_dB0(f, b32, h, ar.A) + apply_dB0(f, b22, h, ar.D) -
                 apply_B0(f, b02, argdC) + apply_B0(f, b12, argdA) - apply_B0(f, b32, argdA) +
                 apply_B0(f, b22, argdD);

  const double pref = state.params.sigma / (4.0 * M_PI * state.params.mu);
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j)
    out[j] = pref * (-hp[j] * parts.psi1[j] - ar.fp[j] * dPsi1[j] + dPsi2[j]);
  return GridFn(g, std::move(out));
}

double flat_symbol(const PhysParams& params, double k) {
  if (k < 0.0) throw std::invalid_argument("bad-config: flat_symbol needs k >= 0");
  return -params.sigma * k / (4.0 * params.mu);
}

GridFn alpha1_diagnostic(const InterfaceState& state) {
  const LinearizationCoeffs lc = linearization_coeffs(state.f);
  GridFn fp = derivative(state.f, 1);
  const double pref = state.params.sigma / (4.0 * state.params.mu);
  std::vector<double> out(state.f.size());
  for (int j = 0; j < state.f.size(); ++j) out[j] = pref * (lc.a2[j] + fp[j] * lc.a1[j]);
  return GridFn(state.f.grid(), std::move(out));
}

}  // namespace capflow
