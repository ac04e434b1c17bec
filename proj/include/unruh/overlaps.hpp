#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "unruh/geometry.hpp"
#include "unruh/modes.hpp"
#include "unruh/quadrature.hpp"
#include "unruh/spectrum.hpp"

namespace unruh {

// Klein-Gordon overlaps between plane waves and single Rindler modes, in
// closed form. With nu = Omega/a and kappa = asinh(k/m),
//   (u_k | w_I,Omega)  =  P e^{ pi nu/2} e^{-i nu kappa} e^{-i k D/2},
//   (u_k | w_II,Omega) =  P e^{ pi nu/2} e^{+i nu kappa} e^{+i k D/2},
//   -(u_k*| w_I,Omega) = -P e^{-pi nu/2} e^{-i nu kappa} e^{+i k D/2},
//   -(u_k*| w_II,Omega)= -P e^{-pi nu/2} e^{+i nu kappa} e^{-i k D/2},
// with P = 1 / sqrt(4 pi w_k a sinh(pi nu)). These reproduce the standard
// delta-normalized thermal sums, e.g.
//   int dk conj((u_k|w_I,O)) (u_k|w_I,O') = delta(O-O') / (1 - e^{-2 pi O/a}).

inline Complex plane_overlap_alpha(Wedge wedge, double omega, double k,
                                   const RindlerGeometry& geom) {
  const double w = std::hypot(k, geom.m);
  const double nu = omega / geom.a;
  const double kappa = std::asinh(k / geom.m);
  const double P = 1.0 / std::sqrt(4.0 * std::numbers::pi * w * geom.a * std::sinh(std::numbers::pi * nu));
  const double sgn = (wedge == Wedge::I) ? -1.0 : 1.0;
  return P * std::exp(0.5 * std::numbers::pi * nu) *
         std::polar(1.0, sgn * (nu * kappa + 0.5 * k * geom.D));
}

inline Complex plane_overlap_beta(Wedge wedge, double omega, double k,
                                  const RindlerGeometry& geom) {
  const double w = std::hypot(k, geom.m);
  const double nu = omega / geom.a;
  const double kappa = std::asinh(k / geom.m);
  const double P = 1.0 / std::sqrt(4.0 * std::numbers::pi * w * geom.a * std::sinh(std::numbers::pi * nu));
  const double sgn = (wedge == Wedge::I) ? -1.0 : 1.0;
  return -P * std::exp(-0.5 * std::numbers::pi * nu) *
         std::polar(1.0, sgn * (nu * kappa - 0.5 * k * geom.D));
}

/// Positive-frequency Minkowski content of a Rindler packet,
///   A(k) = (u_k | psi) = int dOmega sum_Lambda g_Lambda(Omega) (u_k | w_Lambda,Omega).
inline Complex packet_alpha_content(const RindlerSpectrum& spec, const RindlerGeometry& geom,
                                    double k, const QuadratureSpec& quad) {
  const double hi = std::min(spec.omega_upper(1e-15), quad.upper_cutoff);
  if (!(hi > 0.0)) return {};
  auto r = integrate_semi_infinite_range(
      [&](double o) {
        Complex s{0.0, 0.0};
        if (!spec.g_I.is_zero()) s += spec.g_I(o) * plane_overlap_alpha(Wedge::I, o, k, geom);
        if (!spec.g_II.is_zero()) s += spec.g_II(o) * plane_overlap_alpha(Wedge::II, o, k, geom);
        return s;
      },
      0.0, hi, quad);
  return r.value;
}

/// Negative-frequency content, B(k) = int dOmega sum_Lambda g_Lambda beta_{Omega k}^Lambda.
inline Complex packet_beta_content(const RindlerSpectrum& spec, const RindlerGeometry& geom,
                                   double k, const QuadratureSpec& quad) {
  const double hi = std::min(spec.omega_upper(1e-15), quad.upper_cutoff);
  if (!(hi > 0.0)) return {};
  auto r = integrate_semi_infinite_range(
      [&](double o) {
        Complex s{0.0, 0.0};
        if (!spec.g_I.is_zero()) s += spec.g_I(o) * plane_overlap_beta(Wedge::I, o, k, geom);
        if (!spec.g_II.is_zero()) s += spec.g_II(o) * plane_overlap_beta(Wedge::II, o, k, geom);
        return s;
      },
      0.0, hi, quad);
  return r.value;
}

/// Rindler-frequency content of a Minkowski packet,
///   G_Lambda(Omega) = (w_Lambda,Omega | phi) = int dk f(k) conj((u_k | w_Lambda,Omega)),
/// integrated in rapidity (k = m sinh kappa) where the measure is flat.
inline Complex rindler_content(const MinkowskiSpectrum& spec, const RindlerGeometry& geom,
                               Wedge wedge, double omega, const QuadratureSpec& quad) {
  const auto [klo, khi] = spec.f.support(1e-15);
  if (!(khi > klo)) return {};
  const double kap_lo = std::asinh(klo / geom.m), kap_hi = std::asinh(khi / geom.m);
  auto r = integrate_adaptive(
      [&](double kap) {
        const double k = geom.m * std::sinh(kap);
        const double w = geom.m * std::cosh(kap);
        return spec.f(k) * std::conj(plane_overlap_alpha(wedge, omega, k, geom)) * w;
      },
      kap_lo, kap_hi, quad);
  return r.value;
}

/// The Rindler packet maximizing |(psi|phi)|: profiles proportional to the
/// Rindler-frequency content of phi, jointly normalized, returned tabulated.
inline RindlerSpectrum rindler_projection(const MinkowskiSpectrum& phi, const RindlerGeometry& geom,
                                          const QuadratureSpec& quad, int n_points = 600) {
  geom.validate();
  if (n_points < 16) throw std::invalid_argument("rindler_projection: n_points too small");

  // locate the frequency support by probing |G_I| + |G_II|
  auto mag = [&](double o) {
    return std::abs(rindler_content(phi, geom, Wedge::I, o, quad)) +
           std::abs(rindler_content(phi, geom, Wedge::II, o, quad));
  };
  double peak = 0.0;
  double hi = 2.0 * geom.a;
  for (int i = 0; i < 60; ++i) {
    double tail = 0.0;
    for (double frac : {0.85, 0.95, 1.0}) tail = std::max(tail, mag(frac * hi));
    peak = std::max(peak, tail);
    for (double frac : {0.25, 0.5}) peak = std::max(peak, mag(frac * hi));
    if (tail < 1e-9 * peak || hi > quad.upper_cutoff) break;
    hi *= 1.4;
  }
  hi = std::min(hi, quad.upper_cutoff);

  std::vector<double> om(n_points);
  std::vector<Complex> vI(n_points), vII(n_points);
  double max_II = 0.0;
  for (int i = 0; i < n_points; ++i) {
    om[i] = (i + 0.5) * hi / n_points;
    vI[i] = rindler_content(phi, geom, Wedge::I, om[i], quad);
    vII[i] = rindler_content(phi, geom, Wedge::II, om[i], quad);
    max_II = std::max(max_II, std::abs(vII[i]));
  }

  RindlerSpectrum out;
  out.g_I = Profile(TabulatedProfile(om, vI));
  if (max_II > 1e-14) out.g_II = Profile(TabulatedProfile(om, vII));

  const double n2 = out.norm_squared(quad);
  if (!(n2 > 0.0)) throw std::runtime_error("rindler_projection: packet has no Rindler content");
  const double s = 1.0 / std::sqrt(n2);
  for (auto& v : vI) v *= s;
  for (auto& v : vII) v *= s;
  out.g_I = Profile(TabulatedProfile(om, vI));
  if (max_II > 1e-14) out.g_II = Profile(TabulatedProfile(std::move(om), vII));
  return out;
}

}  // namespace unruh
