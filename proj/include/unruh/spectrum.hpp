#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "unruh/geometry.hpp"
#include "unruh/profile.hpp"
#include "unruh/quadrature.hpp"

namespace unruh {

/// Wavepacket of positive-frequency Minkowski plane waves,
///   phi(x, t) = int dk f(k) u_k(x, t),
/// described by its expansion profile f over k in (-inf, inf).
/// The operator overlap of the packet with u_k is (phi, u_k) = conj(f(k)).
struct MinkowskiSpectrum {
  Profile f;

  /// Gaussian packet centered at wavevector k0 and position x0.
  static MinkowskiSpectrum gaussian(double k0, double width, double x0 = 0.0,
                                    Complex amplitude = 1.0) {
    GaussianBump b;
    b.center = k0;
    b.width = width;
    b.amplitude = amplitude;
    b.linear_phase = -x0;
    return {Profile(b)};
  }

  double norm_squared(const QuadratureSpec& spec) const {
    const auto [lo, hi] = f.support(1e-14);
    if (hi <= lo) return 0.0;
    auto r = integrate_adaptive([this](double k) { return std::norm(f(k)); }, lo, hi, spec);
    return r.value;
  }

  MinkowskiSpectrum normalized(const QuadratureSpec& spec) const {
    const double n2 = norm_squared(spec);
    if (!(n2 > 0.0)) throw std::invalid_argument("MinkowskiSpectrum: cannot normalize a zero profile");
    return {f.scaled(1.0 / std::sqrt(n2))};
  }
};

/// Wavepacket of positive-frequency Rindler modes,
///   psi(x) = int dOmega [ g_I(Omega) w_I,Omega(x) + g_II(Omega) w_II,Omega(x) ],
/// described by its expansion profiles over Omega in (0, inf), one per wedge.
/// The operator overlaps are (psi, w_Lambda,Omega) = conj(g_Lambda(Omega));
/// for single-wedge packets exactly one profile is identically zero.
struct RindlerSpectrum {
  Profile g_I;
  Profile g_II;

  static RindlerSpectrum gaussian(Wedge wedge, double omega0, double width,
                                  Complex amplitude = 1.0) {
    GaussianBump b;
    b.center = omega0;
    b.width = width;
    b.amplitude = amplitude;
    RindlerSpectrum s;
    (wedge == Wedge::I ? s.g_I : s.g_II) = Profile(b);
    return s;
  }

  static RindlerSpectrum two_wedge(Profile in_I, Profile in_II) {
    return {std::move(in_I), std::move(in_II)};
  }

  const Profile& profile(Wedge w) const { return w == Wedge::I ? g_I : g_II; }

  /// int_0^inf (|g_I|^2 + |g_II|^2) dOmega.
  double norm_squared(const QuadratureSpec& spec) const {
    const double hi = std::min(spec.upper_cutoff, omega_upper(1e-14));
    if (!(hi > 0.0)) return 0.0;
    auto r = integrate_semi_infinite_range(
        [this](double w) { return std::norm(g_I(w)) + std::norm(g_II(w)); }, 0.0, hi, spec);
    return r.value;
  }

  RindlerSpectrum normalized(const QuadratureSpec& spec) const {
    const double n2 = norm_squared(spec);
    if (!(n2 > 0.0)) throw std::invalid_argument("RindlerSpectrum: cannot normalize a zero profile");
    const double s = 1.0 / std::sqrt(n2);
    RindlerSpectrum out;
    out.g_I = g_I.is_zero() ? Profile{} : g_I.scaled(s);
    out.g_II = g_II.is_zero() ? Profile{} : g_II.scaled(s);
    return out;
  }

  /// Upper end of the joint frequency support at the given envelope
  /// threshold, clamped below by zero. `growth` widens the bound for
  /// integrands carrying an exp(growth * Omega) weight.
  double omega_upper(double threshold, double growth = 0.0) const {
    double hi = 0.0;
    for (const Profile* p : {&g_I, &g_II})
      if (!p->is_zero()) hi = std::max(hi, p->support(threshold, growth).second);
    return std::max(hi, 0.0);
  }

  double omega_lower(double threshold) const {
    double lo = std::numeric_limits<double>::infinity();
    for (const Profile* p : {&g_I, &g_II})
      if (!p->is_zero()) lo = std::min(lo, p->support(threshold).first);
    if (!std::isfinite(lo)) return 0.0;
    return std::max(lo, 0.0);
  }
};

}  // namespace unruh
