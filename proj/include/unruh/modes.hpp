#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <utility>
#include <vector>

#include "unruh/geometry.hpp"
#include "unruh/interp.hpp"
#include "unruh/quadrature.hpp"
#include "unruh/specfun.hpp"
#include "unruh/spectrum.hpp"

namespace unruh {

/// Field value and Minkowski-time derivative at a point of the t = 0 slice.
struct ModeValue {
  Complex value{0.0, 0.0};
  Complex dt{0.0, 0.0};
};

constexpr Complex kImagUnit{0.0, 1.0};

/// Plane wave u_k(x, t) = exp(i(kx - w_k t)) / sqrt(4 pi w_k).
inline Complex minkowski_mode(double k, double x, double t, double m) {
  const double w = std::hypot(k, m);
  return std::polar(1.0 / std::sqrt(4.0 * std::numbers::pi * w), k * x - w * t);
}

/// Normalization factor of the Rindler modes, sqrt(sinh(pi Omega / a) / (pi^2 a)).
inline double rindler_mode_norm(double omega, double a) {
  return std::sqrt(std::sinh(std::numbers::pi * omega / a) / (std::numbers::pi * std::numbers::pi * a));
}

/// phi(x, t) and its time derivative for a Minkowski wavepacket.
inline ModeValue evaluate_minkowski_wavepacket(const MinkowskiSpectrum& spec,
                                               const RindlerGeometry& geom, double x, double t,
                                               const QuadratureSpec& quad) {
  geom.validate();
  const auto [lo, hi] = spec.f.support(1e-15);
  if (!(hi > lo)) return {};
  auto value = integrate_adaptive(
      [&](double k) { return spec.f(k) * minkowski_mode(k, x, t, geom.m); }, lo, hi, quad);
  auto dt = integrate_adaptive(
      [&](double k) {
        const double w = std::hypot(k, geom.m);
        return spec.f(k) * (-kImagUnit * w) * minkowski_mode(k, x, t, geom.m);
      },
      lo, hi, quad);
  return {value.value, dt.value};
}

/// psi(x, t=0) and its Minkowski-time derivative for a Rindler wavepacket,
/// by direct quadrature over Omega (Bessel evaluation per node).
///
/// Outside both wedges the packet vanishes identically and (0, 0) is
/// returned. On the slice, d/dt acts as -i Omega / (a chi) per mode, chi
/// being the distance from the wedge apex.
inline ModeValue evaluate_rindler_wavepacket(const RindlerSpectrum& spec,
                                             const RindlerGeometry& geom, double x,
                                             const QuadratureSpec& quad) {
  geom.validate();
  ModeValue out;
  const QuadratureSpec bessel_quad = quad.tightened(0.01);
  for (Wedge w : {Wedge::I, Wedge::II}) {
    const Profile& g = spec.profile(w);
    if (g.is_zero()) continue;
    const double chi = geom.wedge_depth(w, x);
    if (!(chi > 0.0)) continue;
    auto [olo, ohi] = g.support(1e-15);
    olo = std::max(olo, 0.0);
    if (!(ohi > olo)) continue;
    auto integrand = [&](double omega) -> Complex {
      const double K = bessel_k_imag_order(omega / geom.a, geom.m * chi, bessel_quad).value;
      return g(omega) * rindler_mode_norm(omega, geom.a) * K;
    };
    auto val = (olo <= 1e-12) ? integrate_semi_infinite_range(integrand, 0.0, ohi, quad)
                              : integrate_adaptive(integrand, olo, ohi, quad);
    auto dt1 = [&](double omega) { return integrand(omega) * omega; };
    auto dtv = (olo <= 1e-12) ? integrate_semi_infinite_range(dt1, 0.0, ohi, quad)
                              : integrate_adaptive(dt1, olo, ohi, quad);
    out.value += val.value;
    out.dt += -kImagUnit / (geom.a * chi) * dtv.value;
  }
  return out;
}

/// Evaluates a Rindler wavepacket on the t = 0 slice through the cached
/// cosine transform of its profiles,
///   psi_Lambda(chi) = int_0^inf dt exp(-m chi cosh t) * Ghat_Lambda(t),
///   Ghat_Lambda(t)  = int dOmega g_Lambda(Omega) C(Omega) cos(Omega t / a),
/// which follows from the integral representation of K_{i Omega/a} by
/// exchanging the order of (absolutely convergent) integration. Ghat is
/// tabulated once per packet; afterwards each position costs one adaptive
/// 1-d integral with no Bessel evaluations.
class RindlerWaveEvaluator {
 public:
  RindlerWaveEvaluator(const RindlerSpectrum& spec, const RindlerGeometry& geom,
                       const QuadratureSpec& quad, double chi_min = 1e-7)
      : spec_(spec), geom_(geom), quad_(quad), chi_min_(chi_min) {
    geom_.validate();
    t_full_ = std::acosh(std::max(-std::log(1e-18) / (geom_.m * chi_min_), 2.0));
    for (Wedge w : {Wedge::I, Wedge::II}) {
      auto& tab = (w == Wedge::I) ? tab_I_ : tab_II_;
      const Profile& g = spec_.profile(w);
      if (g.is_zero()) continue;
      tab = build_transform(g);
    }
  }

  const RindlerGeometry& geometry() const { return geom_; }
  const RindlerSpectrum& spectrum() const { return spec_; }
  double transform_error() const { return std::max(tab_I_.dev, tab_II_.dev); }

  ModeValue operator()(double x) const {
    ModeValue out;
    for (Wedge w : {Wedge::I, Wedge::II}) {
      const auto& tab = (w == Wedge::I) ? tab_I_ : tab_II_;
      if (tab.t_live <= 0.0) continue;
      const double chi = geom_.wedge_depth(w, x);
      if (!(chi > 0.0)) continue;
      const double mx = geom_.m * chi;
      const double t_need = std::acosh(std::max(-std::log(1e-18) / mx, 2.0));
      const double t_hi = std::min({t_need, tab.t_live, t_full_});
      auto val = integrate_adaptive(
          [&](double t) { return Complex{tab.re0(t), tab.im0(t)} * std::exp(-mx * std::cosh(t)); },
          0.0, t_hi, quad_);
      auto dt1 = integrate_adaptive(
          [&](double t) { return Complex{tab.re1(t), tab.im1(t)} * std::exp(-mx * std::cosh(t)); },
          0.0, t_hi, quad_);
      out.value += val.value;
      out.dt += -kImagUnit / (geom_.a * chi) * dt1.value;
    }
    return out;
  }

 private:
  struct Transform {
    CubicSpline re0, im0, re1, im1;  // value and Omega-weighted kernels
    double t_live = 0.0;
    double dev = 0.0;  // measured spline deviation at probe points
  };

  Transform build_transform(const Profile& g) const {
    auto [olo, ohi] = g.support(1e-16);
    olo = std::max(olo, 0.0);
    Transform tab;
    if (!(ohi > olo)) return tab;

    // fixed Gauss-Legendre grid over the profile support (smooth integrand)
    static constexpr double gl_x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                       0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                       0.9445750230732326, 0.9894009349916499};
    static constexpr double gl_w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                       0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                       0.0666713443086881, 0.0271524594117541};
    const int panels = 24;
    std::vector<double> om, wt;
    std::vector<Complex> gc;
    om.reserve(panels * 16);
    for (int p = 0; p < panels; ++p) {
      const double a0 = olo + (ohi - olo) * p / panels;
      const double b0 = olo + (ohi - olo) * (p + 1) / panels;
      const double c = 0.5 * (a0 + b0), h = 0.5 * (b0 - a0);
      for (int j = 0; j < 8; ++j)
        for (double s : {-gl_x[j], gl_x[j]}) {
          const double o = c + h * s;
          om.push_back(o);
          wt.push_back(h * gl_w[j]);
          gc.push_back(g(o) * rindler_mode_norm(o, geom_.a));
        }
    }

    auto ghat = [&](double t, bool weighted) {
      Complex s{0.0, 0.0};
      for (std::size_t i = 0; i < om.size(); ++i) {
        const double c = std::cos(om[i] * t / geom_.a);
        s += wt[i] * gc[i] * (weighted ? om[i] * c : c);
      }
      return s;
    };

    // grid step resolving the fastest oscillation cos(Omega_hi t / a)
    const double nu_hi = std::max(ohi / geom_.a, 1.0);
    const double dt = std::min(0.02, 1.5e-3 * 10.0 / nu_hi);

    std::vector<double> ts;
    std::vector<Complex> v0, v1;
    double peak = 0.0;
    int quiet = 0;
    for (double t = 0.0; t <= t_full_ + dt; t += dt) {
      const Complex a0 = ghat(t, false);
      const Complex a1 = ghat(t, true);
      ts.push_back(t);
      v0.push_back(a0);
      v1.push_back(a1);
      peak = std::max(peak, std::abs(a0) + std::abs(a1));
      quiet = (std::abs(a0) + std::abs(a1) < 1e-15 * peak) ? quiet + 1 : 0;
      if (quiet > 30 && t > 2.0) break;  // transform has died off
    }
    tab.t_live = ts.back();

    std::vector<double> r0(ts.size()), i0(ts.size()), r1(ts.size()), i1(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      r0[i] = v0[i].real();
      i0[i] = v0[i].imag();
      r1[i] = v1[i].real();
      i1[i] = v1[i].imag();
    }
    tab.re0 = CubicSpline(ts, std::move(r0), CubicSpline::OutOfRange::Clamp);
    tab.im0 = CubicSpline(ts, std::move(i0), CubicSpline::OutOfRange::Clamp);
    tab.re1 = CubicSpline(ts, std::move(r1), CubicSpline::OutOfRange::Clamp);
    tab.im1 = CubicSpline(ts, std::move(i1), CubicSpline::OutOfRange::Clamp);

    // measure the interpolation error at off-grid points
    for (double frac : {0.137, 0.379, 0.613, 0.871}) {
      const double t = frac * tab.t_live;
      const Complex ex0 = ghat(t, false), ex1 = ghat(t, true);
      tab.dev = std::max(tab.dev, std::abs(ex0 - Complex{tab.re0(t), tab.im0(t)}));
      tab.dev = std::max(tab.dev, std::abs(ex1 - Complex{tab.re1(t), tab.im1(t)}));
    }
    return tab;
  }

  RindlerSpectrum spec_;
  RindlerGeometry geom_;
  QuadratureSpec quad_;
  double chi_min_;
  double t_full_;
  Transform tab_I_, tab_II_;
};

/// A field mode restricted to the t = 0 slice: evaluation callback plus the
/// integration hints the Klein-Gordon product needs (support bounds and
/// points where the integrand has log-scale structure, i.e. wedge apexes).
struct SliceMode {
  std::function<ModeValue(double)> eval;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> log_points;
  double eval_error = 0.0;
};

inline SliceMode conjugated(const SliceMode& m) {
  SliceMode out = m;
  auto inner = m.eval;
  out.eval = [inner](double x) {
    ModeValue v = inner(x);
    return ModeValue{std::conj(v.value), std::conj(v.dt)};
  };
  return out;
}

inline SliceMode make_slice_mode(const MinkowskiSpectrum& spec, const RindlerGeometry& geom,
                                 const QuadratureSpec& quad) {
  auto shared = std::make_shared<MinkowskiSpectrum>(spec);
  SliceMode m;
  m.eval = [shared, geom, quad](double x) {
    return evaluate_minkowski_wavepacket(*shared, geom, x, 0.0, quad);
  };

  // spatial support: start from the bandwidth estimate, extend by probing
  const auto [klo, khi] = spec.f.support(1e-13);
  const double bw = std::max(khi - klo, 1e-3);
  double center = 0.0, best = -1.0;
  for (double x = -quad.upper_cutoff; x <= quad.upper_cutoff; x += 2.0 / bw) {
    const double v = std::abs(m.eval(x).value);
    if (v > best) {
      best = v;
      center = x;
    }
  }
  double radius = 8.0 / bw + 2.0;
  for (int i = 0; i < 60; ++i) {
    const ModeValue l = m.eval(center - radius), r = m.eval(center + radius);
    const double edge = std::max({std::abs(l.value), std::abs(r.value), std::abs(l.dt), std::abs(r.dt)});
    if (edge < 1e-11 * std::max(best, 1e-30)) break;
    radius *= 1.35;
  }
  m.lo = center - radius;
  m.hi = center + radius;
  return m;
}

inline SliceMode make_slice_mode(const RindlerSpectrum& spec, const RindlerGeometry& geom,
                                 const QuadratureSpec& quad, double chi_min = 1e-7) {
  auto ev = std::make_shared<RindlerWaveEvaluator>(spec, geom, quad.tightened(0.1), chi_min);
  SliceMode m;
  m.eval = [ev](double x) { return (*ev)(x); };
  m.eval_error = ev->transform_error();

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Wedge w : {Wedge::I, Wedge::II}) {
    const Profile& g = spec.profile(w);
    if (g.is_zero()) continue;
    auto [olo, ohi] = g.support(1e-13);
    ohi = std::max(ohi, 0.1 * geom.a);
    // beyond the outermost turning point the modes decay like exp(-m chi)
    double chi_far = ohi / (geom.a * geom.m) + 40.0 / geom.m;
    const double apex = geom.apex(w);
    if (w == Wedge::I) {
      lo = std::min(lo, apex + chi_min);
      hi = std::max(hi, apex + chi_far);
    } else {
      lo = std::min(lo, apex - chi_far);
      hi = std::max(hi, apex - chi_min);
    }
    m.log_points.push_back(apex);
  }
  m.lo = lo;
  m.hi = hi;
  return m;
}

/// Klein-Gordon inner product on the t = 0 slice,
///   (A|B) = i int dx [ conj(A) dB/dt - B d(conj(A))/dt ],
/// with the sign convention that makes (u_k|u_l) = delta(k - l) and
/// normalized packets have (phi|phi) = 1.
inline IntegralResult<Complex> kg_inner_product(const SliceMode& A, const SliceMode& B,
                                                const QuadratureSpec& spec) {
  spec.validate();
  IntegralResult<Complex> out;
  out.converged = true;

  const double lo = std::max(A.lo, B.lo);
  const double hi = std::min(A.hi, B.hi);
  if (!(hi > lo)) return out;

  auto h = [&](double x) -> Complex {
    const ModeValue va = A.eval(x);
    const ModeValue vb = B.eval(x);
    return kImagUnit * (std::conj(va.value) * vb.dt - vb.value * std::conj(va.dt));
  };

  std::vector<double> edges{lo, hi};
  std::vector<double> logs;
  for (const auto* mode : {&A, &B})
    for (double p : mode->log_points)
      if (p > lo && p < hi) {
        edges.push_back(p);
        logs.push_back(p);
      }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto is_log = [&](double p) {
    for (double q : logs)
      if (p == q) return true;
    return false;
  };

  const int nseg = static_cast<int>(edges.size()) - 1;
  QuadratureSpec seg_spec = spec;
  seg_spec.abs_tol = spec.abs_tol / std::max(nseg, 1);

  for (int s = 0; s < nseg; ++s) {
    const double p = edges[s], q = edges[s + 1];
    const double len = q - p;
    const double eps_off = 1e-12 * std::max({std::abs(p), std::abs(q), 1.0});

    auto accumulate = [&](const IntegralResult<Complex>& r) {
      out.value += r.value;
      out.error_estimate += r.error_estimate;
      out.converged = out.converged && r.converged;
    };

    if (is_log(p) && is_log(q)) {
      const double mid = 0.5 * (p + q);
      accumulate(integrate_adaptive(
          [&](double lam) { const double e = std::exp(lam); return h(p + e) * e; },
          std::log(eps_off), std::log(mid - p), seg_spec));
      accumulate(integrate_adaptive(
          [&](double lam) { const double e = std::exp(lam); return h(q - e) * e; },
          std::log(eps_off), std::log(q - mid), seg_spec));
    } else if (is_log(p)) {
      accumulate(integrate_adaptive(
          [&](double lam) { const double e = std::exp(lam); return h(p + e) * e; },
          std::log(eps_off), std::log(len), seg_spec));
    } else if (is_log(q)) {
      accumulate(integrate_adaptive(
          [&](double lam) { const double e = std::exp(lam); return h(q - e) * e; },
          std::log(eps_off), std::log(len), seg_spec));
    } else {
      accumulate(integrate_adaptive(h, p, q, seg_spec));
    }
  }

  out.error_estimate += (A.eval_error + B.eval_error) * (hi - lo);
  out.converged = out.converged &&
                  out.error_estimate <= std::max(spec.abs_tol * 10.0,
                                                 spec.rel_tol * 10.0 * std::abs(out.value));
  return out;
}

}  // namespace unruh
