#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "unruh/bogoliubov.hpp"
#include "unruh/gaussian.hpp"
#include "unruh/geometry.hpp"
#include "unruh/interp.hpp"
#include "unruh/parallel.hpp"
#include "unruh/quadrature.hpp"
#include "unruh/specfun.hpp"
#include "unruh/spectrum.hpp"

namespace unruh {

enum class CovarianceBranch { D_zero, D_nonzero };

/// Covariance matrix of the Minkowski vacuum in the accelerated observers'
/// wavepacket basis, with per-element quadrature error estimates.
struct VacuumCovariance {
  Eigen::MatrixXd matrix;
  Eigen::MatrixXd element_errors;
  CovarianceBranch branch = CovarianceBranch::D_zero;

  int modes() const { return static_cast<int>(matrix.rows()) / 2; }
};

/// Kernel of the separated-wedge cross correlations (D != 0):
///   I1 = e^{pi (O-O')(1 - D/|D|) / 2a} K_{i(O-O')/a}(|mD|)
///        / (2 pi a sqrt(sinh(pi O/a) sinh(pi O'/a))).
inline double i1_kernel(double omega, double omega_p, const RindlerGeometry& geom,
                        const QuadratureSpec& quad = {}) {
  geom.validate();
  if (geom.D == 0.0)
    throw std::domain_error("i1_kernel: D must be nonzero (use the D = 0 covariance path)");
  const double pia = std::numbers::pi / geom.a;
  const double u = omega - omega_p;
  const double pref = std::exp(0.5 * pia * u * (1.0 - (geom.D > 0 ? 1.0 : -1.0)));
  const double K = bessel_k_imag_order(u / geom.a, geom.m * std::abs(geom.D), quad).value;
  return pref * K / (2.0 * std::numbers::pi * geom.a *
                     std::sqrt(std::sinh(pia * omega) * std::sinh(pia * omega_p)));
}

/// As i1_kernel with O + O' in place of O - O'. Symmetric in its arguments.
inline double i3_kernel(double omega, double omega_p, const RindlerGeometry& geom,
                        const QuadratureSpec& quad = {}) {
  geom.validate();
  if (geom.D == 0.0)
    throw std::domain_error("i3_kernel: D must be nonzero (use the D = 0 covariance path)");
  const double pia = std::numbers::pi / geom.a;
  const double v = omega + omega_p;
  const double pref = std::exp(0.5 * pia * v * (1.0 - (geom.D > 0 ? 1.0 : -1.0)));
  const double K = bessel_k_imag_order(v / geom.a, geom.m * std::abs(geom.D), quad).value;
  return pref * K / (2.0 * std::numbers::pi * geom.a *
                     std::sqrt(std::sinh(pia * omega) * std::sinh(pia * omega_p)));
}

namespace detail {

/// K_{i nu}(x) at fixed argument, tabulated over [0, nu_max] and spline
/// interpolated; the deviation at probe points enters the error estimates.
class BesselOrderCache {
 public:
  BesselOrderCache(double x, double nu_max, const QuadratureSpec& quad) : x_(x), quad_(quad) {
    const double osc = std::abs(std::log(2.0 / x)) + 1.0;
    const double step = std::min(0.01, 0.02 / osc);
    const int n = static_cast<int>(nu_max / step) + 2;
    std::vector<double> nu(n), val(n);
    parallel_for(n, 1, [&](int i) {
      nu[i] = i * step;
      val[i] = bessel_k_imag_order(nu[i], x_, quad_).value;
    });
    spline_ = CubicSpline(std::move(nu), std::move(val), CubicSpline::OutOfRange::Clamp);
    for (double frac : {0.089, 0.311, 0.527, 0.743, 0.961}) {
      const double p = frac * nu_max;
      dev_ = std::max(dev_, std::abs(spline_(p) - bessel_k_imag_order(p, x_, quad_).value));
    }
  }

  double operator()(double nu) const { return spline_(std::abs(nu)); }
  double deviation() const { return dev_; }

 private:
  double x_;
  QuadratureSpec quad_;
  CubicSpline spline_;
  double dev_ = 0.0;
};

struct Support {
  double lo = 0.0, hi = 0.0;
};

/// Inner-then-outer integration of k(u) * W(O, O') over a support rectangle
/// in rotated coordinates u = O - O', v = O + O'. The kernel depends on the
/// outer variable only, so it is evaluated once per outer node. Inner
/// endpoints where O or O' reaches zero get a square-root substitution.
template <typename Kernel, typename WFun>
IntegralResult<Complex> integrate_rotated_diff(Kernel&& kern, WFun&& W, const Support& sn,
                                               const Support& sk, const QuadratureSpec& quad) {
  const QuadratureSpec inner = quad.tightened(0.02 / std::max(1.0, sn.hi - sk.lo + sk.hi - sn.lo));
  double worst_inner = 0.0;
  bool ok = true;

  auto inner_int = [&](double u) -> Complex {
    const double v_lo = std::max(2.0 * sn.lo - u, 2.0 * sk.lo + u);
    const double v_hi = std::min(2.0 * sn.hi - u, 2.0 * sk.hi + u);
    if (!(v_hi > v_lo)) return {};
    const bool lo_binds_n = 2.0 * sn.lo - u >= 2.0 * sk.lo + u;
    const bool singular = (lo_binds_n ? sn.lo : sk.lo) < 1e-12;
    auto f = [&](double v) { return 0.5 * W(0.5 * (v + u), 0.5 * (v - u)); };
    IntegralResult<Complex> r;
    if (singular) {
      r = integrate_adaptive(
          [&](double w) { return f(v_lo + w * w) * (2.0 * w); }, 0.0, std::sqrt(v_hi - v_lo), inner);
    } else {
      r = integrate_adaptive(f, v_lo, v_hi, inner);
    }
    worst_inner = std::max(worst_inner, r.error_estimate);
    ok = ok && r.converged;
    return r.value;
  };

  const double u_lo = sn.lo - sk.hi, u_hi = sn.hi - sk.lo;
  if (!(u_hi > u_lo)) return {};
  auto out = integrate_adaptive([&](double u) { return kern(u) * inner_int(u); }, u_lo, u_hi, quad);
  out.error_estimate += worst_inner * (u_hi - u_lo);
  out.converged = out.converged && ok;
  return out;
}

template <typename Kernel, typename WFun>
IntegralResult<Complex> integrate_rotated_sum(Kernel&& kern, WFun&& W, const Support& sn,
                                              const Support& sk, const QuadratureSpec& quad) {
  const QuadratureSpec inner = quad.tightened(0.02 / std::max(1.0, sn.hi + sk.hi - sn.lo - sk.lo));
  double worst_inner = 0.0;
  bool ok = true;

  auto inner_int = [&](double v) -> Complex {
    const double u_lo = std::max(2.0 * sn.lo - v, v - 2.0 * sk.hi);
    const double u_hi = std::min(2.0 * sn.hi - v, v - 2.0 * sk.lo);
    if (!(u_hi > u_lo)) return {};
    auto f = [&](double u) { return 0.5 * W(0.5 * (v + u), 0.5 * (v - u)); };
    const bool sing_lo = (2.0 * sn.lo - v >= v - 2.0 * sk.hi) && sn.lo < 1e-12;   // Omega -> 0
    const bool sing_hi = (v - 2.0 * sk.lo <= 2.0 * sn.hi - v) && sk.lo < 1e-12;   // Omega' -> 0
    IntegralResult<Complex> r;
    if (sing_lo && sing_hi) {
      const double mid = 0.5 * (u_lo + u_hi);
      auto r1 = integrate_adaptive([&](double w) { return f(u_lo + w * w) * (2.0 * w); }, 0.0,
                                   std::sqrt(mid - u_lo), inner);
      auto r2 = integrate_adaptive([&](double w) { return f(u_hi - w * w) * (2.0 * w); }, 0.0,
                                   std::sqrt(u_hi - mid), inner);
      r.value = r1.value + r2.value;
      r.error_estimate = r1.error_estimate + r2.error_estimate;
      r.converged = r1.converged && r2.converged;
    } else if (sing_lo) {
      r = integrate_adaptive([&](double w) { return f(u_lo + w * w) * (2.0 * w); }, 0.0,
                             std::sqrt(u_hi - u_lo), inner);
    } else if (sing_hi) {
      r = integrate_adaptive([&](double w) { return f(u_hi - w * w) * (2.0 * w); }, 0.0,
                             std::sqrt(u_hi - u_lo), inner);
    } else {
      r = integrate_adaptive(f, u_lo, u_hi, inner);
    }
    worst_inner = std::max(worst_inner, r.error_estimate);
    ok = ok && r.converged;
    return r.value;
  };

  const double v_lo = sn.lo + sk.lo, v_hi = sn.hi + sk.hi;
  if (!(v_hi > v_lo)) return {};
  auto out = integrate_adaptive([&](double v) { return kern(v) * inner_int(v); }, v_lo, v_hi, quad);
  out.error_estimate += worst_inner * (v_hi - v_lo);
  out.converged = out.converged && ok;
  return out;
}

inline void require_normalized(const std::vector<RindlerSpectrum>& specs,
                               const RindlerGeometry& geom, const QuadratureSpec& quad) {
  for (std::size_t n = 0; n < specs.size(); ++n) {
    const double nn = specs[n].norm_squared(quad);
    if (std::abs(nn - 1.0) > 1e-6)
      throw std::invalid_argument("vacuum_covariance: mode " + std::to_string(n) +
                                  " is not normalized (norm^2 = " + std::to_string(nn) + ")");
  }
  (void)geom;
}

}  // namespace detail

/// Vacuum covariance for coinciding wedge apexes (D = 0). Only single
/// integrals over Omega appear; wedge cross correlations are diagonal in
/// frequency.
inline VacuumCovariance vacuum_covariance_D0(const std::vector<RindlerSpectrum>& psi_specs,
                                             const RindlerGeometry& geom, const QuadratureSpec& quad,
                                             int threads = 1) {
  geom.validate();
  if (geom.D != 0.0)
    throw std::domain_error("vacuum_covariance_D0: geometry has D != 0 (use the D != 0 branch)");
  detail::require_normalized(psi_specs, geom, quad);

  const int Z = static_cast<int>(psi_specs.size());
  const double pia = std::numbers::pi / geom.a;
  const double tau = quad.abs_tol * 1e-2;

  VacuumCovariance out;
  out.branch = CovarianceBranch::D_zero;
  out.matrix = Eigen::MatrixXd::Zero(2 * Z, 2 * Z);
  out.element_errors = Eigen::MatrixXd::Zero(2 * Z, 2 * Z);

  std::vector<double> hi(Z);
  for (int n = 0; n < Z; ++n) hi[n] = std::min(psi_specs[n].omega_upper(tau), quad.upper_cutoff);

  struct Task {
    int n, k;
  };
  std::vector<Task> tasks;
  for (int n = 0; n < Z; ++n)
    for (int k = n; k < Z; ++k) tasks.push_back({n, k});

  parallel_for(static_cast<int>(tasks.size()), threads, [&](int ti) {
    const auto [n, k] = tasks[ti];
    const auto& gn = psi_specs[n];
    const auto& gk = psi_specs[k];
    const double hi_nk = std::max(hi[n], hi[k]);

    if (n == k) {
      auto thermal = integrate_semi_infinite_range(
          [&](double o) {
            return (std::norm(gn.g_I(o)) + std::norm(gn.g_II(o))) * std::exp(-pia * o) /
                   std::sinh(pia * o);
          },
          0.0, hi_nk, quad);
      IntegralResult<Complex> cross{};
      if (!gn.g_I.is_zero() && !gn.g_II.is_zero())
        cross = integrate_semi_infinite_range(
            [&](double o) -> Complex { return gn.g_I(o) * gn.g_II(o) / std::sinh(pia * o); }, 0.0,
            hi_nk, quad);
      const double err = thermal.error_estimate + 2.0 * cross.error_estimate;
      out.matrix(2 * n, 2 * n) = 1.0 + thermal.value + 2.0 * cross.value.real();
      out.matrix(2 * n + 1, 2 * n + 1) = 1.0 + thermal.value - 2.0 * cross.value.real();
      out.matrix(2 * n + 1, 2 * n) = -2.0 * cross.value.imag();
      out.matrix(2 * n, 2 * n + 1) = out.matrix(2 * n + 1, 2 * n);
      out.element_errors(2 * n, 2 * n) = err;
      out.element_errors(2 * n + 1, 2 * n + 1) = err;
      out.element_errors(2 * n, 2 * n + 1) = 2.0 * cross.error_estimate;
      out.element_errors(2 * n + 1, 2 * n) = out.element_errors(2 * n, 2 * n + 1);
      return;
    }

    // N^{+-}_{n,k} = J_x +- J_s with the frequency-diagonal integrals below.
    auto Jx = integrate_semi_infinite_range(
        [&](double o) -> Complex {
          return (std::conj(gn.g_I(o)) * std::conj(gk.g_II(o)) +
                  std::conj(gn.g_II(o)) * std::conj(gk.g_I(o))) /
                 std::sinh(pia * o);
        },
        0.0, hi_nk, quad);
    auto Js = integrate_semi_infinite_range(
        [&](double o) -> Complex {
          return (std::conj(gn.g_I(o)) * gk.g_I(o) + std::conj(gn.g_II(o)) * gk.g_II(o)) *
                 std::exp(pia * o) / std::sinh(pia * o);
        },
        0.0, hi_nk, quad);
    const Complex Np = Jx.value + Js.value;
    const Complex Nm = Jx.value - Js.value;
    const double err = Jx.error_estimate + Js.error_estimate;

    out.matrix(2 * n, 2 * k) = Np.real();
    out.matrix(2 * n, 2 * k + 1) = Nm.imag();
    out.matrix(2 * n + 1, 2 * k) = Np.imag();
    out.matrix(2 * n + 1, 2 * k + 1) = -Nm.real();
    for (int r : {0, 1})
      for (int c : {0, 1}) {
        out.element_errors(2 * n + r, 2 * k + c) = err;
        out.matrix(2 * k + c, 2 * n + r) = out.matrix(2 * n + r, 2 * k + c);
        out.element_errors(2 * k + c, 2 * n + r) = err;
      }
  });
  return out;
}

/// Vacuum covariance for separated wedge apexes (D != 0). Wedge cross
/// correlations become double integrals against the I1/I3 kernels; they are
/// evaluated in rotated coordinates where the Bessel kernel depends on the
/// outer variable only.
inline VacuumCovariance vacuum_covariance_Dneq0(const std::vector<RindlerSpectrum>& psi_specs,
                                                const RindlerGeometry& geom,
                                                const QuadratureSpec& quad, int threads = 1) {
  geom.validate();
  if (geom.D == 0.0)
    throw std::domain_error("vacuum_covariance_Dneq0: geometry has D = 0 (use the D = 0 branch)");
  detail::require_normalized(psi_specs, geom, quad);

  const int Z = static_cast<int>(psi_specs.size());
  const double pia = std::numbers::pi / geom.a;
  const double sgn = geom.D > 0 ? 1.0 : -1.0;
  const double tau = quad.abs_tol * 1e-2;
  const double growth = geom.D < 0 ? 0.5 * pia : 0.0;

  std::vector<detail::Support> sup(Z);
  double nu_max = 0.0;
  for (int n = 0; n < Z; ++n) {
    sup[n].lo = psi_specs[n].omega_lower(tau);
    sup[n].hi = std::min(psi_specs[n].omega_upper(tau, growth), quad.upper_cutoff);
    nu_max = std::max(nu_max, 2.0 * sup[n].hi / geom.a);
  }

  const detail::BesselOrderCache K(geom.m * std::abs(geom.D), nu_max + 1.0, quad.tightened(0.1));
  const double inv2pia = 1.0 / (2.0 * std::numbers::pi * geom.a);
  auto kern1 = [&](double u) { return inv2pia * std::exp(0.5 * pia * u * (1.0 - sgn)) * K(u / geom.a); };
  auto kern3 = [&](double v) { return inv2pia * std::exp(0.5 * pia * v * (1.0 - sgn)) * K(v / geom.a); };
  auto rsinh = [&](double on, double ok) { return 1.0 / std::sqrt(std::sinh(pia * on) * std::sinh(pia * ok)); };

  VacuumCovariance out;
  out.branch = CovarianceBranch::D_nonzero;
  out.matrix = Eigen::MatrixXd::Zero(2 * Z, 2 * Z);
  out.element_errors = Eigen::MatrixXd::Zero(2 * Z, 2 * Z);

  struct Task {
    int n, k;
  };
  std::vector<Task> tasks;
  for (int n = 0; n < Z; ++n)
    for (int k = n; k < Z; ++k) tasks.push_back({n, k});

  parallel_for(static_cast<int>(tasks.size()), threads, [&](int ti) {
    const auto [n, k] = tasks[ti];
    const auto& gn = psi_specs[n];
    const auto& gk = psi_specs[k];
    const bool cross_wedge_nk = (!gn.g_I.is_zero() && !gk.g_II.is_zero()) ||
                                (!gn.g_II.is_zero() && !gk.g_I.is_zero());

    if (n == k) {
      auto thermal = integrate_semi_infinite_range(
          [&](double o) {
            return (std::norm(gn.g_I(o)) + std::norm(gn.g_II(o))) * std::exp(-pia * o) /
                   std::sinh(pia * o);
          },
          0.0, std::max(sup[n].hi, 1e-6), quad);

      IntegralResult<Complex> v1{}, v3{};
      if (cross_wedge_nk) {
        v1 = detail::integrate_rotated_diff(
            kern1,
            [&](double on, double ok2) -> Complex {
              return (std::conj(gn.g_I(on)) * std::conj(gn.g_II(ok2)) +
                      std::conj(gn.g_II(on)) * std::conj(gn.g_I(ok2))) *
                     rsinh(on, ok2);
            },
            sup[n], sup[n], quad);
        v3 = detail::integrate_rotated_sum(
            kern3,
            [&](double on, double ok2) -> Complex {
              return (std::conj(gn.g_I(on)) * gn.g_II(ok2) +
                      std::conj(gn.g_II(on)) * gn.g_I(ok2)) *
                     rsinh(on, ok2);
            },
            sup[n], sup[n], quad);
      }
      const double err = thermal.error_estimate + 2.0 * (v1.error_estimate + v3.error_estimate) +
                         2.0 * std::abs(v3.value.imag()) + K.deviation();
      out.matrix(2 * n, 2 * n) = 1.0 + thermal.value + 2.0 * v3.value.real() + 2.0 * v1.value.real();
      out.matrix(2 * n + 1, 2 * n + 1) =
          1.0 + thermal.value + 2.0 * v3.value.real() - 2.0 * v1.value.real();
      out.matrix(2 * n + 1, 2 * n) = 2.0 * v1.value.imag();
      out.matrix(2 * n, 2 * n + 1) = out.matrix(2 * n + 1, 2 * n);
      out.element_errors(2 * n, 2 * n) = err;
      out.element_errors(2 * n + 1, 2 * n + 1) = err;
      out.element_errors(2 * n, 2 * n + 1) = 2.0 * v1.error_estimate + K.deviation();
      out.element_errors(2 * n + 1, 2 * n) = out.element_errors(2 * n, 2 * n + 1);
      return;
    }

    IntegralResult<Complex> w1{}, w3{};
    if (cross_wedge_nk) {
      w1 = detail::integrate_rotated_diff(
          kern1,
          [&](double on, double ok2) -> Complex {
            return (std::conj(gn.g_I(on)) * std::conj(gk.g_II(ok2)) +
                    std::conj(gn.g_II(on)) * std::conj(gk.g_I(ok2))) *
                   rsinh(on, ok2);
          },
          sup[n], sup[k], quad);
      w3 = detail::integrate_rotated_sum(
          kern3,
          [&](double on, double ok2) -> Complex {
            return (std::conj(gn.g_I(on)) * gk.g_II(ok2) + std::conj(gn.g_II(on)) * gk.g_I(ok2)) *
                   rsinh(on, ok2);
          },
          sup[n], sup[k], quad);
    }
    auto ws = integrate_semi_infinite_range(
        [&](double o) -> Complex {
          return (std::conj(gn.g_I(o)) * gk.g_I(o) + std::conj(gn.g_II(o)) * gk.g_II(o)) /
                 (1.0 - std::exp(-2.0 * pia * o));
        },
        0.0, std::max(std::min(sup[n].hi, sup[k].hi), 1e-6), quad);

    const Complex Np = 2.0 * (w1.value + ws.value + w3.value);
    const Complex Nm = 2.0 * (w1.value - ws.value - w3.value);
    const double err =
        2.0 * (w1.error_estimate + ws.error_estimate + w3.error_estimate) + K.deviation();

    out.matrix(2 * n, 2 * k) = Np.real();
    out.matrix(2 * n, 2 * k + 1) = Nm.imag();
    out.matrix(2 * n + 1, 2 * k) = Np.imag();
    out.matrix(2 * n + 1, 2 * k + 1) = -Nm.real();
    for (int r : {0, 1})
      for (int c : {0, 1}) {
        out.element_errors(2 * n + r, 2 * k + c) = err;
        out.matrix(2 * k + c, 2 * n + r) = out.matrix(2 * n + r, 2 * k + c);
        out.element_errors(2 * k + c, 2 * n + r) = err;
      }
  });
  return out;
}

/// Channel matrices from the Bogolyubov coefficients and the accelerated-
/// frame vacuum covariance: M assembled blockwise from alpha and beta,
/// N = sigma_vac - M M^T.
inline GaussianChannel build_channel(const BogoliubovMatrices& bogo,
                                     const VacuumCovariance& sigma_vac) {
  const int Z = bogo.size();
  if (bogo.alpha.rows() != Z || bogo.alpha.cols() != Z || bogo.beta.rows() != Z ||
      bogo.beta.cols() != Z)
    throw std::invalid_argument("build_channel: alpha and beta must be Z x Z");
  if (sigma_vac.matrix.rows() != 2 * Z)
    throw std::invalid_argument("build_channel: covariance dimension does not match Z");

  GaussianChannel ch;
  ch.M.resize(2 * Z, 2 * Z);
  Eigen::MatrixXd m_err(2 * Z, 2 * Z);
  for (int i = 0; i < Z; ++i)
    for (int j = 0; j < Z; ++j) {
      const Complex am = bogo.alpha(i, j) - bogo.beta(i, j);
      const Complex ap = bogo.alpha(i, j) + bogo.beta(i, j);
      ch.M(2 * i, 2 * j) = am.real();
      ch.M(2 * i, 2 * j + 1) = -ap.imag();
      ch.M(2 * i + 1, 2 * j) = am.imag();
      ch.M(2 * i + 1, 2 * j + 1) = ap.real();
      m_err.block<2, 2>(2 * i, 2 * j).setConstant(bogo.error_estimates(i, j));
    }

  const Eigen::MatrixXd mmt = ch.M * ch.M.transpose();
  ch.N = 0.5 * ((sigma_vac.matrix - mmt) + (sigma_vac.matrix - mmt).transpose());
  ch.element_errors = sigma_vac.element_errors +
                      (m_err * ch.M.cwiseAbs().transpose() + ch.M.cwiseAbs() * m_err.transpose());
  return ch;
}

}  // namespace unruh
