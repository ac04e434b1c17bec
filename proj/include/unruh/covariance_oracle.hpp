#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "unruh/channel.hpp"
#include "unruh/geometry.hpp"
#include "unruh/quadrature.hpp"
#include "unruh/spectrum.hpp"

namespace unruh {

// Independent assembly of the accelerated-frame vacuum covariance from the
// Rindler-operator two-point functions:
//   A_nk = <0| d_n d_k |0>,  B_nk = <0| d_n d_k^dag |0>,
// combined through the quadrature anticommutators,
//   sigma_{2n-1,2n-1} =  2 Re A_nn + 2 B_nn - 1,
//   sigma_{2n,2n}     = -2 Re A_nn + 2 B_nn - 1,
//   sigma_{2n,2n-1}   =  2 Im A_nn,
// and for n != k
//   sigma_{2n-1,2k-1} =  2 Re(A_nk + B_nk),  sigma_{2n-1,2k} = 2 Im(A_nk - B_nk),
//   sigma_{2n,2k-1}   =  2 Im(A_nk + B_nk),  sigma_{2n,2k}  = -2 Re(A_nk - B_nk).
// Double integrals run as plain iterated quadrature with direct Bessel
// evaluation; this path shares no code with the rotated-coordinate assembly
// it is used to check.

namespace oracle_detail {

struct TwoPoint {
  Complex A, B;
  double err = 0.0;
};

inline TwoPoint twopoint_D0(const RindlerSpectrum& gn, const RindlerSpectrum& gk,
                            const RindlerGeometry& geom, const QuadratureSpec& quad, double hi) {
  const double pia = std::numbers::pi / geom.a;
  auto A = integrate_semi_infinite_range(
      [&](double o) -> Complex {
        return (std::conj(gn.g_I(o)) * std::conj(gk.g_II(o)) +
                std::conj(gn.g_II(o)) * std::conj(gk.g_I(o))) /
               (2.0 * std::sinh(pia * o));
      },
      0.0, hi, quad);
  auto B = integrate_semi_infinite_range(
      [&](double o) -> Complex {
        return (std::conj(gn.g_I(o)) * gk.g_I(o) + std::conj(gn.g_II(o)) * gk.g_II(o)) /
               (1.0 - std::exp(-2.0 * pia * o));
      },
      0.0, hi, quad);
  return {A.value, B.value, A.error_estimate + B.error_estimate};
}

inline TwoPoint twopoint_Dneq0(const RindlerSpectrum& gn, const RindlerSpectrum& gk,
                               const RindlerGeometry& geom, const QuadratureSpec& quad, double lo,
                               double hi) {
  const double pia = std::numbers::pi / geom.a;
  const QuadratureSpec bessel_quad = quad.tightened(0.02);
  const QuadratureSpec inner = quad.tightened(0.02 / std::max(1.0, hi - lo));
  double worst_inner = 0.0;

  auto iterated = [&](auto&& f2) {
    auto outer = [&](double o) -> Complex {
      auto r = integrate_semi_infinite_range([&](double op) { return f2(o, op); }, lo, hi, inner);
      worst_inner = std::max(worst_inner, r.error_estimate);
      return r.value;
    };
    auto r = integrate_semi_infinite_range(outer, lo, hi, quad);
    r.error_estimate += worst_inner * (hi - lo);
    return r;
  };

  auto A = iterated([&](double o, double op) -> Complex {
    const Complex w = std::conj(gn.g_I(o)) * std::conj(gk.g_II(op)) +
                      std::conj(gn.g_II(o)) * std::conj(gk.g_I(op));
    if (w == Complex{0.0, 0.0}) return w;
    return i1_kernel(o, op, geom, bessel_quad) * w;
  });
  auto B2 = iterated([&](double o, double op) -> Complex {
    const Complex w = std::conj(gn.g_I(o)) * gk.g_II(op) + std::conj(gn.g_II(o)) * gk.g_I(op);
    if (w == Complex{0.0, 0.0}) return w;
    return i3_kernel(o, op, geom, bessel_quad) * w;
  });
  auto B1 = integrate_semi_infinite_range(
      [&](double o) -> Complex {
        return (std::conj(gn.g_I(o)) * gk.g_I(o) + std::conj(gn.g_II(o)) * gk.g_II(o)) /
               (1.0 - std::exp(-2.0 * pia * o));
      },
      0.0, hi, quad);
  return {A.value, B1.value + B2.value,
          A.error_estimate + B1.error_estimate + B2.error_estimate};
}

}  // namespace oracle_detail

inline Eigen::MatrixXd vacuum_covariance_twopoint(const std::vector<RindlerSpectrum>& psi_specs,
                                                  const RindlerGeometry& geom,
                                                  const QuadratureSpec& quad,
                                                  Eigen::MatrixXd* errors = nullptr) {
  geom.validate();
  const int Z = static_cast<int>(psi_specs.size());
  const double tau = quad.abs_tol * 1e-2;
  const double growth = geom.D < 0 ? 0.5 * std::numbers::pi / geom.a : 0.0;

  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(2 * Z, 2 * Z);
  Eigen::MatrixXd errs = Eigen::MatrixXd::Zero(2 * Z, 2 * Z);

  for (int n = 0; n < Z; ++n)
    for (int k = n; k < Z; ++k) {
      const double lo = std::min(psi_specs[n].omega_lower(tau), psi_specs[k].omega_lower(tau));
      const double hi = std::min(std::max(psi_specs[n].omega_upper(tau, growth),
                                          psi_specs[k].omega_upper(tau, growth)),
                                 quad.upper_cutoff);
      const auto tp = (geom.D == 0.0)
                          ? oracle_detail::twopoint_D0(psi_specs[n], psi_specs[k], geom, quad, hi)
                          : oracle_detail::twopoint_Dneq0(psi_specs[n], psi_specs[k], geom, quad,
                                                          lo, hi);
      if (n == k) {
        sigma(2 * n, 2 * n) = 2.0 * tp.A.real() + 2.0 * tp.B.real() - 1.0;
        sigma(2 * n + 1, 2 * n + 1) = -2.0 * tp.A.real() + 2.0 * tp.B.real() - 1.0;
        sigma(2 * n + 1, 2 * n) = 2.0 * tp.A.imag();
        sigma(2 * n, 2 * n + 1) = sigma(2 * n + 1, 2 * n);
        const double e = 2.0 * tp.err + 2.0 * std::abs(tp.B.imag());
        errs(2 * n, 2 * n) = e;
        errs(2 * n + 1, 2 * n + 1) = e;
        errs(2 * n, 2 * n + 1) = e;
        errs(2 * n + 1, 2 * n) = e;
      } else {
        sigma(2 * n, 2 * k) = 2.0 * (tp.A + tp.B).real();
        sigma(2 * n, 2 * k + 1) = 2.0 * (tp.A - tp.B).imag();
        sigma(2 * n + 1, 2 * k) = 2.0 * (tp.A + tp.B).imag();
        sigma(2 * n + 1, 2 * k + 1) = -2.0 * (tp.A - tp.B).real();
        for (int r : {0, 1})
          for (int c : {0, 1}) {
            errs(2 * n + r, 2 * k + c) = 2.0 * tp.err;
            sigma(2 * k + c, 2 * n + r) = sigma(2 * n + r, 2 * k + c);
            errs(2 * k + c, 2 * n + r) = 2.0 * tp.err;
          }
      }
    }
  if (errors) *errors = errs;
  return sigma;
}

}  // namespace unruh
