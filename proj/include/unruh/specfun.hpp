#pragma once

#include <cmath>
#include <stdexcept>

#include "unruh/quadrature.hpp"

namespace unruh {

/// Modified Bessel function of imaginary order, K_{i nu}(x), for x > 0.
///
/// Computed from the real, non-oscillatory-envelope representation
///   K_{i nu}(x) = int_0^inf exp(-x cosh t) cos(nu t) dt,
/// truncated where exp(-x cosh t) drops below the working tolerance.
/// Even in nu by construction.
inline IntegralResult<double> bessel_k_imag_order(double nu, double x,
                                                  const QuadratureSpec& spec = {}) {
  spec.validate();
  if (!(x > 0.0))
    throw std::domain_error("bessel_k_imag_order: argument x must be > 0, got " + std::to_string(x));
  if (!std::isfinite(nu) || !std::isfinite(x))
    throw std::domain_error("bessel_k_imag_order: non-finite input");

  nu = std::abs(nu);

  // exp(-x cosh t_max) ~ tail_eps, well below the requested tolerance.
  const double tail_eps = std::min(spec.abs_tol * 1e-4, 1e-16);
  const double arg = -std::log(tail_eps) / x;
  if (arg <= 1.0) {
    // The integrand is below tail_eps on all of (0, inf); so is the integral.
    IntegralResult<double> out;
    out.value = 0.0;
    out.error_estimate = tail_eps;
    out.converged = tail_eps <= spec.abs_tol;
    return out;
  }
  const double tmax = std::acosh(arg);

  auto out = integrate_adaptive(
      [nu, x](double t) { return std::exp(-x * std::cosh(t)) * std::cos(nu * t); }, 0.0, tmax, spec);

  // Tail bound: int_{tmax}^inf exp(-x cosh t) dt <= exp(-x cosh tmax) / (x sinh tmax).
  out.error_estimate += tail_eps / (x * std::sinh(tmax));
  return out;
}

}  // namespace unruh
