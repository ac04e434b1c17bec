// Brute-force reference implementations used only by the test suite.
// Deliberately naive: fixed-grid composite Simpson, no adaptivity, no reuse
// of the library's integration machinery beyond plain function evaluation.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

// Composite Simpson on a fixed grid (n must be even).
template <typename F>
auto simpson(F&& f, double a, double b, int n) {
  using T = decltype(f(a));
  const double h = (b - a) / n;
  T sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  return sum * (h / 3.0);
}

// K_{i nu}(x) from the cosine-transform representation on a very fine fixed
// grid; independent of the adaptive implementation it checks.
inline double bessel_k_imag(double nu, double x, int n = 200000) {
  const double tmax = std::acosh(std::max(45.0 / x, 1.0 + 1e-12));
  return simpson([&](double t) { return std::exp(-x * std::cosh(t)) * std::cos(nu * t); }, 0.0,
                 tmax, n);
}

// Fine-grid quadrature over (0, upper) with the same square-root clustering
// the library uses, but non-adaptive.
template <typename F>
auto semi_infinite(F&& f, double upper, int n = 200000) {
  return simpson([&](double u) { return f(u * u) * 2.0 * u; }, 1e-12, std::sqrt(upper), n);
}

}  // namespace oracle
