#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace unruh {

/// Natural cubic spline through (x_i, y_i) with strictly increasing x.
/// Out-of-range behavior is selectable; profile tables use Zero.
class CubicSpline {
 public:
  enum class OutOfRange { Zero, Clamp };

  CubicSpline() = default;

  CubicSpline(std::vector<double> x, std::vector<double> y, OutOfRange policy = OutOfRange::Zero)
      : x_(std::move(x)), y_(std::move(y)), policy_(policy) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
      throw std::invalid_argument("CubicSpline: need >= 2 nodes and matching lengths");
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (!(x_[i] < x_[i + 1]))
        throw std::invalid_argument("CubicSpline: abscissae must be strictly increasing");

    // Second derivatives from the natural-spline tridiagonal system.
    m_.assign(n, 0.0);
    if (n > 2) {
      std::vector<double> diag(n - 2), rhs(n - 2), sub(n - 2);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        diag[i - 1] = 2.0 * (h0 + h1);
        sub[i - 1] = h1;
        rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
      }
      for (std::size_t i = 1; i < n - 2; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double w = h0 / diag[i - 1];
        diag[i] -= w * sub[i - 1];
        rhs[i] -= w * rhs[i - 1];
      }
      for (std::size_t i = n - 2; i-- > 0;) {
        const double upper = (i + 1 < n - 2) ? (x_[i + 2] - x_[i + 1]) * m_[i + 2] : 0.0;
        m_[i + 1] = (rhs[i] - upper) / diag[i];
      }
    }
  }

  bool empty() const { return x_.empty(); }
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

  double operator()(double x) const {
    if (x_.empty()) return 0.0;
    if (x < x_.front() || x > x_.back()) {
      if (policy_ == OutOfRange::Zero) return 0.0;
      x = std::clamp(x, x_.front(), x_.back());
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double u = 1.0 - t;
    return u * y_[i] + t * y_[i + 1] +
           h * h / 6.0 * ((u * u * u - u) * m_[i] + (t * t * t - t) * m_[i + 1]);
  }

 private:
  std::vector<double> x_, y_, m_;
  OutOfRange policy_ = OutOfRange::Zero;
};

}  // namespace unruh
