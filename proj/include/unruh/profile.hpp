#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "unruh/interp.hpp"

namespace unruh {

using Complex = std::complex<double>;

/// Gaussian amplitude profile
///   g(x) = amplitude (2 pi width^2)^{-1/4} exp(-(x-center)^2 / (4 width^2))
///          * exp(i linear_phase x).
/// |g|^2 is a normal density with standard deviation `width` scaled by
/// |amplitude|^2, so |amplitude| = 1 gives a unit-norm profile on the line.
struct GaussianBump {
  double center = 0.0;
  double width = 1.0;
  Complex amplitude = 1.0;
  double linear_phase = 0.0;
};

/// Profile tabulated on a strictly increasing grid, interpolated with a
/// natural cubic spline per component; zero outside the table range.
class TabulatedProfile {
 public:
  TabulatedProfile(std::vector<double> x, std::vector<Complex> values) {
    if (x.size() != values.size() || x.size() < 2)
      throw std::invalid_argument("TabulatedProfile: need >= 2 matching rows");
    std::vector<double> re(values.size()), im(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      re[i] = values[i].real();
      im[i] = values[i].imag();
    }
    x_min_ = x.front();
    x_max_ = x.back();
    re_ = CubicSpline(x, std::move(re), CubicSpline::OutOfRange::Zero);
    im_ = CubicSpline(std::move(x), std::move(im), CubicSpline::OutOfRange::Zero);
  }

  Complex operator()(double x) const { return {re_(x), im_(x)}; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }

 private:
  CubicSpline re_, im_;
  double x_min_ = 0.0, x_max_ = 0.0;
};

/// A complex amplitude profile over one real variable (k or Omega).
class Profile {
 public:
  Profile() = default;  // identically zero
  Profile(GaussianBump b) : rep_(b) {
    if (!(b.width > 0.0)) throw std::invalid_argument("GaussianBump: width must be > 0");
  }
  Profile(TabulatedProfile t) : rep_(std::move(t)) {}

  bool is_zero() const { return std::holds_alternative<std::monostate>(rep_); }

  Complex operator()(double x) const {
    if (const auto* b = std::get_if<GaussianBump>(&rep_)) {
      const double norm = std::pow(2.0 * std::numbers::pi * b->width * b->width, -0.25);
      const double d = x - b->center;
      const double mag = norm * std::exp(-d * d / (4.0 * b->width * b->width));
      return b->amplitude * mag * std::polar(1.0, b->linear_phase * x);
    }
    if (const auto* t = std::get_if<TabulatedProfile>(&rep_)) return (*t)(x);
    return {0.0, 0.0};
  }

  /// Interval outside of which |g| < threshold (with weight exp(growth*x)
  /// applied on the upper side when growth > 0). Returns {0, 0} for the zero
  /// profile or when the whole profile is below threshold.
  std::pair<double, double> support(double threshold, double growth = 0.0) const {
    if (const auto* b = std::get_if<GaussianBump>(&rep_)) {
      const double peak = std::abs(b->amplitude) * std::pow(2.0 * std::numbers::pi * b->width * b->width, -0.25);
      if (peak <= threshold) return {0.0, 0.0};
      const double half = 2.0 * b->width * std::sqrt(std::log(peak / threshold));
      double hi = b->center + half;
      if (growth > 0.0) {
        // widen until the weighted envelope falls below threshold
        const double w4 = 4.0 * b->width * b->width;
        for (int i = 0; i < 400; ++i) {
          const double d = hi - b->center;
          if (peak * std::exp(-d * d / w4 + growth * hi) <= threshold) break;
          hi += 0.25 * b->width;
        }
      }
      return {b->center - half, hi};
    }
    if (const auto* t = std::get_if<TabulatedProfile>(&rep_)) return {t->x_min(), t->x_max()};
    return {0.0, 0.0};
  }

  Profile scaled(Complex c) const {
    if (const auto* b = std::get_if<GaussianBump>(&rep_)) {
      GaussianBump s = *b;
      s.amplitude *= c;
      return Profile(s);
    }
    if (std::holds_alternative<std::monostate>(rep_)) return {};
    throw std::logic_error("Profile::scaled is only supported for parametric profiles");
  }

 private:
  std::variant<std::monostate, GaussianBump, TabulatedProfile> rep_;
};

/// Reads a plain-text profile table: one "x value_real value_imag" row per
/// line, first column strictly increasing, '#' comments allowed.
inline Profile load_profile_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile table: " + path);
  std::vector<double> x;
  std::vector<Complex> v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double xi, re, im;
    if (!(row >> xi)) continue;  // blank line
    if (!(row >> re >> im))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 'x value_real value_imag'");
    if (!x.empty() && !(xi > x.back()))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": first column must be strictly increasing");
    x.push_back(xi);
    v.emplace_back(re, im);
  }
  if (x.size() < 2) throw std::runtime_error(path + ": table needs at least two rows");
  return Profile(TabulatedProfile(std::move(x), std::move(v)));
}

inline void write_profile_table(std::ostream& out, const std::vector<double>& x,
                                const std::vector<Complex>& v) {
  char buf[80];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", x[i], v[i].real(), v[i].imag());
    out << buf;
  }
}

}  // namespace unruh
