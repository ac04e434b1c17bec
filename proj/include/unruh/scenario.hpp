#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "unruh/bogoliubov.hpp"
#include "unruh/gaussian.hpp"
#include "unruh/parallel.hpp"
#include "unruh/spectrum.hpp"

namespace unruh {

/// Overlap coefficient alpha as a function of the observers' proper
/// acceleration, either computed from the shipped packet family or loaded
/// as a table. Values must lie in (0, 1]; monotone decrease is expected on
/// physical grounds but only diagnosed, not enforced.
class AlphaProfile {
 public:
  static AlphaProfile from_table(std::vector<double> acc, std::vector<double> alpha) {
    if (acc.size() != alpha.size() || acc.size() < 2)
      throw std::invalid_argument("AlphaProfile: need >= 2 matching rows");
    for (std::size_t i = 0; i + 1 < acc.size(); ++i)
      if (!(acc[i] < acc[i + 1]))
        throw std::invalid_argument("AlphaProfile: accelerations must be strictly increasing");
    AlphaProfile p;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (!(alpha[i] > 0.0) || alpha[i] > 1.0 + 1e-9)
        throw std::invalid_argument("AlphaProfile: alpha must lie in (0, 1], got " +
                                    std::to_string(alpha[i]));
      alpha[i] = std::min(alpha[i], 1.0);
      if (i > 0 && alpha[i] > alpha[i - 1] + 1e-12) {
        p.monotone_ = false;
        p.diagnostics_.push_back("alpha increases between A = " + std::to_string(acc[i - 1]) +
                                 " and A = " + std::to_string(acc[i]));
      }
    }
    p.acc_ = std::move(acc);
    p.alpha_ = std::move(alpha);
    return p;
  }

  /// Default packet family: a wedge-I frequency bump at the field mass with
  /// width proportional to the acceleration, paired with a Minkowski packet
  /// at rest a proper distance 1/A from the horizon. alpha(A) is the
  /// Bogolyubov overlap |alpha_11| of the pair, computed in frequency space.
  static AlphaProfile computed_default(const std::vector<double>& accelerations, double mass,
                                       const QuadratureSpec& quad, int threads = 1) {
    if (accelerations.size() < 2)
      throw std::invalid_argument("AlphaProfile: need at least two acceleration samples");
    std::vector<double> alpha(accelerations.size());
    parallel_for(static_cast<int>(accelerations.size()), threads, [&](int i) {
      const double A = accelerations[i];
      if (!(A > 0.0)) throw std::invalid_argument("AlphaProfile: accelerations must be > 0");
      const RindlerGeometry geom{A, mass, 0.0};
      auto psi = RindlerSpectrum::gaussian(Wedge::I, mass, A).normalized(quad);
      auto phi = MinkowskiSpectrum::gaussian(0.0, 0.5 * mass, 1.0 / A);
      auto bogo = bogoliubov_matrices_kspace({psi}, {phi}, geom, quad);
      alpha[i] = std::abs(bogo.alpha(0, 0));
    });
    return from_table(accelerations, std::move(alpha));
  }

  double operator()(double A) const {
    if (A < acc_.front() - 1e-12 || A > acc_.back() + 1e-12)
      throw std::out_of_range("AlphaProfile: acceleration " + std::to_string(A) +
                              " outside the covered range [" + std::to_string(acc_.front()) + ", " +
                              std::to_string(acc_.back()) + "]");
    A = std::clamp(A, acc_.front(), acc_.back());
    const auto it = std::upper_bound(acc_.begin(), acc_.end(), A);
    std::size_t i = (it == acc_.begin()) ? 1 : static_cast<std::size_t>(it - acc_.begin());
    i = std::min(i, acc_.size() - 1);
    const double t = (A - acc_[i - 1]) / (acc_[i] - acc_[i - 1]);
    return (1.0 - t) * alpha_[i - 1] + t * alpha_[i];
  }

  bool monotone() const { return monotone_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }
  const std::vector<double>& accelerations() const { return acc_; }
  const std::vector<double>& alphas() const { return alpha_; }

 private:
  std::vector<double> acc_, alpha_;
  bool monotone_ = true;
  std::vector<std::string> diagnostics_;
};

struct SweepGrid {
  std::vector<double> accelerations;
  std::vector<double> squeezings;
  std::vector<int> mode_counts;

  void validate() const {
    if (accelerations.empty() || squeezings.empty() || mode_counts.empty())
      throw std::invalid_argument("SweepGrid: all three axes must be non-empty");
    for (double a : accelerations)
      if (!std::isfinite(a)) throw std::invalid_argument("SweepGrid: non-finite acceleration");
    for (double r : squeezings)
      if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("SweepGrid: squeezings must be >= 0");
    for (int z : mode_counts)
      if (z < 2) throw std::invalid_argument("SweepGrid: mode counts must be >= 2");
  }
};

struct SweepRow {
  double acceleration;
  double squeezing;
  int modes;
  double alpha;
  double mu_rel;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// The symmetric-scenario channel: M = alpha * Id, N = (1 - alpha^2) * Id.
inline GaussianChannel diagonal_channel(double alpha, int Z) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::domain_error("diagonal_channel: alpha must lie in (0, 1], got " + std::to_string(alpha));
  if (Z < 1) throw std::domain_error("diagonal_channel: Z must be >= 1");
  GaussianChannel ch;
  ch.M = alpha * Eigen::MatrixXd::Identity(2 * Z, 2 * Z);
  ch.N = (1.0 - alpha * alpha) * Eigen::MatrixXd::Identity(2 * Z, 2 * Z);
  ch.element_errors = Eigen::MatrixXd::Zero(2 * Z, 2 * Z);
  return ch;
}

/// Relative purity of the symmetric squeezed state under the diagonal
/// channel, from the covariance eigenvalues in cancellation-free form:
///   mu_rel = prod_i (alpha^2 lambda_i + 1 - alpha^2)^{-1/2}.
inline double relative_purity_closed_form(int Z, double r, double alpha) {
  const auto ev = symmetric_squeezed_eigenvalues(Z, r);
  const double a2 = alpha * alpha, b2 = 1.0 - a2;
  auto factor = [&](double lam) { return a2 * lam + b2; };
  double prod = factor(ev.q_top) * factor(ev.p_top);
  prod *= std::pow(factor(ev.q_rest) * factor(ev.p_rest), Z - 1);
  return 1.0 / std::sqrt(prod);
}

/// Relative purity over the grid; rows in grid order (acceleration outer,
/// squeezing middle, mode count inner) regardless of execution order.
inline SweepResult relative_purity_surface(const SweepGrid& grid, const AlphaProfile& profile,
                                           int threads = 1) {
  grid.validate();
  SweepResult out;
  for (double A : grid.accelerations)
    for (double r : grid.squeezings)
      for (int Z : grid.mode_counts) out.rows.push_back({A, r, Z, profile(A), 0.0});

  parallel_for(static_cast<int>(out.rows.size()), threads, [&](int i) {
    SweepRow& row = out.rows[i];
    const GaussianState in = symmetric_squeezed_state(row.modes, row.squeezing);
    row.mu_rel = relative_purity(in, diagonal_channel(row.alpha, row.modes));
  });
  return out;
}

/// CSV with header `A,r,Z,alpha,mu_rel`, one row per grid point,
/// 12 significant digits.
inline void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << "A,r,Z,alpha,mu_rel\n";
  char buf[160];
  for (const auto& row : result.rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%d,%.12g,%.12g\n", row.acceleration, row.squeezing,
                  row.modes, row.alpha, row.mu_rel);
    os << buf;
  }
}

}  // namespace unruh
