#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "unruh/modes.hpp"
#include "unruh/overlaps.hpp"
#include "unruh/quadrature.hpp"
#include "unruh/spectrum.hpp"

namespace unruh {

/// Discrete Bogolyubov coefficients between the accelerated-frame packets
/// psi_i and the inertial packets phi_j:
///   alpha_ij = (psi_i | phi_j),   beta_ij = -(psi_i | phi_j*).
struct BogoliubovMatrices {
  Eigen::MatrixXcd alpha;
  Eigen::MatrixXcd beta;
  Eigen::MatrixXd error_estimates;

  int size() const { return static_cast<int>(alpha.rows()); }
};

/// Normalization integral of a Rindler packet (equals 1 for valid modes):
///   int_0^inf (|(psi, w_I)|^2 + |(psi, w_II)|^2) dOmega.
inline double check_normalization(const RindlerSpectrum& spec, const RindlerGeometry& geom,
                                  const QuadratureSpec& quad) {
  geom.validate();
  return spec.norm_squared(quad);
}

/// Position-space route: alpha and beta from Klein-Gordon quadrature on the
/// t = 0 slice.
inline BogoliubovMatrices bogoliubov_matrices(const std::vector<RindlerSpectrum>& psi_specs,
                                              const std::vector<MinkowskiSpectrum>& phi_specs,
                                              const RindlerGeometry& geom,
                                              const QuadratureSpec& quad) {
  geom.validate();
  if (psi_specs.size() != phi_specs.size())
    throw std::invalid_argument("bogoliubov_matrices: psi and phi lists must have equal length");
  const int Z = static_cast<int>(psi_specs.size());

  std::vector<SliceMode> psi, phi;
  psi.reserve(Z);
  phi.reserve(Z);
  for (const auto& s : psi_specs) psi.push_back(make_slice_mode(s, geom, quad));
  for (const auto& s : phi_specs) phi.push_back(make_slice_mode(s, geom, quad));

  BogoliubovMatrices out;
  out.alpha.resize(Z, Z);
  out.beta.resize(Z, Z);
  out.error_estimates.resize(Z, Z);
  for (int i = 0; i < Z; ++i)
    for (int j = 0; j < Z; ++j) {
      auto a = kg_inner_product(psi[i], phi[j], quad);
      auto b = kg_inner_product(psi[i], conjugated(phi[j]), quad);
      out.alpha(i, j) = a.value;
      out.beta(i, j) = -b.value;
      out.error_estimates(i, j) = a.error_estimate + b.error_estimate;
    }
  return out;
}

/// Frequency-space route through the closed-form plane-wave overlaps; used
/// as the fast path for packet constructions and as a cross-check of the
/// position-space quadrature.
inline BogoliubovMatrices bogoliubov_matrices_kspace(const std::vector<RindlerSpectrum>& psi_specs,
                                                     const std::vector<MinkowskiSpectrum>& phi_specs,
                                                     const RindlerGeometry& geom,
                                                     const QuadratureSpec& quad) {
  geom.validate();
  if (psi_specs.size() != phi_specs.size())
    throw std::invalid_argument("bogoliubov_matrices: psi and phi lists must have equal length");
  const int Z = static_cast<int>(psi_specs.size());

  BogoliubovMatrices out;
  out.alpha.resize(Z, Z);
  out.beta.resize(Z, Z);
  out.error_estimates.resize(Z, Z);
  const QuadratureSpec inner = quad.tightened(0.05);

  for (int j = 0; j < Z; ++j) {
    const auto [klo, khi] = phi_specs[j].f.support(1e-15);
    const double kap_lo = std::asinh(klo / geom.m), kap_hi = std::asinh(khi / geom.m);
    for (int i = 0; i < Z; ++i) {
      auto a = integrate_adaptive(
          [&](double kap) {
            const double k = geom.m * std::sinh(kap);
            const double w = geom.m * std::cosh(kap);
            return std::conj(packet_alpha_content(psi_specs[i], geom, k, inner)) *
                   phi_specs[j].f(k) * w;
          },
          kap_lo, kap_hi, quad);
      auto b = integrate_adaptive(
          [&](double kap) {
            const double k = geom.m * std::sinh(kap);
            const double w = geom.m * std::cosh(kap);
            return packet_beta_content(psi_specs[i], geom, k, inner) * phi_specs[j].f(k) * w;
          },
          kap_lo, kap_hi, quad);
      out.alpha(i, j) = a.value;
      out.beta(i, j) = std::conj(b.value);
      out.error_estimates(i, j) = a.error_estimate + b.error_estimate;
    }
  }
  return out;
}

/// For D < 0 the wedges overlap and packets in opposite wedges need not
/// commute; this measures the residual cross-wedge Klein-Gordon overlaps so
/// callers can emit a diagnostic. All residuals vanish for D >= 0.
struct WedgeOverlapDiagnostic {
  double max_overlap = 0.0;
  bool warn = false;
  std::vector<std::string> messages;
};

inline WedgeOverlapDiagnostic wedge_overlap_diagnostic(const std::vector<RindlerSpectrum>& psi_specs,
                                                       const RindlerGeometry& geom,
                                                       const QuadratureSpec& quad,
                                                       double threshold = 1e-8) {
  geom.validate();
  WedgeOverlapDiagnostic out;
  if (geom.D >= 0.0) return out;

  const int Z = static_cast<int>(psi_specs.size());
  std::vector<SliceMode> part_I(Z), part_II(Z);
  std::vector<bool> has_I(Z, false), has_II(Z, false);
  for (int i = 0; i < Z; ++i) {
    if (!psi_specs[i].g_I.is_zero()) {
      part_I[i] = make_slice_mode(RindlerSpectrum{psi_specs[i].g_I, {}}, geom, quad);
      has_I[i] = true;
    }
    if (!psi_specs[i].g_II.is_zero()) {
      part_II[i] = make_slice_mode(RindlerSpectrum{{}, psi_specs[i].g_II}, geom, quad);
      has_II[i] = true;
    }
  }
  for (int i = 0; i < Z; ++i)
    for (int j = 0; j < Z; ++j) {
      if (!has_I[i] || !has_II[j]) continue;
      const double o1 = std::abs(kg_inner_product(part_I[i], part_II[j], quad).value);
      const double o2 = std::abs(kg_inner_product(part_I[i], conjugated(part_II[j]), quad).value);
      const double o = o1 + o2;
      out.max_overlap = std::max(out.max_overlap, o);
      if (o > threshold)
        out.messages.push_back("cross-wedge overlap between mode " + std::to_string(i) +
                               " (wedge I part) and mode " + std::to_string(j) +
                               " (wedge II part) is " + std::to_string(o));
    }
  out.warn = out.max_overlap > threshold;
  return out;
}

}  // namespace unruh
