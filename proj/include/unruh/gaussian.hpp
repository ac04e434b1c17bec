#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace unruh {

/// Symplectic form in the (q1, p1, ..., qZ, pZ) ordering: block-diagonal
/// with 2x2 blocks [[0, 1], [-1, 0]].
inline Eigen::MatrixXd symplectic_form(int Z) {
  if (Z < 1) throw std::invalid_argument("symplectic_form: Z must be >= 1");
  Eigen::MatrixXd O = Eigen::MatrixXd::Zero(2 * Z, 2 * Z);
  for (int k = 0; k < Z; ++k) {
    O(2 * k, 2 * k + 1) = 1.0;
    O(2 * k + 1, 2 * k) = -1.0;
  }
  return O;
}

/// Gaussian state of Z modes: first moments X (length 2Z, ordering
/// q1, p1, ..., qZ, pZ) and covariance sigma (2Z x 2Z, symmetric), in the
/// convention where the vacuum covariance is the identity.
class GaussianState {
 public:
  GaussianState(Eigen::VectorXd X, Eigen::MatrixXd sigma) : X_(std::move(X)), sigma_(std::move(sigma)) {
    const auto n = sigma_.rows();
    if (n < 2 || n % 2 != 0 || sigma_.cols() != n || X_.size() != n)
      throw std::invalid_argument("GaussianState: need X of length 2Z and sigma 2Z x 2Z");
    const double asym = (sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff();
    const double scale = std::max(sigma_.cwiseAbs().maxCoeff(), 1.0);
    if (asym > 1e-10 * scale)
      throw std::invalid_argument("GaussianState: covariance is not symmetric");
    sigma_ = 0.5 * (sigma_ + sigma_.transpose()).eval();
  }

  int modes() const { return static_cast<int>(sigma_.rows()) / 2; }
  const Eigen::VectorXd& first_moments() const { return X_; }
  const Eigen::MatrixXd& covariance() const { return sigma_; }

 private:
  Eigen::VectorXd X_;
  Eigen::MatrixXd sigma_;
};

/// Gaussian channel (M, N): X -> M X, sigma -> M sigma M^T + N, with
/// per-element quadrature error estimates for channels built from integrals.
struct GaussianChannel {
  Eigen::MatrixXd M;
  Eigen::MatrixXd N;
  Eigen::MatrixXd element_errors;

  int modes() const { return static_cast<int>(M.rows()) / 2; }
};

inline GaussianState vacuum_state(int Z) {
  if (Z < 1) throw std::invalid_argument("vacuum_state: Z must be >= 1");
  return GaussianState(Eigen::VectorXd::Zero(2 * Z), Eigen::MatrixXd::Identity(2 * Z, 2 * Z));
}

inline GaussianState apply_channel(const GaussianChannel& ch, const GaussianState& state) {
  const auto n = state.covariance().rows();
  if (ch.M.rows() != n || ch.M.cols() != n || ch.N.rows() != n || ch.N.cols() != n)
    throw std::invalid_argument("apply_channel: dimension mismatch between channel and state");
  Eigen::MatrixXd sigma = ch.M * state.covariance() * ch.M.transpose() + ch.N;
  sigma = 0.5 * (sigma + sigma.transpose()).eval();  // strip rounding residue
  return GaussianState(ch.M * state.first_moments(), std::move(sigma));
}

/// Purity mu = 1 / sqrt(det sigma) in the vacuum-equals-identity convention.
inline double purity(const GaussianState& state) {
  const double det = state.covariance().partialPivLu().determinant();
  if (!(det > 0.0)) throw std::domain_error("purity: covariance determinant is not positive");
  return 1.0 / std::sqrt(det);
}

/// Relative purity sqrt(det sigma_in / det sigma_out) under the channel;
/// independent of the covariance normalization convention.
inline double relative_purity(const GaussianState& state_in, const GaussianChannel& ch) {
  const GaussianState out = apply_channel(ch, state_in);
  const double det_in = state_in.covariance().partialPivLu().determinant();
  const double det_out = out.covariance().partialPivLu().determinant();
  if (!(det_in > 0.0) || !(det_out > 0.0))
    throw std::domain_error("relative_purity: non-positive covariance determinant");
  return std::sqrt(det_in / det_out);
}

/// Covariance blocks of the fully symmetric Z-mode squeezed vacuum:
/// diagonal blocks diag(b, b), off-diagonal blocks diag(z1, z2).
struct SymmetricSqueezedBlocks {
  double b, z1, z2;
};

inline SymmetricSqueezedBlocks symmetric_squeezed_blocks(int Z, double r) {
  if (Z < 2) throw std::domain_error("symmetric_squeezed_state: Z must be >= 2");
  if (!(r >= 0.0)) throw std::domain_error("symmetric_squeezed_state: r must be >= 0");
  const double S = std::sqrt(2.0 * (Z - 1) * std::cosh(4.0 * r) + static_cast<double>(Z - 2) * Z + 2.0);
  const double sh2 = std::sinh(2.0 * r);
  SymmetricSqueezedBlocks out;
  out.z1 = (2.0 * (Z - 2) * sh2 * sh2 + Z * std::sinh(4.0 * r)) / (Z * S);
  out.z2 = (2.0 * (Z - 2) * sh2 * sh2 - Z * std::sinh(4.0 * r)) / (Z * S);
  out.b = S / Z;
  return out;
}

/// Covariance eigenvalues of the symmetric squeezed state, in cancellation-
/// free form: {b + (Z-1) z1, b - z1 (x Z-1), b + (Z-1) z2, b - z2 (x Z-1)}.
struct SymmetricSqueezedEigenvalues {
  double q_top, q_rest, p_top, p_rest;  // q_rest and p_rest have multiplicity Z-1
};

inline SymmetricSqueezedEigenvalues symmetric_squeezed_eigenvalues(int Z, double r) {
  if (Z < 2) throw std::domain_error("symmetric_squeezed_eigenvalues: Z must be >= 2");
  const double S = std::sqrt(2.0 * (Z - 1) * std::cosh(4.0 * r) + static_cast<double>(Z - 2) * Z + 2.0);
  const double e4 = std::expm1(4.0 * r);    // e^{4r} - 1
  const double em4 = -std::expm1(-4.0 * r); // 1 - e^{-4r}
  SymmetricSqueezedEigenvalues out;
  out.q_top = (Z + (Z - 1) * e4) / S;
  out.q_rest = (Z - em4) / S;
  out.p_top = (Z - (Z - 1) * em4) / S;
  out.p_rest = (Z + e4) / S;
  return out;
}

/// Fully symmetric Z-mode pure squeezed vacuum state with squeezing r.
inline GaussianState symmetric_squeezed_state(int Z, double r) {
  const auto [b, z1, z2] = symmetric_squeezed_blocks(Z, r);
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(2 * Z, 2 * Z);
  for (int i = 0; i < Z; ++i)
    for (int j = 0; j < Z; ++j) {
      if (i == j) {
        sigma(2 * i, 2 * i) = b;
        sigma(2 * i + 1, 2 * i + 1) = b;
      } else {
        sigma(2 * i, 2 * j) = z1;
        sigma(2 * i + 1, 2 * j + 1) = z2;
      }
    }
  return GaussianState(Eigen::VectorXd::Zero(2 * Z), std::move(sigma));
}

/// Moduli of the eigenvalues of i Omega sigma, deduplicated to Z values.
/// Physical states have all of them >= 1.
inline std::vector<double> symplectic_eigenvalues(const GaussianState& state) {
  const int Z = state.modes();
  const Eigen::MatrixXd A = symplectic_form(Z) * state.covariance();
  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  std::vector<double> mags(2 * Z);
  for (int i = 0; i < 2 * Z; ++i) mags[i] = std::abs(es.eigenvalues()[i]);
  std::sort(mags.begin(), mags.end());
  std::vector<double> out(Z);
  for (int i = 0; i < Z; ++i) out[i] = 0.5 * (mags[2 * i] + mags[2 * i + 1]);  // pair average
  return out;
}

/// Minimum eigenvalue of sigma + i Omega; >= 0 (within tolerance) for states
/// satisfying the uncertainty relation.
inline double uncertainty_min_eig(const Eigen::MatrixXd& sigma) {
  const int n = static_cast<int>(sigma.rows());
  Eigen::MatrixXcd H = sigma.cast<std::complex<double>>();
  H += std::complex<double>(0.0, 1.0) * symplectic_form(n / 2).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline double uncertainty_min_eig(const GaussianState& state) {
  return uncertainty_min_eig(state.covariance());
}

/// Minimum eigenvalue of N + i(Omega - M Omega M^T); >= 0 (within tolerance)
/// for physical channels.
inline double channel_physicality_min_eig(const GaussianChannel& ch) {
  const int Z = ch.modes();
  const Eigen::MatrixXd O = symplectic_form(Z);
  Eigen::MatrixXcd H = ch.N.cast<std::complex<double>>();
  H += std::complex<double>(0.0, 1.0) * (O - ch.M * O * ch.M.transpose()).cast<std::complex<double>>();
  H = 0.5 * (H + H.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// ----- JSON exchange formats -----
// state:   {"Z": int, "X": [reals], "sigma": [[reals]]}
// channel: {"M": [[...]], "N": [[...]], "errors": [[...]]}

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(name + ": expected a non-empty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j.at(i).size()) != cols)
      throw std::invalid_argument(name + ": ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  }
  return m;
}

inline nlohmann::json state_to_json(const GaussianState& s) {
  nlohmann::json j;
  j["Z"] = s.modes();
  j["X"] = std::vector<double>(s.first_moments().data(), s.first_moments().data() + s.first_moments().size());
  j["sigma"] = matrix_to_json(s.covariance());
  return j;
}

inline GaussianState state_from_json(const nlohmann::json& j) {
  for (const char* key : {"Z", "X", "sigma"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("state: missing field '") + key + "'");
  const int Z = j.at("Z").get<int>();
  const auto xv = j.at("X").get<std::vector<double>>();
  if (static_cast<int>(xv.size()) != 2 * Z) throw std::invalid_argument("state: X must have length 2Z");
  Eigen::VectorXd X = Eigen::Map<const Eigen::VectorXd>(xv.data(), xv.size());
  Eigen::MatrixXd sigma = matrix_from_json(j.at("sigma"), "state.sigma");
  if (sigma.rows() != 2 * Z || sigma.cols() != 2 * Z)
    throw std::invalid_argument("state: sigma must be 2Z x 2Z");
  return GaussianState(std::move(X), std::move(sigma));
}

inline nlohmann::json channel_to_json(const GaussianChannel& ch) {
  nlohmann::json j;
  j["M"] = matrix_to_json(ch.M);
  j["N"] = matrix_to_json(ch.N);
  j["errors"] = matrix_to_json(ch.element_errors);
  return j;
}

inline GaussianChannel channel_from_json(const nlohmann::json& j) {
  for (const char* key : {"M", "N"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("channel: missing field '") + key + "'");
  GaussianChannel ch;
  ch.M = matrix_from_json(j.at("M"), "channel.M");
  ch.N = matrix_from_json(j.at("N"), "channel.N");
  ch.element_errors = j.contains("errors") ? matrix_from_json(j.at("errors"), "channel.errors")
                                           : Eigen::MatrixXd::Zero(ch.M.rows(), ch.M.cols());
  if (ch.M.rows() != ch.M.cols() || ch.N.rows() != ch.M.rows() || ch.N.cols() != ch.M.rows() ||
      ch.M.rows() % 2 != 0)
    throw std::invalid_argument("channel: M and N must be square 2Z x 2Z");
  return ch;
}

}  // namespace unruh
