// Random matrix samplers: Ginibre, Haar unitary, Haar corners, and the
// Gaussian construction of spectral-measure weights.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mopuc/linalg.hpp"
#include "mopuc/rng.hpp"

namespace mopuc {

// Ginibre matrix: i.i.d. standard complex Gaussian entries
// (real and imaginary parts independent N(0, 1/2)).
// Entries are drawn in column-major order; the order is part of the
// reproducibility contract.
inline ComplexMatrix sample_ginibre(Eigen::Index rows, Eigen::Index cols,
                                    RngStream& rng) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("sample_ginibre: negative size");
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = rng.complex_gaussian();
  return g;
}

inline ComplexMatrix sample_ginibre(Eigen::Index n, RngStream& rng) {
  return sample_ginibre(n, n, rng);
}

// Haar-distributed unitary: QR of a Ginibre matrix with the phase fix
// U = Q * diag(r_ii / |r_ii|), which makes the factorization unique and
// the law exactly Haar.
inline ComplexMatrix sample_haar(Eigen::Index n, RngStream& rng) {
  if (n <= 0) throw std::invalid_argument("sample_haar: dimension must be positive");
  const ComplexMatrix g = sample_ginibre(n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix u = qr.householderQ();
  const ComplexVector d = qr.matrixQR().diagonal();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double m = std::abs(d(j));
    u.col(j) *= (m > 0.0) ? d(j) / m : Complex(1.0, 0.0);
  }
  return u;
}

// Top-left p x p corner of a Haar unitary of size n. Restricted to the
// density regime n > 2p in which the corner law has the density
// K_{p,n} det(I - V V^*)^(n-2p) on the matrix unit ball.
inline ComplexMatrix sample_corner(Eigen::Index n, Eigen::Index p, RngStream& rng) {
  if (p <= 0) throw std::invalid_argument("sample_corner: p must be positive");
  if (n <= 2 * p)
    throw std::invalid_argument("sample_corner: requires n > 2p (density regime)");
  return sample_haar(n, rng).topLeftCorner(p, p);
}

// Log of the corner density at v, log K_{p,n} + (n-2p) log det(I - v v^*).
// Returns -infinity when v v^* >= I (outside the open ball, density zero).
// The constant is evaluated with log-factorials so large n is exact.
inline double corner_log_density(const ComplexMatrix& v, Eigen::Index n) {
  require_square(v, "corner_log_density");
  const Eigen::Index p = v.rows();
  if (p <= 0) throw std::invalid_argument("corner_log_density: empty matrix");
  if (n <= 2 * p)
    throw std::invalid_argument("corner_log_density: requires n > 2p");
  double log_k = -static_cast<double>(p) * static_cast<double>(p) *
                 std::log(std::numbers::pi);
  // K_{p,n} = pi^{-p^2} * [(n-p)! ... (n-1)!] / [(n-2p)! ... (n-p-1)!]
  for (Eigen::Index j = n - p; j <= n - 1; ++j)
    log_k += std::lgamma(static_cast<double>(j) + 1.0);
  for (Eigen::Index j = n - 2 * p; j <= n - p - 1; ++j)
    log_k -= std::lgamma(static_cast<double>(j) + 1.0);
  const ComplexMatrix defect =
      ComplexMatrix::Identity(p, p) - v * v.adjoint();
  const double ld = log_det_hermitian(defect);
  if (!std::isfinite(ld)) return -std::numeric_limits<double>::infinity();
  return log_k + static_cast<double>(n - 2 * p) * ld;
}

// Weight tuple of the Gaussian construction: a_k i.i.d. standard complex
// Gaussian p-vectors, v_k = a_k a_k^*, h = sum v_k, w_k = h^{-1/2} v_k h^{-1/2}.
// The w_k are PSD with rank <= 1 and sum to the identity. A numerically
// singular h (min eigenvalue < 1e-12 * tr h) triggers a resample.
inline std::vector<ComplexMatrix> sample_weights(Eigen::Index n_atoms,
                                                 Eigen::Index p, RngStream& rng) {
  if (p <= 0) throw std::invalid_argument("sample_weights: p must be positive");
  if (n_atoms < p)
    throw std::invalid_argument("sample_weights: need at least p atoms");
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<ComplexVector> a(static_cast<size_t>(n_atoms));
    ComplexMatrix h = ComplexMatrix::Zero(p, p);
    for (auto& ak : a) {
      ak.resize(p);
      for (Eigen::Index i = 0; i < p; ++i) ak(i) = rng.complex_gaussian();
      h += ak * ak.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    const double tr = h.trace().real();
    if (es.eigenvalues().minCoeff() < 1e-12 * tr) continue;  // resample signal
    RealVector inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
    const ComplexMatrix hih =
        es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
    std::vector<ComplexMatrix> w;
    w.reserve(a.size());
    for (const auto& ak : a) {
      const ComplexVector b = hih * ak;
      w.push_back(b * b.adjoint());
    }
    return w;
  }
  throw std::runtime_error("sample_weights: persistent singular Gram matrix");
}

// Random strict contraction with operator norm uniform on (0, norm_bound]:
// a Ginibre draw rescaled to a target top singular value. Test/experiment
// utility for generating coefficient sequences.
inline ComplexMatrix sample_ball_contraction(Eigen::Index p, RngStream& rng,
                                             double norm_bound) {
  ComplexMatrix g = sample_ginibre(p, rng);
  Eigen::JacobiSVD<ComplexMatrix> svd(g);
  const double top = svd.singularValues()(0);
  if (top <= 0.0) return ComplexMatrix::Zero(p, p);
  return g * (norm_bound * rng.uniform() / top);
}

}  // namespace mopuc
