// Matrix measures on the unit circle.
//
// Two carriers: AtomicMatrixMeasure (finitely many atoms with PSD matrix
// weights, the output of spectral decompositions) and GridDensityMeasure
// (a density sampled on a uniform angle grid, plus an optional singular
// atomic part). Angles always live in (-pi, pi].

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mopuc/linalg.hpp"

namespace mopuc {

struct AtomicMatrixMeasure {
  Eigen::Index p = 0;
  std::vector<double> atoms;            // strictly increasing in (-pi, pi]
  std::vector<ComplexMatrix> weights;   // PSD p x p, paired with atoms

  ComplexMatrix total_mass() const {
    ComplexMatrix s = ComplexMatrix::Zero(p, p);
    for (const auto& w : weights) s += w;
    return s;
  }

  // Structural checks; probability normalization (sum = I) is asserted only
  // when the measure stands alone, since singular parts carry mass < I.
  void validate(bool require_probability, double norm_tol = 1e-9) const {
    if (p <= 0) throw std::invalid_argument("AtomicMatrixMeasure: p must be positive");
    if (atoms.size() != weights.size())
      throw std::invalid_argument("AtomicMatrixMeasure: atoms/weights length mismatch");
    for (size_t k = 0; k < atoms.size(); ++k) {
      if (atoms[k] <= -std::numbers::pi || atoms[k] > std::numbers::pi)
        throw std::invalid_argument("AtomicMatrixMeasure: atom outside (-pi, pi]");
      if (k > 0 && atoms[k] <= atoms[k - 1])
        throw std::invalid_argument("AtomicMatrixMeasure: atoms not strictly increasing");
      if (weights[k].rows() != p || weights[k].cols() != p)
        throw std::invalid_argument("AtomicMatrixMeasure: weight has wrong shape");
      if (!is_hermitian(weights[k]))
        throw std::invalid_argument("AtomicMatrixMeasure: weight not Hermitian");
    }
    if (require_probability) {
      const ComplexMatrix defect =
          total_mass() - ComplexMatrix::Identity(p, p);
      if (max_abs(defect) > norm_tol)
        throw std::invalid_argument("AtomicMatrixMeasure: weights do not sum to identity");
    }
  }
};

// Density values on the uniform grid theta_j = -pi + 2*pi*j/M, j = 0..M-1,
// with M a power of two. Integrals of smooth integrands use the periodic
// trapezoid rule, which here is the plain average (1/M) * sum.
struct GridDensityMeasure {
  Eigen::Index p = 0;
  std::vector<ComplexMatrix> densities;           // PSD p x p per node
  std::optional<AtomicMatrixMeasure> singular;    // optional atoms, mass <= I

  Eigen::Index grid_size() const { return static_cast<Eigen::Index>(densities.size()); }

  double angle(Eigen::Index j) const {
    return -std::numbers::pi +
           2.0 * std::numbers::pi * static_cast<double>(j) /
               static_cast<double>(grid_size());
  }

  ComplexMatrix mean_density() const {
    ComplexMatrix s = ComplexMatrix::Zero(p, p);
    for (const auto& w : densities) s += w;
    return s / static_cast<double>(densities.size());
  }

  void validate(double norm_tol = 1e-6) const {
    if (p <= 0) throw std::invalid_argument("GridDensityMeasure: p must be positive");
    const size_t m = densities.size();
    if (m == 0 || (m & (m - 1)) != 0)
      throw std::invalid_argument("GridDensityMeasure: grid size must be a power of two");
    for (const auto& w : densities)
      if (w.rows() != p || w.cols() != p || !is_hermitian(w))
        throw std::invalid_argument("GridDensityMeasure: density node not Hermitian p x p");
    ComplexMatrix mass = mean_density();
    if (singular) {
      if (singular->p != p)
        throw std::invalid_argument("GridDensityMeasure: singular part has wrong p");
      singular->validate(false);
      mass += singular->total_mass();
    }
    if (max_abs(mass - ComplexMatrix::Identity(p, p)) > norm_tol)
      throw std::invalid_argument("GridDensityMeasure: total mass is not the identity");
  }
};

// Spectral measure of a unitary U with respect to the first p coordinates:
// atoms at the eigenvalue angles, weight (P v_k)(P v_k)^* summed over an
// orthonormal eigenbasis, eigenvalues closer than 1e-9 merged into one atom.
// Phase changes of the eigenvectors do not affect the result.
inline AtomicMatrixMeasure spectral_measure(const ComplexMatrix& u, Eigen::Index p,
                                            double merge_tol = 1e-9) {
  require_unitary(u, "spectral_measure");
  const Eigen::Index n = u.rows();
  if (p <= 0 || p > n)
    throw std::invalid_argument("spectral_measure: need 1 <= p <= dim");
  const UnitaryEigen eig = eig_unitary(u);
  AtomicMatrixMeasure mu;
  mu.p = p;
  Eigen::Index k = 0;
  while (k < n) {
    Eigen::Index end = k + 1;
    while (end < n && eig.angles(end) - eig.angles(k) <= merge_tol) ++end;
    ComplexMatrix w = ComplexMatrix::Zero(p, p);
    double theta = 0.0;
    for (Eigen::Index i = k; i < end; ++i) {
      const ComplexVector head = eig.vectors.col(i).head(p);
      w += head * head.adjoint();
      theta += eig.angles(i);
    }
    mu.atoms.push_back(theta / static_cast<double>(end - k));
    mu.weights.push_back(std::move(w));
    k = end;
  }
  mu.validate(true);
  return mu;
}

// l-th matrix moment, sum_k e^{i l theta_k} w_k; m_{-l} = m_l^* holds by
// construction.
inline ComplexMatrix moment(const AtomicMatrixMeasure& mu, long l) {
  ComplexMatrix m = ComplexMatrix::Zero(mu.p, mu.p);
  for (size_t k = 0; k < mu.atoms.size(); ++k)
    m += std::polar(1.0, static_cast<double>(l) * mu.atoms[k]) * mu.weights[k];
  return m;
}

inline ComplexMatrix moment(const GridDensityMeasure& mu, long l) {
  ComplexMatrix m = ComplexMatrix::Zero(mu.p, mu.p);
  for (Eigen::Index j = 0; j < mu.grid_size(); ++j)
    m += std::polar(1.0, static_cast<double>(l) * mu.angle(j)) * mu.densities[j];
  m /= static_cast<double>(mu.grid_size());
  if (mu.singular) m += moment(*mu.singular, l);
  return m;
}

enum class MomentSpacePosition { interior, boundary, outside };

// Position of (m_0, ..., m_J) relative to the matrix moment space: the
// sequence comes from a matrix probability measure iff the block Toeplitz
// matrix with block (i, j) = m_{i-j} (m_{-k} = m_k^*) is PSD. Classification
// is by the minimal eigenvalue against +/- 1e-9 * (J+1) * p.
inline MomentSpacePosition moment_space_position(
    const std::vector<ComplexMatrix>& moments) {
  if (moments.empty())
    throw std::invalid_argument("moment_space_position: need at least m_0");
  const Eigen::Index p = moments[0].rows();
  if (p <= 0 || moments[0].cols() != p)
    throw std::invalid_argument("moment_space_position: m_0 must be square");
  if (max_abs(moments[0] - ComplexMatrix::Identity(p, p)) > 1e-9)
    throw std::invalid_argument("moment_space_position: m_0 must be the identity");
  const Eigen::Index nblk = static_cast<Eigen::Index>(moments.size());
  for (const auto& m : moments)
    if (m.rows() != p || m.cols() != p)
      throw std::invalid_argument("moment_space_position: inconsistent moment shapes");
  ComplexMatrix t(nblk * p, nblk * p);
  for (Eigen::Index i = 0; i < nblk; ++i)
    for (Eigen::Index j = 0; j < nblk; ++j) {
      const Eigen::Index d = i - j;
      const ComplexMatrix& m = moments[static_cast<size_t>(d >= 0 ? d : -d)];
      t.block(i * p, j * p, p, p) = (d >= 0) ? m : ComplexMatrix(m.adjoint());
    }
  const double lam = min_eigenvalue_hermitian(t);
  const double tol = 1e-9 * static_cast<double>(nblk * p);
  if (lam > tol) return MomentSpacePosition::interior;
  if (lam < -tol) return MomentSpacePosition::outside;
  return MomentSpacePosition::boundary;
}

}  // namespace mopuc
