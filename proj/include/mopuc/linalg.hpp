// Dense complex linear algebra helpers shared by the whole library.
//
// Everything here wraps Eigen 3.4. Matrices are plain Eigen::MatrixXcd;
// the functions add the precondition checks and tolerance policies the
// rest of the library relies on (Hermitian symmetrization, PSD clamping,
// semidefinite Cholesky with column zeroing, unitary eigensystems via
// the complex Schur form).

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mopuc {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

inline double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

// Max-norm Hermitian test, tolerance relative to max(1, |A|_max).
inline bool is_hermitian(const ComplexMatrix& a, double rel_tol = 1e-12) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, max_abs(a));
  return max_abs(a - a.adjoint()) <= rel_tol * scale;
}

inline void require_hermitian(const ComplexMatrix& a, const std::string& where) {
  if (!is_hermitian(a)) throw std::invalid_argument(where + ": matrix is not Hermitian");
}

inline void require_square(const ComplexMatrix& a, const std::string& where) {
  if (a.rows() != a.cols()) throw std::invalid_argument(where + ": matrix is not square");
}

// |U U^* - I|_max; zero for exactly unitary U.
inline double unitary_defect(const ComplexMatrix& u) {
  return max_abs(u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols()));
}

inline void require_unitary(const ComplexMatrix& u, const std::string& where,
                            double tol = 1e-8) {
  require_square(u, where);
  if (unitary_defect(u) > tol)
    throw std::invalid_argument(where + ": matrix is not unitary within tolerance");
}

// Principal square root of a Hermitian PSD matrix. Eigenvalues in
// [-1e-10 * scale, 0) are clamped to zero; anything more negative is an error.
inline ComplexMatrix hermitian_sqrt(const ComplexMatrix& a) {
  require_square(a, "hermitian_sqrt");
  require_hermitian(a, "hermitian_sqrt");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (a + a.adjoint()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_sqrt: eigensolver failed");
  RealVector lam = es.eigenvalues();
  const double scale = std::max(1.0, lam.size() ? lam.cwiseAbs().maxCoeff() : 0.0);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -1e-10 * scale)
      throw std::invalid_argument("hermitian_sqrt: matrix is not positive semidefinite");
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

// Moore-Penrose pseudo-inverse via SVD; singular values below
// 1e-12 * sigma_max are treated as zero. Total on every input.
inline ComplexMatrix pseudo_inverse(const ComplexMatrix& a) {
  if (a.size() == 0) return a.adjoint();
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double cutoff = 1e-12 * (sv.size() ? sv(0) : 0.0);
  RealVector inv = RealVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// Eigensystem of a unitary matrix: angles in (-pi, pi] sorted ascending,
// orthonormal eigenvectors as columns. Exact angle ties are ordered by a
// lexicographic comparison of the vectors, making the result deterministic.
struct UnitaryEigen {
  RealVector angles;      // size N, ascending in (-pi, pi]
  ComplexMatrix vectors;  // N x N, column k pairs with angles(k)
};

inline UnitaryEigen eig_unitary(const ComplexMatrix& u) {
  require_unitary(u, "eig_unitary");
  const Eigen::Index n = u.rows();
  // A unitary matrix is normal, so its Schur form is diagonal up to roundoff
  // and the Schur basis is an orthonormal eigenbasis. This keeps degenerate
  // eigenspaces orthonormal, which ComplexEigenSolver does not guarantee.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("eig_unitary: Schur decomposition failed");
  RealVector ang(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double a = std::arg(schur.matrixT()(i, i));
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    ang(i) = a;
  }
  const ComplexMatrix& q = schur.matrixU();
  std::vector<Eigen::Index> idx(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  auto lex_less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const Complex& x = q(r, a);
      const Complex& y = q(r, b);
      if (x.real() != y.real()) return x.real() < y.real();
      if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
  };
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (ang(a) != ang(b)) return ang(a) < ang(b);
    return lex_less(a, b);
  });
  UnitaryEigen out;
  out.angles.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.angles(k) = ang(idx[static_cast<size_t>(k)]);
    out.vectors.col(k) = q.col(idx[static_cast<size_t>(k)]);
  }
  return out;
}

// Cholesky factor of a Hermitian positive semidefinite matrix, A = L L^*.
// Pivots below 1e-12 * trace(A) zero out their column instead of failing,
// so semidefinite inputs are accepted. The leading k x k section of L is
// the factor of the leading section of A by construction.
inline ComplexMatrix cholesky_psd(const ComplexMatrix& a) {
  require_square(a, "cholesky_psd");
  require_hermitian(a, "cholesky_psd");
  const Eigen::Index n = a.rows();
  const double tr = a.trace().real();
  const double pivot_tol = 1e-12 * std::max(tr, 0.0);
  const double neg_tol = 1e-8 * std::max(1.0, std::abs(tr));
  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (d < -neg_tol)
      throw std::invalid_argument("cholesky_psd: matrix is not positive semidefinite");
    if (d <= pivot_tol) continue;  // column zeroing for the semidefinite case
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

// log det of a Hermitian matrix expected to be positive definite;
// -infinity when any eigenvalue is <= 0.
inline double log_det_hermitian(const ComplexMatrix& a) {
  require_square(a, "log_det_hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (a + a.adjoint()),
                                                  Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam <= 0.0) return -std::numeric_limits<double>::infinity();
    s += std::log(lam);
  }
  return s;
}

inline double min_eigenvalue_hermitian(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (a + a.adjoint()),
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues().size() ? es.eigenvalues().minCoeff() : 0.0;
}

}  // namespace mopuc
