#include <gtest/gtest.h>

#include <cmath>

#include "mopuc/linalg.hpp"
#include "mopuc/rng.hpp"
#include "mopuc/sampling.hpp"

namespace mopuc {
namespace {

ComplexMatrix random_psd(Eigen::Index n, RngStream& rng) {
  const ComplexMatrix g = sample_ginibre(n, rng);
  return g * g.adjoint();
}

TEST(MaxAbs, BasicAndEmpty) {
  ComplexMatrix m(2, 2);
  m << Complex(1, 0), Complex(0, -3), Complex(2, 2), Complex(0, 0);
  EXPECT_DOUBLE_EQ(max_abs(m), 3.0);
  EXPECT_DOUBLE_EQ(max_abs(ComplexMatrix(0, 0)), 0.0);
}

TEST(Hermitian, DetectionAndGuards) {
  ComplexMatrix h(2, 2);
  h << Complex(1, 0), Complex(2, 1), Complex(2, -1), Complex(5, 0);
  EXPECT_TRUE(is_hermitian(h));
  EXPECT_NO_THROW(require_hermitian(h, "t"));
  h(0, 1) = Complex(2, 1.5);
  EXPECT_FALSE(is_hermitian(h));
  EXPECT_THROW(require_hermitian(h, "t"), std::invalid_argument);
  EXPECT_THROW(require_square(ComplexMatrix::Zero(2, 3), "t"), std::invalid_argument);
}

TEST(UnitaryGuards, DefectAndRequire) {
  RngStream rng(42);
  const ComplexMatrix u = sample_haar(6, rng);
  EXPECT_LT(unitary_defect(u), 1e-12);
  EXPECT_NO_THROW(require_unitary(u, "t"));
  EXPECT_THROW(require_unitary(ComplexMatrix(2.0 * u), "t"), std::invalid_argument);
}

TEST(HermitianSqrt, SquaresBack) {
  RngStream rng(1);
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix a = random_psd(4, rng);
    const ComplexMatrix s = hermitian_sqrt(a);
    EXPECT_LT(max_abs(s * s - a), 1e-10 * std::max(1.0, max_abs(a)));
    EXPECT_TRUE(is_hermitian(s, 1e-10));
  }
  EXPECT_LT(max_abs(hermitian_sqrt(ComplexMatrix::Identity(3, 3)) -
                    ComplexMatrix::Identity(3, 3)),
            1e-14);
}

TEST(HermitianSqrt, RejectsNegativeEigenvalues) {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(1, 1) = Complex(-0.5, 0);
  EXPECT_THROW(hermitian_sqrt(a), std::invalid_argument);
}

TEST(PseudoInverse, MoorePenroseIdentities) {
  RngStream rng(2);
  // Full rank.
  const ComplexMatrix a = sample_ginibre(3, rng);
  const ComplexMatrix ai = pseudo_inverse(a);
  EXPECT_LT(max_abs(a * ai - ComplexMatrix::Identity(3, 3)), 1e-10);
  // Rank deficient: a a^+ a = a, a^+ a a^+ = a^+, both products Hermitian.
  ComplexMatrix b(3, 3);
  const ComplexMatrix col = sample_ginibre(3, 1, rng);
  b = col * col.adjoint();  // rank one
  const ComplexMatrix bi = pseudo_inverse(b);
  EXPECT_LT(max_abs(b * bi * b - b), 1e-10 * max_abs(b));
  EXPECT_LT(max_abs(bi * b * bi - bi), 1e-8 * max_abs(bi));
  EXPECT_TRUE(is_hermitian(ComplexMatrix(b * bi), 1e-10));
}

TEST(EigUnitary, ReconstructsAndSorts) {
  RngStream rng(3);
  const ComplexMatrix u = sample_haar(7, rng);
  const UnitaryEigen eig = eig_unitary(u);
  // Orthonormal eigenvectors.
  EXPECT_LT(max_abs(eig.vectors.adjoint() * eig.vectors -
                    ComplexMatrix::Identity(7, 7)),
            1e-12);
  // Eigen-relation and reconstruction.
  ComplexMatrix d = ComplexMatrix::Zero(7, 7);
  for (Eigen::Index k = 0; k < 7; ++k) d(k, k) = std::polar(1.0, eig.angles(k));
  EXPECT_LT(max_abs(u * eig.vectors - eig.vectors * d), 1e-12);
  // Ascending angles in (-pi, pi].
  for (Eigen::Index k = 0; k < 7; ++k) {
    EXPECT_GT(eig.angles(k), -std::numbers::pi);
    EXPECT_LE(eig.angles(k), std::numbers::pi);
    if (k) EXPECT_LE(eig.angles(k - 1), eig.angles(k));
  }
}

TEST(EigUnitary, DegenerateSpectrumStaysOrthonormal) {
  // Identity has a fully degenerate eigenvalue; the Schur basis must still
  // come out orthonormal and the angles all zero.
  const UnitaryEigen eig = eig_unitary(ComplexMatrix::Identity(5, 5));
  EXPECT_LT(max_abs(eig.vectors.adjoint() * eig.vectors -
                    ComplexMatrix::Identity(5, 5)),
            1e-13);
  for (Eigen::Index k = 0; k < 5; ++k) EXPECT_NEAR(eig.angles(k), 0.0, 1e-14);
}

TEST(CholeskyPsd, FactorsAndIsNested) {
  RngStream rng(4);
  const ComplexMatrix a = random_psd(5, rng);
  const ComplexMatrix l = cholesky_psd(a);
  EXPECT_LT(max_abs(l * l.adjoint() - a), 1e-10 * max_abs(a));
  // Strictly lower-triangular factor.
  for (Eigen::Index i = 0; i < 5; ++i)
    for (Eigen::Index j = i + 1; j < 5; ++j) EXPECT_EQ(l(i, j), Complex(0, 0));
  // Nested-section contract: factor of the leading section equals the
  // leading section of the factor.
  for (Eigen::Index k = 1; k <= 5; ++k) {
    const ComplexMatrix lk = cholesky_psd(ComplexMatrix(a.topLeftCorner(k, k)));
    EXPECT_LT(max_abs(lk - l.topLeftCorner(k, k)), 1e-10 * max_abs(a));
  }
}

TEST(CholeskyPsd, AcceptsSemidefiniteRejectsIndefinite) {
  RngStream rng(5);
  const ComplexMatrix c = sample_ginibre(4, 2, rng);
  const ComplexMatrix a = c * c.adjoint();  // rank 2 of size 4
  const ComplexMatrix l = cholesky_psd(a);
  EXPECT_LT(max_abs(l * l.adjoint() - a), 1e-9 * max_abs(a));
  ComplexMatrix bad = ComplexMatrix::Identity(3, 3);
  bad(2, 2) = Complex(-1.0, 0);
  EXPECT_THROW(cholesky_psd(bad), std::invalid_argument);
}

TEST(LogDetHermitian, MatchesDirectDeterminant) {
  RngStream rng(6);
  const ComplexMatrix a = random_psd(4, rng) + ComplexMatrix::Identity(4, 4);
  EXPECT_NEAR(log_det_hermitian(a), std::log(a.determinant().real()), 1e-10);
  ComplexMatrix sing = ComplexMatrix::Zero(2, 2);
  sing(0, 0) = Complex(1, 0);
  EXPECT_TRUE(std::isinf(log_det_hermitian(sing)));
  EXPECT_LT(log_det_hermitian(sing), 0.0);
}

TEST(MinEigenvalueHermitian, KnownSpectrum) {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(0, 0) = Complex(2, 0);
  a(1, 1) = Complex(-0.25, 0);
  a(2, 2) = Complex(1, 0);
  EXPECT_NEAR(min_eigenvalue_hermitian(a), -0.25, 1e-14);
}

}  // namespace
}  // namespace mopuc
