// Matrix Szegő recursion machinery.
//
// Conventions, pinned once and used everywhere:
//   * right inner product  <<F, G>>_R = integral F^* dmu G,
//     left inner product   <<F, G>>_L = integral G dmu F^*;
//   * alpha_0^* = m_1 (the first matrix moment);
//   * monic right polynomials satisfy
//       Phi_{k+1}^R(0) = -(rho_0^L)^{-1}..(rho_{k-1}^L)^{-1} alpha_k^*
//                         rho_{k-1}^R..rho_0^R
//     (the defect products cancel when p = 1), which is what
//     verblunsky_from_moments undresses;
//   * defect matrices rho^R = (I - a a^*)^{1/2}, rho^L = (I - a^* a)^{1/2},
//     intertwined by a rho^L = rho^R a;
//   * normalized polynomials follow
//       z phi_k^L - rho_k^L phi_{k+1}^L = alpha_k^* (phi_k^R)^~,
//       z phi_k^R - phi_{k+1}^R rho_k^R = (phi_k^L)^~ alpha_k^*,
//     where P^~(z) = z^k P(1/conj(z))^* is the degree-k reversal.
//
// Two independent extraction routes are provided on purpose (moment-based
// Gram solve vs operator deflation); they are cross-checked in the tests
// and must never be collapsed into one.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mopuc/linalg.hpp"
#include "mopuc/measures.hpp"

namespace mopuc {

// Extraction ran past the degrees supported by the measure: the Gram matrix
// of monomials became singular while building the monic polynomial of the
// reported degree.
class SupportExhaustedError : public std::runtime_error {
 public:
  explicit SupportExhaustedError(int deg)
      : std::runtime_error("support exhausted: monomial Gram matrix singular at degree " +
                           std::to_string(deg)),
        degree(deg) {}
  int degree;
};

// Deflation hit a coefficient on the boundary of the ball: rho^R is singular
// at the reported index, so the walk cannot continue.
class BoundaryCoefficientError : public std::runtime_error {
 public:
  explicit BoundaryCoefficientError(int idx)
      : std::runtime_error("boundary coefficient: defect matrix singular at index " +
                           std::to_string(idx)),
        index(idx) {}
  int index;
};

namespace detail {

// Clamped PSD square root of I - x with eigenvalues of I - x allowed down to
// -ball_tol (treated as 0). Throws when the block sits outside the closed ball.
inline ComplexMatrix defect_sqrt(const ComplexMatrix& gram, double ball_tol,
                                 const std::string& where) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (gram + gram.adjoint()));
  RealVector lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -ball_tol)
      throw std::invalid_argument(where + ": coefficient outside the closed unit ball");
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

// A finite Verblunsky coefficient sequence together with its defect matrices.
struct VerblunskySeq {
  Eigen::Index p = 0;
  std::vector<ComplexMatrix> coeffs;     // alpha_0 .. alpha_{n-1}, ||alpha|| <= 1
  std::vector<ComplexMatrix> defects_r;  // rho_k^R = (I - a a^*)^{1/2}
  std::vector<ComplexMatrix> defects_l;  // rho_k^L = (I - a^* a)^{1/2}

  Eigen::Index size() const { return static_cast<Eigen::Index>(coeffs.size()); }

  static VerblunskySeq from_coefficients(Eigen::Index p,
                                         std::vector<ComplexMatrix> coeffs,
                                         double ball_tol = 1e-9) {
    if (p <= 0) throw std::invalid_argument("VerblunskySeq: p must be positive");
    VerblunskySeq seq;
    seq.p = p;
    const ComplexMatrix id = ComplexMatrix::Identity(p, p);
    for (const auto& a : coeffs) {
      if (a.rows() != p || a.cols() != p)
        throw std::invalid_argument("VerblunskySeq: coefficient has wrong shape");
      seq.defects_r.push_back(
          detail::defect_sqrt(id - a * a.adjoint(), ball_tol, "VerblunskySeq"));
      seq.defects_l.push_back(
          detail::defect_sqrt(id - a.adjoint() * a, ball_tol, "VerblunskySeq"));
    }
    seq.coeffs = std::move(coeffs);
    return seq;
  }
};

// 2p x 2p one-step unitary  Theta(a) = [[a^*, rho^L], [rho^R, -a]].
// Unitary for every a in the closed ball thanks to the intertwining identity.
inline ComplexMatrix theta(const ComplexMatrix& a, double ball_tol = 1e-9) {
  require_square(a, "theta");
  const Eigen::Index p = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(p, p);
  const ComplexMatrix rho_r = detail::defect_sqrt(id - a * a.adjoint(), ball_tol, "theta");
  const ComplexMatrix rho_l = detail::defect_sqrt(id - a.adjoint() * a, ball_tol, "theta");
  ComplexMatrix t(2 * p, 2 * p);
  t.topLeftCorner(p, p) = a.adjoint();
  t.topRightCorner(p, p) = rho_l;
  t.bottomLeftCorner(p, p) = rho_r;
  t.bottomRightCorner(p, p) = -a;
  return t;
}

// Leading (blocks x blocks) section of the GGT matrix of the sequence,
// coefficients beyond the sequence padded with zero blocks:
//   G(k, l) = -alpha_{k-1} rho_k^L ... rho_{l-1}^L alpha_l^*   (k <= l)
//   G(l+1, l) = rho_l^R,  zero below the first subdiagonal,
// with alpha_{-1} = -I. Represents multiplication by z in the right
// orthonormal polynomial basis, so powers reproduce moments in block (0,0).
inline ComplexMatrix ggt(const VerblunskySeq& seq, Eigen::Index blocks) {
  if (blocks <= 0) throw std::invalid_argument("ggt: need at least one block");
  const Eigen::Index p = seq.p;
  const ComplexMatrix id = ComplexMatrix::Identity(p, p);
  const ComplexMatrix zero = ComplexMatrix::Zero(p, p);
  auto alpha = [&](Eigen::Index j) -> const ComplexMatrix& {
    return j < seq.size() ? seq.coeffs[static_cast<size_t>(j)] : zero;
  };
  auto rho_l = [&](Eigen::Index j) -> const ComplexMatrix& {
    return j < seq.size() ? seq.defects_l[static_cast<size_t>(j)] : id;
  };
  auto rho_r = [&](Eigen::Index j) -> const ComplexMatrix& {
    return j < seq.size() ? seq.defects_r[static_cast<size_t>(j)] : id;
  };
  ComplexMatrix g = ComplexMatrix::Zero(blocks * p, blocks * p);
  for (Eigen::Index k = 0; k < blocks; ++k) {
    const ComplexMatrix lead = (k == 0) ? ComplexMatrix(-id) : alpha(k - 1);
    ComplexMatrix prod = id;  // rho_k^L ... rho_{l-1}^L, empty product at l = k
    for (Eigen::Index l = k; l < blocks; ++l) {
      g.block(k * p, l * p, p, p) = -lead * prod * alpha(l).adjoint();
      prod = prod * rho_l(l);
    }
    if (k + 1 < blocks) g.block((k + 1) * p, k * p, p, p) = rho_r(k);
  }
  return g;
}

// Values of the normalized Szegő polynomials (right, left, and their
// reversals) at a fixed point z, for degrees 0..upto. Requires all
// coefficients strictly inside the ball, since the recursion divides by the
// defect matrices.
struct SzegoPolyValues {
  std::vector<ComplexMatrix> r, l, r_rev, l_rev;  // indexed by degree
};

inline SzegoPolyValues evaluate_szego_polynomials(const VerblunskySeq& seq,
                                                  Complex z, Eigen::Index upto) {
  if (upto < 0 || upto > seq.size())
    throw std::invalid_argument("evaluate_szego_polynomials: degree out of range");
  const Eigen::Index p = seq.p;
  const ComplexMatrix id = ComplexMatrix::Identity(p, p);
  SzegoPolyValues v;
  v.r.assign(1, id);
  v.l.assign(1, id);
  v.r_rev.assign(1, id);
  v.l_rev.assign(1, id);
  for (Eigen::Index k = 0; k < upto; ++k) {
    const ComplexMatrix& a = seq.coeffs[static_cast<size_t>(k)];
    const ComplexMatrix ri = pseudo_inverse(seq.defects_r[static_cast<size_t>(k)]);
    const ComplexMatrix li = pseudo_inverse(seq.defects_l[static_cast<size_t>(k)]);
    // Copies, not references: the push_backs below reallocate the vectors.
    const ComplexMatrix pr = v.r.back();
    const ComplexMatrix pl = v.l.back();
    const ComplexMatrix prr = v.r_rev.back();
    const ComplexMatrix plr = v.l_rev.back();
    v.r.push_back((z * pr - plr * a.adjoint()) * ri);
    v.l.push_back(li * (z * pl - a.adjoint() * prr));
    v.r_rev.push_back(ri * (prr - z * a * pl));
    v.l_rev.push_back((plr - z * pr * a) * li);
  }
  return v;
}

// Bernstein-Szegő synthesis: the absolutely continuous probability measure
// whose Verblunsky coefficients are (alpha_0, ..., alpha_{n-1}, 0, 0, ...).
// Density on the grid: W(theta) = (phi_n^R phi_n^R^*)^{-1} evaluated at
// z = e^{i theta}. All coefficients must be strictly inside the ball.
inline GridDensityMeasure bernstein_szego_density(const VerblunskySeq& seq,
                                                  Eigen::Index grid_size = 4096) {
  const Eigen::Index p = seq.p;
  for (Eigen::Index k = 0; k < seq.size(); ++k) {
    const ComplexMatrix gram =
        ComplexMatrix::Identity(p, p) -
        seq.coeffs[static_cast<size_t>(k)] * seq.coeffs[static_cast<size_t>(k)].adjoint();
    if (min_eigenvalue_hermitian(gram) <= 1e-12)
      throw std::invalid_argument(
          "bernstein_szego_density: coefficient on the boundary of the ball");
  }
  GridDensityMeasure mu;
  mu.p = p;
  mu.densities.resize(static_cast<size_t>(grid_size));
  for (Eigen::Index j = 0; j < grid_size; ++j) {
    const double th = -std::numbers::pi +
                      2.0 * std::numbers::pi * static_cast<double>(j) /
                          static_cast<double>(grid_size);
    const SzegoPolyValues v =
        evaluate_szego_polynomials(seq, std::polar(1.0, th), seq.size());
    const ComplexMatrix outer = v.r.back() * v.r.back().adjoint();
    ComplexMatrix w = outer.inverse();
    mu.densities[static_cast<size_t>(j)] = 0.5 * (w + w.adjoint());
  }
  mu.validate();
  return mu;
}

// Moment route: build the monic right polynomials degree by degree from the
// block Toeplitz Gram system and undress the constant coefficient,
//   Phi_{k+1}^R(0) = -(rho_0^L)^{-1}..(rho_{k-1}^L)^{-1} alpha_k^*
//                     rho_{k-1}^R..rho_0^R,
// so alpha_k^* = -(rho_{k-1}^L..rho_0^L) Phi_{k+1}^R(0)
//                 (rho_0^R)^{-1}..(rho_{k-1}^R)^{-1}
// (for p = 1 the defect products cancel). moments[l] = m_l for l = 0..count
// (m_0 = I required; negative indices are taken as adjoints).
inline VerblunskySeq verblunsky_from_moments(const std::vector<ComplexMatrix>& moments,
                                             Eigen::Index count) {
  if (count <= 0) throw std::invalid_argument("verblunsky_from_moments: count must be positive");
  if (static_cast<Eigen::Index>(moments.size()) < count + 1)
    throw std::invalid_argument("verblunsky_from_moments: need moments m_0..m_count");
  const Eigen::Index p = moments[0].rows();
  if (p <= 0 || moments[0].cols() != p)
    throw std::invalid_argument("verblunsky_from_moments: m_0 must be square");
  if (max_abs(moments[0] - ComplexMatrix::Identity(p, p)) > 1e-9)
    throw std::invalid_argument("verblunsky_from_moments: m_0 must be the identity");
  auto mom = [&](Eigen::Index l) -> ComplexMatrix {
    return l >= 0 ? moments[static_cast<size_t>(l)]
                  : ComplexMatrix(moments[static_cast<size_t>(-l)].adjoint());
  };
  const ComplexMatrix idp = ComplexMatrix::Identity(p, p);
  ComplexMatrix undress_l = idp;  // rho_{deg-2}^L .. rho_0^L
  ComplexMatrix undress_r = idp;  // (rho_0^R)^{-1} .. (rho_{deg-2}^R)^{-1}
  std::vector<ComplexMatrix> alphas;
  for (Eigen::Index deg = 1; deg <= count; ++deg) {
    // Gram matrix of the monomials z^0..z^{deg-1}: block (k, j) = m_{j-k}.
    ComplexMatrix t(deg * p, deg * p);
    for (Eigen::Index k = 0; k < deg; ++k)
      for (Eigen::Index j = 0; j < deg; ++j) t.block(k * p, j * p, p, p) = mom(j - k);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (t + t.adjoint()),
                                                    Eigen::EigenvaluesOnly);
    const double lam_min = es.eigenvalues().minCoeff();
    const double lam_max = es.eigenvalues().maxCoeff();
    if (lam_min <= 1e-12 * std::max(1.0, lam_max))
      throw SupportExhaustedError(static_cast<int>(deg));
    // Monic orthogonality: sum_j m_{j-k} c_j = -m_{deg-k} for k < deg.
    ComplexMatrix rhs(deg * p, p);
    for (Eigen::Index k = 0; k < deg; ++k) rhs.block(k * p, 0, p, p) = -mom(deg - k);
    const ComplexMatrix c = t.ldlt().solve(rhs);
    const ComplexMatrix a_adj = -undress_l * c.block(0, 0, p, p) * undress_r;
    const ComplexMatrix a = a_adj.adjoint();
    alphas.push_back(a);
    if (deg < count) {
      undress_r = undress_r * pseudo_inverse(detail::defect_sqrt(
                                  idp - a * a.adjoint(), 1e-9,
                                  "verblunsky_from_moments"));
      undress_l = detail::defect_sqrt(idp - a.adjoint() * a, 1e-9,
                                      "verblunsky_from_moments") *
                  undress_l;
    }
  }
  return VerblunskySeq::from_coefficients(p, std::move(alphas));
}

// Operator route: deflation walk on (U, frame). Each step reads
// alpha_j = (frame^* U frame)^*, rotates U by the inverse of the rank-2p
// unitary that acts as Theta(alpha_j) on span(frame, xi), and continues with
// the deflated pair (W, xi). Requires p * (count + 1) <= dim U.
inline VerblunskySeq verblunsky_by_deflation(const ComplexMatrix& u, Eigen::Index p,
                                             Eigen::Index count) {
  require_unitary(u, "verblunsky_by_deflation");
  const Eigen::Index n = u.rows();
  if (p <= 0 || count <= 0)
    throw std::invalid_argument("verblunsky_by_deflation: p and count must be positive");
  if (p * (count + 1) > n)
    throw std::invalid_argument("verblunsky_by_deflation: requires p * (count + 1) <= dim");
  const ComplexMatrix idp = ComplexMatrix::Identity(p, p);
  ComplexMatrix cur = u;
  ComplexMatrix frame = ComplexMatrix::Identity(n, p);
  std::vector<ComplexMatrix> alphas;
  for (Eigen::Index j = 0; j < count; ++j) {
    const ComplexMatrix uf = cur * frame;
    const ComplexMatrix corner = frame.adjoint() * uf;  // = alpha_j^*
    const ComplexMatrix a = corner.adjoint();
    alphas.push_back(a);
    if (j + 1 == count) break;
    // Defect of the step; singular rho^R means the frame generated a proper
    // invariant subspace and no further coefficients exist.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(idp - a * a.adjoint());
    RealVector lam = es.eigenvalues();
    double sv_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < p; ++i)
      sv_min = std::min(sv_min, std::sqrt(std::max(lam(i), 0.0)));
    if (sv_min < 1e-10) throw BoundaryCoefficientError(static_cast<int>(j));
    RealVector rs(p), ris(p);
    for (Eigen::Index i = 0; i < p; ++i) {
      rs(i) = std::sqrt(std::max(lam(i), 0.0));
      ris(i) = 1.0 / rs(i);
    }
    const ComplexMatrix rho_r =
        es.eigenvectors() * rs.asDiagonal() * es.eigenvectors().adjoint();
    const ComplexMatrix rho_r_inv =
        es.eigenvectors() * ris.asDiagonal() * es.eigenvectors().adjoint();
    const ComplexMatrix rho_l =
        detail::defect_sqrt(idp - a.adjoint() * a, 1e-9, "verblunsky_by_deflation");
    // xi spans the new directions swept in by U.
    const ComplexMatrix xi = (uf - frame * corner) * rho_r_inv;
    ComplexMatrix span(n, 2 * p);
    span.leftCols(p) = frame;
    span.rightCols(p) = xi;
    ComplexMatrix th(2 * p, 2 * p);
    th.topLeftCorner(p, p) = a.adjoint();
    th.topRightCorner(p, p) = rho_l;
    th.bottomLeftCorner(p, p) = rho_r;
    th.bottomRightCorner(p, p) = -a;
    // W = V^{-1} U with V = I + span (Theta - I) span^*; W fixes the frame.
    cur = cur + span * ((th.adjoint() - ComplexMatrix::Identity(2 * p, 2 * p)) *
                        (span.adjoint() * cur));
    frame = xi;
  }
  return VerblunskySeq::from_coefficients(p, std::move(alphas));
}

// One-step coefficient update read directly off the blocks of U: with
// U = [[c, C], [B, A]] (c the p x p corner), the second coefficient is
//   alpha_1 = (pinv(rho^R) C B pinv(rho^L))^*,
// where rho^R = (I - c c^*)^{1/2}, rho^L = (I - c^* c)^{1/2}. The adjoint
// aligns the block form with the alpha_0^* = m_1 convention used everywhere
// else. The moment form replaces C B by m_2 - m_1^2. Both forms agree; when
// a defect matrix is singular the pseudo-inverses keep the value finite and
// the flag reports it.
struct Alpha1Result {
  ComplexMatrix block_form;
  ComplexMatrix moment_form;
  bool defect_singular = false;
};

inline Alpha1Result arlinskii_alpha1(const ComplexMatrix& u, Eigen::Index p) {
  require_unitary(u, "arlinskii_alpha1");
  const Eigen::Index n = u.rows();
  if (p <= 0 || 2 * p > n)
    throw std::invalid_argument("arlinskii_alpha1: requires dim >= 2p");
  const ComplexMatrix idp = ComplexMatrix::Identity(p, p);
  const ComplexMatrix c = u.topLeftCorner(p, p);
  const ComplexMatrix cright = u.topRightCorner(p, n - p);
  const ComplexMatrix bleft = u.bottomLeftCorner(n - p, p);
  const ComplexMatrix rho_r =
      detail::defect_sqrt(idp - c * c.adjoint(), 1e-9, "arlinskii_alpha1");
  const ComplexMatrix rho_l =
      detail::defect_sqrt(idp - c.adjoint() * c, 1e-9, "arlinskii_alpha1");
  const ComplexMatrix rho_r_pinv = pseudo_inverse(rho_r);
  const ComplexMatrix rho_l_pinv = pseudo_inverse(rho_l);
  Alpha1Result out;
  out.block_form =
      (rho_r_pinv * (cright * bleft) * rho_l_pinv).adjoint();
  const ComplexMatrix m2 = (u * u).topLeftCorner(p, p);
  out.moment_form = (rho_r_pinv * (m2 - c * c) * rho_l_pinv).adjoint();
  Eigen::JacobiSVD<ComplexMatrix> svd(rho_r);
  out.defect_singular = svd.singularValues().minCoeff() < 1e-10;
  return out;
}

}  // namespace mopuc
