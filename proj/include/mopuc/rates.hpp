// Large-deviation rate functionals on coefficients and densities.
//
// Rates are nonnegative and can be genuinely infinite; RateValue carries an
// explicit marker instead of letting IEEE infinities propagate out of log().

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mopuc/linalg.hpp"
#include "mopuc/measures.hpp"
#include "mopuc/verblunsky.hpp"

namespace mopuc {

struct RateValue {
  double value = 0.0;             // finite part; meaningless when infinite
  bool infinite = false;
  std::vector<double> breakdown;  // optional per-coefficient contributions
  int divergent_index = -1;       // coefficient/node that caused divergence
  double singular_mass = 0.0;     // diagnostic: trace of ignored singular part

  static RateValue finite(double v) {
    RateValue r;
    r.value = v;
    return r;
  }
  static RateValue infinity(int index) {
    RateValue r;
    r.infinite = true;
    r.divergent_index = index;
    return r;
  }
  // Total order used by monotonicity checks: infinity dominates.
  bool less_than(const RateValue& other, double slack) const {
    if (infinite) return false;
    if (other.infinite) return true;
    return value < other.value - slack;
  }
};

// I(v) = -log det(I - v v^*); infinite unless v is strictly inside the ball
// (min eigenvalue of I - v v^* > 1e-14).
inline RateValue rate_ball(const ComplexMatrix& v) {
  require_square(v, "rate_ball");
  const Eigen::Index p = v.rows();
  const ComplexMatrix gram = ComplexMatrix::Identity(p, p) - v * v.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (gram + gram.adjoint()),
                                                  Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam <= 1e-14) return RateValue::infinity(0);
    s -= std::log(lam);
  }
  return RateValue::finite(s);
}

// I(alpha_0..alpha_{n-1}) = -sum_j log det(I - alpha_j^* alpha_j); the two
// defect orders have equal determinants, so either works. Per-coefficient
// contributions are kept in the breakdown.
inline RateValue rate_seq(const VerblunskySeq& seq) {
  RateValue out;
  out.breakdown.reserve(static_cast<size_t>(seq.size()));
  for (Eigen::Index j = 0; j < seq.size(); ++j) {
    const ComplexMatrix& a = seq.coeffs[static_cast<size_t>(j)];
    const RateValue term =
        rate_ball(ComplexMatrix(a.adjoint()));  // det(I - a a^*) = det(I - a^* a)
    if (term.infinite) {
      RateValue inf = RateValue::infinity(static_cast<int>(j));
      inf.breakdown = std::move(out.breakdown);
      inf.breakdown.push_back(0.0);
      return inf;
    }
    out.breakdown.push_back(term.value);
    out.value += term.value;
  }
  return out;
}

// Rate of an absolutely continuous (part of a) measure on the grid:
//   -(1/M) sum_j log det W(theta_j),
// the normalized-arclength relative entropy of the density. A node with
// det W <= 1e-300 makes the rate infinite. Any singular part is ignored in
// the value but its mass is surfaced as a diagnostic.
inline RateValue rate_ac_measure(const GridDensityMeasure& mu) {
  const Eigen::Index m = mu.grid_size();
  if (m == 0) throw std::invalid_argument("rate_ac_measure: empty grid");
  double acc = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double ld = log_det_hermitian(mu.densities[static_cast<size_t>(j)]);
    if (!std::isfinite(ld) || ld <= std::log(1e-300)) {
      RateValue inf = RateValue::infinity(static_cast<int>(j));
      if (mu.singular) inf.singular_mass = mu.singular->total_mass().trace().real();
      return inf;
    }
    acc -= ld;
  }
  RateValue out = RateValue::finite(acc / static_cast<double>(m));
  if (mu.singular) out.singular_mass = mu.singular->total_mass().trace().real();
  return out;
}

// Rates of nested k x k sections of a sub-probability matrix density.
// sections[k-1] holds the k x k density at every grid node; section k-1 must
// be the leading corner of section k (checked to 1e-10) and every section
// must integrate to at most the identity. The rates are non-decreasing in k
// (Jensen under sub-probability normalization); the per-node Cholesky pivot
// identity det W^k = det W^{k-1} |l_kk|^2 is evaluated as a residual
// diagnostic, and the grid bounds on det W^k estimate the constant that
// certifies det W stays bounded away from 0 and infinity (the condition
// under which the section rates increase to the full rate).
struct TruncationRates {
  std::vector<RateValue> rates;       // one per section size k = 1..k_max
  bool monotone = true;
  double max_monotonicity_violation = 0.0;
  double max_bartlett_residual = 0.0;
  bool condition_c_bounded = false;
  double condition_c_estimate = 0.0;  // max(det_max, 1/det_min) on the top section
};

inline TruncationRates rate_truncations(
    const std::vector<std::vector<ComplexMatrix>>& sections) {
  if (sections.empty()) throw std::invalid_argument("rate_truncations: no sections");
  const size_t m = sections[0].size();
  if (m == 0) throw std::invalid_argument("rate_truncations: empty grid");
  const Eigen::Index k_max = static_cast<Eigen::Index>(sections.size());
  for (Eigen::Index k = 1; k <= k_max; ++k) {
    const auto& sec = sections[static_cast<size_t>(k - 1)];
    if (sec.size() != m)
      throw std::invalid_argument("rate_truncations: sections disagree on grid size");
    ComplexMatrix mean = ComplexMatrix::Zero(k, k);
    for (const auto& w : sec) {
      if (w.rows() != k || w.cols() != k || !is_hermitian(w))
        throw std::invalid_argument("rate_truncations: node is not Hermitian k x k");
      mean += w;
    }
    mean /= static_cast<double>(m);
    if (min_eigenvalue_hermitian(ComplexMatrix::Identity(k, k) - mean) < -1e-9)
      throw std::invalid_argument("rate_truncations: section is not sub-probability");
    if (k > 1) {
      const auto& prev = sections[static_cast<size_t>(k - 2)];
      for (size_t j = 0; j < m; ++j)
        if (max_abs(prev[j] - sec[j].topLeftCorner(k - 1, k - 1)) > 1e-10)
          throw std::invalid_argument("rate_truncations: sections are not nested");
    }
  }

  auto psd_det = [](const ComplexMatrix& w) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (w + w.adjoint()),
                                                    Eigen::EigenvaluesOnly);
    double d = 1.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      d *= es.eigenvalues()(i);
    return d;
  };

  TruncationRates out;
  for (Eigen::Index k = 1; k <= k_max; ++k) {
    const auto& sec = sections[static_cast<size_t>(k - 1)];
    double acc = 0.0;
    bool infinite = false;
    int bad = -1;
    for (size_t j = 0; j < m && !infinite; ++j) {
      const double ld = log_det_hermitian(sec[j]);
      if (!std::isfinite(ld) || ld <= std::log(1e-300)) {
        infinite = true;
        bad = static_cast<int>(j);
      } else {
        acc -= ld;
      }
    }
    out.rates.push_back(infinite
                            ? RateValue::infinity(bad)
                            : RateValue::finite(acc / static_cast<double>(m)));
    if (k > 1) {
      const RateValue& lo = out.rates[static_cast<size_t>(k - 2)];
      const RateValue& hi = out.rates[static_cast<size_t>(k - 1)];
      if (hi.less_than(lo, 1e-9)) {
        out.monotone = false;
        if (!hi.infinite && !lo.infinite)
          out.max_monotonicity_violation =
              std::max(out.max_monotonicity_violation, lo.value - hi.value);
      }
      // Pivot identity at every node.
      const auto& prev = sections[static_cast<size_t>(k - 2)];
      for (size_t j = 0; j < m; ++j) {
        const ComplexMatrix l = cholesky_psd(sec[j]);
        const double dk = psd_det(sec[j]);
        const double dk1 = psd_det(prev[j]);
        const double pred = dk1 * std::norm(l(k - 1, k - 1));
        const double res = std::abs(dk - pred) / std::max({std::abs(dk), 1e-30});
        out.max_bartlett_residual = std::max(out.max_bartlett_residual, res);
      }
    }
  }
  double det_min = std::numeric_limits<double>::infinity();
  double det_max = 0.0;
  for (const auto& w : sections.back()) {
    const double d = psd_det(w);
    det_min = std::min(det_min, d);
    det_max = std::max(det_max, d);
  }
  out.condition_c_bounded = det_min > 0.0;
  out.condition_c_estimate =
      out.condition_c_bounded ? std::max(det_max, 1.0 / det_min)
                              : std::numeric_limits<double>::max();
  return out;
}

}  // namespace mopuc
