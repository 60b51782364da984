// Kolmogorov-Smirnov machinery and small statistical helpers used by the
// verification experiments.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace mopuc {

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 lambda^2}.
inline double ks_tail(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// One-sample KS against a continuous CDF, asymptotic p-value with the
// standard small-sample effective-size correction.
inline KsResult ks_one_sample(std::vector<double> samples,
                              const std::function<double(double)>& cdf) {
  const size_t n = samples.size();
  if (n < 50) throw std::invalid_argument("ks_one_sample: need at least 50 samples");
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / static_cast<double>(n));
    d = std::max(d, static_cast<double>(i + 1) / static_cast<double>(n) - f);
  }
  const double sn = std::sqrt(static_cast<double>(n));
  KsResult r;
  r.statistic = d;
  r.p_value = ks_tail((sn + 0.12 + 0.11 / sn) * d);
  return r;
}

// Two-sample KS with the effective sample size n1 n2 / (n1 + n2).
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 50 || b.size() < 50)
    throw std::invalid_argument("ks_two_sample: need at least 50 samples per side");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  KsResult r;
  r.statistic = d;
  r.p_value = ks_tail((ne + 0.12 + 0.11 / ne) * d);
  return r;
}

inline double normal_cdf(double x, double mean = 0.0, double stddev = 1.0) {
  return 0.5 * std::erfc(-(x - mean) / (stddev * std::sqrt(2.0)));
}

inline double pearson_correlation(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("pearson_correlation: length mismatch");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace mopuc
