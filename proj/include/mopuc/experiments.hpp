// Monte Carlo verification experiments.
//
// Every experiment draws per-trial RngStream substreams keyed by
// (seed, phase, trial), writes each trial result into its own slot, and
// aggregates afterwards, so reports are reproducible bit-for-bit from
// (config, build) regardless of how trials are scheduled. Wall-clock timing
// is the only non-deterministic field and is excluded from the canonical
// serialization.

#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mopuc/linalg.hpp"
#include "mopuc/measures.hpp"
#include "mopuc/rates.hpp"
#include "mopuc/rng.hpp"
#include "mopuc/sampling.hpp"
#include "mopuc/serialization.hpp"
#include "mopuc/stats.hpp"
#include "mopuc/verblunsky.hpp"

namespace mopuc {

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  Eigen::Index samples = 0;      // Monte Carlo sample count (0 = default)
  Eigen::Index dim = 0;          // unitary dimension N
  Eigen::Index p = 0;            // measure dimension
  Eigen::Index coeff_count = 0;  // how many coefficients / moments to use
  Eigen::Index max_power = 0;    // largest matrix power tested
  Eigen::Index grid_size = 0;    // density grid size
  Eigen::Index trials = 0;       // deterministic-check repetition count
  double p_threshold = 0.01;
  double corr_threshold_factor = 4.0;
  bool bonferroni = true;
};

inline Json to_json(const ExperimentConfig& c) {
  return Json{{"experiment", c.experiment},
              {"seed", c.seed},
              {"samples", c.samples},
              {"dim", c.dim},
              {"p", c.p},
              {"coeff_count", c.coeff_count},
              {"max_power", c.max_power},
              {"grid_size", c.grid_size},
              {"trials", c.trials},
              {"p_threshold", c.p_threshold},
              {"corr_threshold_factor", c.corr_threshold_factor},
              {"bonferroni", c.bonferroni}};
}

inline ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig c;
  c.experiment = j.value("experiment", std::string{});
  c.seed = j.value("seed", std::uint64_t{1});
  c.samples = j.value("samples", Eigen::Index{0});
  c.dim = j.value("dim", Eigen::Index{0});
  c.p = j.value("p", Eigen::Index{0});
  c.coeff_count = j.value("coeff_count", Eigen::Index{0});
  c.max_power = j.value("max_power", Eigen::Index{0});
  c.grid_size = j.value("grid_size", Eigen::Index{0});
  c.trials = j.value("trials", Eigen::Index{0});
  c.p_threshold = j.value("p_threshold", 0.01);
  c.corr_threshold_factor = j.value("corr_threshold_factor", 4.0);
  c.bonferroni = j.value("bonferroni", true);
  return c;
}

struct TestOutcome {
  std::string name;
  double statistic = 0.0;
  double p_value = -1.0;  // -1 marks tolerance-style tests without a p-value
  double threshold = 0.0;
  bool pass = false;
};

struct ExperimentReport {
  ExperimentConfig config;  // with defaults resolved
  std::vector<TestOutcome> tests;
  std::vector<std::string> notes;
  bool pass = false;
  double wall_ms = 0.0;

  Json to_json(bool include_timing = true) const {
    Json jt = Json::array();
    for (const auto& t : tests) {
      Json row{{"name", t.name},
               {"statistic", t.statistic},
               {"threshold", t.threshold},
               {"pass", t.pass}};
      if (t.p_value >= 0.0)
        row["p_value"] = t.p_value;
      else
        row["p_value"] = nullptr;
      jt.push_back(std::move(row));
    }
    Json j{{"config", mopuc::to_json(config)},
           {"tests", std::move(jt)},
           {"notes", notes},
           {"pass", pass}};
    if (include_timing) j["wall_ms"] = wall_ms;
    return j;
  }
};

namespace detail {

inline RngStream make_stream(std::uint64_t seed, std::uint64_t phase,
                             std::uint64_t index) {
  return RngStream(seed, (phase << 48) + index);
}

// Trial scheduler: each body(t) owns slot t of whatever it writes, so the
// result is independent of thread count (serial on a single-core host).
template <typename Body>
void parallel_trials(Eigen::Index n, Body&& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || n < 4) {
    for (Eigen::Index t = 0; t < n; ++t) body(t);
    return;
  }
  std::atomic<Eigen::Index> next{0};
  auto worker = [&] {
    for (;;) {
      const Eigen::Index t = next.fetch_add(1);
      if (t >= n) return;
      body(t);
    }
  };
  std::vector<std::thread> pool;
  const unsigned k = std::min<unsigned>(hw, static_cast<unsigned>(n));
  pool.reserve(k);
  for (unsigned i = 0; i < k; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

// Finalize p-value tests: Bonferroni-adjust the acceptance threshold by the
// number of p-value tests in the family.
inline void finalize(ExperimentReport& rep) {
  size_t m = 0;
  for (const auto& t : rep.tests)
    if (t.p_value >= 0.0) ++m;
  const double adj = rep.config.bonferroni && m > 0
                         ? rep.config.p_threshold / static_cast<double>(m)
                         : rep.config.p_threshold;
  rep.pass = true;
  for (auto& t : rep.tests) {
    if (t.p_value >= 0.0) {
      t.threshold = adj;
      t.pass = t.p_value > adj;
    }
    rep.pass = rep.pass && t.pass;
  }
}

inline std::vector<ComplexMatrix> corner_powers(const ComplexMatrix& u,
                                                Eigen::Index p,
                                                Eigen::Index max_power) {
  // [U^k]_{ij}, i,j <= p, via p matrix-vector chains; never forms U^k.
  std::vector<ComplexMatrix> out;
  ComplexMatrix cols = ComplexMatrix::Identity(u.rows(), p);
  for (Eigen::Index k = 0; k < max_power; ++k) {
    cols = u * cols;
    out.push_back(cols.topRows(p));
  }
  return out;
}

}  // namespace detail

// (a) Coefficient law: deflation coefficients of Haar unitaries against
// fresh corner draws, per coefficient index, plus pairwise independence
// diagnostics across indices.
inline ExperimentReport run_verblunsky_law(ExperimentConfig cfg) {
  if (cfg.dim == 0) cfg.dim = 48;
  if (cfg.p == 0) cfg.p = 2;
  if (cfg.samples == 0) cfg.samples = 2000;
  const Eigen::Index n = cfg.dim, p = cfg.p, s = cfg.samples;
  const Eigen::Index q = n / p;
  if (q < 3) throw std::invalid_argument("verblunsky-law: need dim >= 3p");
  const Eigen::Index n_coeff = q - 1;  // alpha_0 .. alpha_{Q-2}
  ExperimentReport rep;
  rep.config = cfg;

  std::vector<std::vector<double>> f(static_cast<size_t>(n_coeff),
                                     std::vector<double>(static_cast<size_t>(s)));
  detail::parallel_trials(s, [&](Eigen::Index t) {
    RngStream rng = detail::make_stream(cfg.seed, 0, static_cast<std::uint64_t>(t));
    const ComplexMatrix u = sample_haar(n, rng);
    const VerblunskySeq seq = verblunsky_by_deflation(u, p, n_coeff);
    for (Eigen::Index j = 0; j < n_coeff; ++j) {
      const ComplexMatrix& a = seq.coeffs[static_cast<size_t>(j)];
      f[static_cast<size_t>(j)][static_cast<size_t>(t)] = log_det_hermitian(
          ComplexMatrix::Identity(p, p) - a * a.adjoint());
    }
  });

  // Reference corners exist in the density regime N - p j > 2p only.
  Eigen::Index j_testable = 0;
  while (j_testable < n_coeff && n - p * j_testable > 2 * p) ++j_testable;
  if (j_testable < n_coeff)
    rep.notes.push_back("coefficient indices >= " + std::to_string(j_testable) +
                        " extracted but not KS-tested: corner law leaves the "
                        "density regime (n <= 2p)");
  std::vector<std::vector<double>> ref(static_cast<size_t>(j_testable),
                                       std::vector<double>(static_cast<size_t>(s)));
  detail::parallel_trials(s, [&](Eigen::Index t) {
    for (Eigen::Index j = 0; j < j_testable; ++j) {
      RngStream rng = detail::make_stream(
          cfg.seed, 1,
          static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(s) +
              static_cast<std::uint64_t>(t));
      const ComplexMatrix v = sample_corner(n - p * j, p, rng);
      ref[static_cast<size_t>(j)][static_cast<size_t>(t)] = log_det_hermitian(
          ComplexMatrix::Identity(p, p) - v * v.adjoint());
    }
  });

  for (Eigen::Index j = 0; j < j_testable; ++j) {
    const KsResult ks =
        ks_two_sample(f[static_cast<size_t>(j)], ref[static_cast<size_t>(j)]);
    rep.tests.push_back({"ks logdet defect, j=" + std::to_string(j), ks.statistic,
                         ks.p_value, 0.0, false});
  }
  const double corr_thr =
      cfg.corr_threshold_factor / std::sqrt(static_cast<double>(s));
  for (Eigen::Index j = 0; j < n_coeff; ++j)
    for (Eigen::Index k = j + 1; k < n_coeff; ++k) {
      const double c = std::abs(pearson_correlation(f[static_cast<size_t>(j)],
                                                    f[static_cast<size_t>(k)]));
      rep.tests.push_back({"corr j=" + std::to_string(j) + ",k=" + std::to_string(k),
                           c, -1.0, corr_thr, c <= corr_thr});
    }
  detail::finalize(rep);
  return rep;
}

// (b) Coefficient CLT: sqrt(N) alpha_j entry parts against N(0, 1/2).
inline ExperimentReport run_clt(ExperimentConfig cfg) {
  if (cfg.dim == 0) cfg.dim = 256;
  if (cfg.p == 0) cfg.p = 1;
  if (cfg.samples == 0) cfg.samples = 2000;
  if (cfg.coeff_count == 0) cfg.coeff_count = 2;
  const Eigen::Index n = cfg.dim, p = cfg.p, s = cfg.samples, k = cfg.coeff_count;
  ExperimentReport rep;
  rep.config = cfg;
  std::vector<std::vector<double>> re(static_cast<size_t>(k),
                                      std::vector<double>(static_cast<size_t>(s)));
  auto im = re;
  const double scale = std::sqrt(static_cast<double>(n));
  detail::parallel_trials(s, [&](Eigen::Index t) {
    RngStream rng = detail::make_stream(cfg.seed, 0, static_cast<std::uint64_t>(t));
    const ComplexMatrix u = sample_haar(n, rng);
    const VerblunskySeq seq = verblunsky_by_deflation(u, p, k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const Complex a = seq.coeffs[static_cast<size_t>(j)](0, 0);
      re[static_cast<size_t>(j)][static_cast<size_t>(t)] = scale * a.real();
      im[static_cast<size_t>(j)][static_cast<size_t>(t)] = scale * a.imag();
    }
  });
  const auto cdf = [](double x) { return normal_cdf(x, 0.0, std::sqrt(0.5)); };
  for (Eigen::Index j = 0; j < k; ++j) {
    const KsResult kr = ks_one_sample(re[static_cast<size_t>(j)], cdf);
    rep.tests.push_back({"ks Re(alpha_" + std::to_string(j) + ")_11", kr.statistic,
                         kr.p_value, 0.0, false});
    const KsResult ki = ks_one_sample(im[static_cast<size_t>(j)], cdf);
    rep.tests.push_back({"ks Im(alpha_" + std::to_string(j) + ")_11", ki.statistic,
                         ki.p_value, 0.0, false});
  }
  detail::finalize(rep);
  return rep;
}

// (c) Corner CLT: sqrt(N) times every corner entry against N(0, 1/2).
inline ExperimentReport run_corner_clt(ExperimentConfig cfg) {
  if (cfg.dim == 0) cfg.dim = 256;
  if (cfg.p == 0) cfg.p = 1;
  if (cfg.samples == 0) cfg.samples = 2000;
  const Eigen::Index n = cfg.dim, p = cfg.p, s = cfg.samples;
  ExperimentReport rep;
  rep.config = cfg;
  const double scale = std::sqrt(static_cast<double>(n));
  std::vector<ComplexMatrix> corners(static_cast<size_t>(s));
  detail::parallel_trials(s, [&](Eigen::Index t) {
    RngStream rng = detail::make_stream(cfg.seed, 0, static_cast<std::uint64_t>(t));
    corners[static_cast<size_t>(t)] = sample_corner(n, p, rng);
  });
  const auto cdf = [](double x) { return normal_cdf(x, 0.0, std::sqrt(0.5)); };
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) {
      std::vector<double> re(static_cast<size_t>(s)), im(static_cast<size_t>(s));
      for (Eigen::Index t = 0; t < s; ++t) {
        const Complex v = corners[static_cast<size_t>(t)](i, j);
        re[static_cast<size_t>(t)] = scale * v.real();
        im[static_cast<size_t>(t)] = scale * v.imag();
      }
      const std::string suffix =
          "_" + std::to_string(i + 1) + std::to_string(j + 1);
      const KsResult kr = ks_one_sample(re, cdf);
      rep.tests.push_back({"ks Re(V)" + suffix, kr.statistic, kr.p_value, 0.0, false});
      const KsResult ki = ks_one_sample(im, cdf);
      rep.tests.push_back({"ks Im(V)" + suffix, ki.statistic, ki.p_value, 0.0, false});
    }
  detail::finalize(rep);
  return rep;
}

// (d) Power entries: sqrt(N) [U^n]_{ij} parts against N(0, 1/2).
inline ExperimentReport run_power_entries(ExperimentConfig cfg) {
  if (cfg.dim == 0) cfg.dim = 256;
  if (cfg.p == 0) cfg.p = 2;
  if (cfg.samples == 0) cfg.samples = 2000;
  if (cfg.max_power == 0) cfg.max_power = 3;
  const Eigen::Index n = cfg.dim, p = cfg.p, s = cfg.samples, np = cfg.max_power;
  ExperimentReport rep;
  rep.config = cfg;
  const double scale = std::sqrt(static_cast<double>(n));
  std::vector<std::vector<ComplexMatrix>> pw(static_cast<size_t>(s));
  detail::parallel_trials(s, [&](Eigen::Index t) {
    RngStream rng = detail::make_stream(cfg.seed, 0, static_cast<std::uint64_t>(t));
    pw[static_cast<size_t>(t)] = detail::corner_powers(sample_haar(n, rng), p, np);
  });
  const auto cdf = [](double x) { return normal_cdf(x, 0.0, std::sqrt(0.5)); };
  for (Eigen::Index k = 0; k < np; ++k)
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index j = 0; j < p; ++j) {
        std::vector<double> re(static_cast<size_t>(s)), im(static_cast<size_t>(s));
        for (Eigen::Index t = 0; t < s; ++t) {
          const Complex v = pw[static_cast<size_t>(t)][static_cast<size_t>(k)](i, j);
          re[static_cast<size_t>(t)] = scale * v.real();
          im[static_cast<size_t>(t)] = scale * v.imag();
        }
        const std::string suffix = " n=" + std::to_string(k + 1) + " (" +
                                   std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + ")";
        const KsResult kr = ks_one_sample(re, cdf);
        rep.tests.push_back({"ks Re U^n" + suffix, kr.statistic, kr.p_value, 0.0, false});
        const KsResult ki = ks_one_sample(im, cdf);
        rep.tests.push_back({"ks Im U^n" + suffix, ki.statistic, ki.p_value, 0.0, false});
      }
  detail::finalize(rep);
  return rep;
}

// (e) Weight-law equivalence: tr of the first spectral weight of a Haar
// unitary against the Gaussian h^{-1/2} v h^{-1/2} construction.
inline ExperimentReport run_weights_equivalence(ExperimentConfig cfg) {
  if (cfg.dim == 0) cfg.dim = 16;
  if (cfg.p == 0) cfg.p = 2;
  if (cfg.samples == 0) cfg.samples = 5000;
  const Eigen::Index n = cfg.dim, p = cfg.p, s = cfg.samples;
  ExperimentReport rep;
  rep.config = cfg;
  std::vector<double> eig_route(static_cast<size_t>(s)), gauss_route(static_cast<size_t>(s));
  detail::parallel_trials(s, [&](Eigen::Index t) {
    RngStream r1 = detail::make_stream(cfg.seed, 0, static_cast<std::uint64_t>(t));
    const AtomicMatrixMeasure mu = spectral_measure(sample_haar(n, r1), p);
    eig_route[static_cast<size_t>(t)] = mu.weights.front().trace().real();
    RngStream r2 = detail::make_stream(cfg.seed, 1, static_cast<std::uint64_t>(t));
    gauss_route[static_cast<size_t>(t)] =
        sample_weights(n, p, r2).front().trace().real();
  });
  const KsResult ks = ks_two_sample(eig_route, gauss_route);
  rep.tests.push_back({"ks tr(w_1) eigenvector vs gaussian", ks.statistic,
                       ks.p_value, 0.0, false});
  detail::finalize(rep);
  return rep;
}

// (f) Independence of eigenvalues and weights: sample correlations between
// angle statistics and weight functionals must vanish at the CLT scale.
inline ExperimentReport run_independence(ExperimentConfig cfg) {
  if (cfg.dim == 0) cfg.dim = 16;
  if (cfg.p == 0) cfg.p = 2;
  if (cfg.samples == 0) cfg.samples = 2000;
  const Eigen::Index n = cfg.dim, p = cfg.p, s = cfg.samples;
  ExperimentReport rep;
  rep.config = cfg;
  std::vector<double> a1(static_cast<size_t>(s)), a2(static_cast<size_t>(s)),
      w1(static_cast<size_t>(s)), w2(static_cast<size_t>(s));
  detail::parallel_trials(s, [&](Eigen::Index t) {
    RngStream rng = detail::make_stream(cfg.seed, 0, static_cast<std::uint64_t>(t));
    const AtomicMatrixMeasure mu = spectral_measure(sample_haar(n, rng), p);
    double s1 = 0.0, s2 = 0.0, sw2 = 0.0;
    for (double th : mu.atoms) {
      s1 += th;
      s2 += th * th;
    }
    for (const auto& w : mu.weights) {
      const double tw = w.trace().real();
      sw2 += tw * tw;
    }
    a1[static_cast<size_t>(t)] = s1;
    a2[static_cast<size_t>(t)] = s2;
    w1[static_cast<size_t>(t)] = mu.weights.front().trace().real();
    w2[static_cast<size_t>(t)] = sw2;
  });
  const double thr = cfg.corr_threshold_factor / std::sqrt(static_cast<double>(s));
  const std::vector<std::pair<std::string, double>> cs = {
      {"corr(sum theta, tr w_1)", std::abs(pearson_correlation(a1, w1))},
      {"corr(sum theta, sum tr(w)^2)", std::abs(pearson_correlation(a1, w2))},
      {"corr(sum theta^2, tr w_1)", std::abs(pearson_correlation(a2, w1))},
      {"corr(sum theta^2, sum tr(w)^2)", std::abs(pearson_correlation(a2, w2))}};
  for (const auto& [name, c] : cs)
    rep.tests.push_back({name, c, -1.0, thr, c <= thr});
  detail::finalize(rep);
  return rep;
}

// (g) Szegő identity: coefficient rate equals the density rate of the
// synthesized measure, across random strict contractions.
inline ExperimentReport run_szego_identity(ExperimentConfig cfg) {
  if (cfg.trials == 0) cfg.trials = cfg.samples ? cfg.samples : 100;
  if (cfg.samples == 0) cfg.samples = cfg.trials;
  if (cfg.grid_size == 0) cfg.grid_size = 4096;
  ExperimentReport rep;
  rep.config = cfg;
  double worst = 0.0;
  for (Eigen::Index t = 0; t < cfg.trials; ++t) {
    RngStream rng = detail::make_stream(cfg.seed, 0, static_cast<std::uint64_t>(t));
    const Eigen::Index p = 1 + static_cast<Eigen::Index>(t % 3);
    const Eigen::Index deg = 1 + static_cast<Eigen::Index>((t / 3) % 4);
    std::vector<ComplexMatrix> coeffs;
    for (Eigen::Index j = 0; j < deg; ++j)
      coeffs.push_back(sample_ball_contraction(p, rng, 0.7));
    const VerblunskySeq seq = VerblunskySeq::from_coefficients(p, coeffs);
    const RateValue lhs = rate_seq(seq);
    const RateValue rhs = rate_ac_measure(bernstein_szego_density(seq, cfg.grid_size));
    if (lhs.infinite || rhs.infinite) {
      worst = std::numeric_limits<double>::max();
      break;
    }
    worst = std::max(worst, std::abs(lhs.value - rhs.value));
  }
  rep.tests.push_back({"max |rate_seq - rate_ac(bernstein_szego)|", worst, -1.0,
                       1e-6, worst <= 1e-6});
  detail::finalize(rep);
  return rep;
}

// (h) Moment-space interior: truncated moment sequences of Haar spectral
// measures sit strictly inside the moment space.
inline ExperimentReport run_moment_interior(ExperimentConfig cfg) {
  if (cfg.dim == 0) cfg.dim = 12;
  if (cfg.p == 0) cfg.p = 2;
  if (cfg.trials == 0) cfg.trials = cfg.samples ? cfg.samples : 500;
  if (cfg.samples == 0) cfg.samples = cfg.trials;
  const Eigen::Index n = cfg.dim, p = cfg.p;
  const Eigen::Index q = n / p;
  const Eigen::Index j_max = cfg.coeff_count ? cfg.coeff_count : q - 1;
  if (j_max < 1 || j_max > q - 1)
    throw std::invalid_argument("moment-interior: need 1 <= J <= Q-1");
  ExperimentReport rep;
  rep.config = cfg;
  std::vector<int> interior(static_cast<size_t>(cfg.trials), 0);
  detail::parallel_trials(cfg.trials, [&](Eigen::Index t) {
    RngStream rng = detail::make_stream(cfg.seed, 0, static_cast<std::uint64_t>(t));
    const AtomicMatrixMeasure mu = spectral_measure(sample_haar(n, rng), p);
    std::vector<ComplexMatrix> moments;
    for (Eigen::Index l = 0; l <= j_max; ++l) moments.push_back(moment(mu, l));
    moments[0] = ComplexMatrix::Identity(p, p);  // kill roundoff in m_0
    interior[static_cast<size_t>(t)] =
        moment_space_position(moments) == MomentSpacePosition::interior ? 1 : 0;
  });
  double frac = 0.0;
  for (int v : interior) frac += v;
  frac /= static_cast<double>(cfg.trials);
  rep.tests.push_back({"interior fraction (J=" + std::to_string(j_max) + ")", frac,
                       -1.0, 1.0, frac >= 1.0});
  detail::finalize(rep);
  return rep;
}

// (i) Scalar LDP decay: -(1/N) log corner density at v = 1/2 approaches the
// ball rate at speed (2 log N)/N.
inline ExperimentReport run_ldp_decay(ExperimentConfig cfg) {
  ExperimentReport rep;
  rep.config = cfg;
  ComplexMatrix v(1, 1);
  v(0, 0) = 0.5;
  const RateValue rate = rate_ball(v);
  for (const Eigen::Index n : {200, 400, 800}) {
    const double stat =
        std::abs(-corner_log_density(v, n) / static_cast<double>(n) - rate.value);
    const double bound = 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n);
    rep.tests.push_back({"|rate gap| N=" + std::to_string(n), stat, -1.0, bound,
                         stat <= bound});
  }
  detail::finalize(rep);
  return rep;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  if (cfg.experiment == "verblunsky-law")
    rep = run_verblunsky_law(cfg);
  else if (cfg.experiment == "clt")
    rep = run_clt(cfg);
  else if (cfg.experiment == "corner-clt")
    rep = run_corner_clt(cfg);
  else if (cfg.experiment == "power-entries")
    rep = run_power_entries(cfg);
  else if (cfg.experiment == "weights-equivalence")
    rep = run_weights_equivalence(cfg);
  else if (cfg.experiment == "independence")
    rep = run_independence(cfg);
  else if (cfg.experiment == "szego-identity")
    rep = run_szego_identity(cfg);
  else if (cfg.experiment == "moment-interior")
    rep = run_moment_interior(cfg);
  else if (cfg.experiment == "ldp-decay")
    rep = run_ldp_decay(cfg);
  else
    throw std::invalid_argument("unknown experiment: " + cfg.experiment);
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "verblunsky-law", "clt",          "corner-clt",
      "power-entries",  "weights-equivalence", "independence",
      "szego-identity", "moment-interior",     "ldp-decay"};
  return names;
}

}  // namespace mopuc
