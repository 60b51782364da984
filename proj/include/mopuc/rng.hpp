// Seeded, splittable random streams.
//
// RngStream(seed, stream_id) is bit-exact reproducible for a fixed build:
// the engine is std::mt19937_64 (fully specified by the standard) and all
// variates are produced by explicit Box-Muller / bit manipulation rather
// than the implementation-defined std distributions. Distinct stream ids
// give independent streams for data-parallel Monte Carlo.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace mopuc {

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    // Feed both words through seed_seq so that nearby (seed, stream) pairs
    // land in unrelated engine states.
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32),
                      0x9e3779b9u};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1]; never returns 0 so logs are always finite.
  double uniform() {
    const std::uint64_t bits = engine_() >> 11;  // 53 random bits
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
  }

  // Standard complex Gaussian: Re and Im independent N(0, 1/2), E|z|^2 = 1.
  std::complex<double> complex_gaussian() {
    const double r = std::sqrt(-std::log(uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

  // Real N(0, 1) via Box-Muller; the paired variate is cached.
  double gaussian() {
    if (has_cache_) {
      has_cache_ = false;
      return cache_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    cache_ = r * std::sin(t);
    has_cache_ = true;
    return r * std::cos(t);
  }

  // Derived stream for trial-level parallelism.
  RngStream substream(std::uint64_t k) const {
    return RngStream(seed_, stream_id_ * 0x100000000ull + k + 1);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double cache_ = 0.0;
  bool has_cache_ = false;
};

}  // namespace mopuc
