#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sixbox {

// Identifier recorded in every report that depends on random draws.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64-substreams";

// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed of substream `stream` of `seed`. Distinct (seed, stream) pairs give
// statistically independent generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; all conversions to doubles and Bernoulli
// draws are done here rather than through <random> distributions, which are
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : Rng(derive_seed(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // True with probability p. p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sixbox
