#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace qsms {

// Seedable random source. All randomness in the library flows through
// instances of this class, passed explicitly; there is no global state.
//
// std::mt19937_64 produces a standard-specified bit stream, but the standard
// distributions are not portable across library implementations, so the
// distribution logic here is written out by hand. Transcripts produced from
// the same seed are therefore byte-identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n), by rejection to avoid modulo bias.
  int uniform_int(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_int needs a positive bound");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return static_cast<int>(x % un);
  }

  // Uniform double in [0, 1) with 53 bits of entropy.
  double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (used only to seed random unitaries).
  double normal() {
    double u1 = uniform_real();
    while (u1 <= 0.0) u1 = uniform_real();
    const double u2 = uniform_real();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  // Derive an independent stream. Children are a pure function of the parent
  // seed and the stream tag, so split order never changes results.
  Rng split(std::uint64_t stream) const { return Rng(mix(mix(seed_ ^ 0x9e3779b97f4a7c15ull) + stream)); }

  // Sample an index from unnormalised non-negative weights. Weights below
  // `floor` are treated as exact zeros (numerical dust from projections).
  std::size_t sample_discrete(std::span<const double> weights, double floor) {
    double total = 0.0;
    for (double w : weights) {
      if (w > floor) total += w;
    }
    if (total <= floor) throw std::logic_error("sample_discrete: no probability mass above floor");
    double u = uniform_real() * total;
    std::size_t last_live = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= floor) continue;
      last_live = i;
      u -= weights[i];
      if (u < 0.0) return i;
    }
    return last_live;  // u landed on accumulated rounding; take the final live bin
  }

  // Fisher-Yates, using this stream's uniform_int.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform_int(static_cast<int>(i)))]);
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    // splitmix64 finaliser
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qsms
