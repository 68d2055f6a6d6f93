#pragma once

// Deterministic random-number plumbing. Every stochastic routine in this
// library draws from an explicit generator derived from (seed, stream index),
// so runs are reproducible bit-for-bit regardless of scheduling or the number
// of worker threads. Raw variates are produced from mt19937_64 words directly
// (never through std::uniform_*_distribution, whose output is
// implementation-defined).

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace groupcap {

// SplitMix64 step; used only to whiten seeds for substream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent substream for (seed, index); index is typically a trial number.
inline std::mt19937_64 make_substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
  std::uint64_t b = splitmix64(s);
  return std::mt19937_64(a ^ (b + 0x9e3779b97f4a7c15ULL));
}

// Uniform integer in [0, n) by rejection; exact and portable.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Sample an index from a finite distribution given as probabilities.
// The final bucket absorbs rounding slack so the walk always terminates.
inline std::size_t sample_discrete(std::mt19937_64& rng,
                                   const std::vector<double>& probs) {
  double u = uniform_real(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.empty() ? 0 : probs.size() - 1;
}

}  // namespace groupcap
