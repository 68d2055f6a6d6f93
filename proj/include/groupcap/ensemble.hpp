#pragma once

// Random shifted-homomorphism code ensemble over a finite Abelian group.
//
// A configuration fixes per-ring rational weights w_i, a scale k with every
// w_i*k integral, and a block length n. Messages live in (+)_i R_i^{w_i k};
// a random encoder maps the unit of each message digit to a random group
// element per position (the generator) and adds a uniform dither vector, so
// codeword(m) = phi(u(m)) + v with phi a homomorphism. This header covers
// configuration, message embedding, encoder sampling, maximum-likelihood and
// typicality decoding, and the Monte Carlo error estimator. Exhaustive
// small-instance oracles live in oracles.hpp.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "channel.hpp"
#include "group.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace groupcap {

enum class DecoderKind { MaximumLikelihood, Typicality };

struct DecoderSpec {
  DecoderKind kind = DecoderKind::MaximumLikelihood;
  double epsilon = 0.1;  // typicality threshold; ignored by ML
};

// How generator images are drawn. PerRingCoordinate puts the image of ring
// i's unit in the embedded copy of R_i (zero in every other ring), which is
// the sampling law the closed-form collision probability describes exactly.
// Annihilator draws uniformly from all elements killed by p_i^{r_i}, i.e.
// every valid image of the unit under a homomorphism; on groups with
// repeated primes that is a strictly larger set and the collision law
// differs (see oracles.hpp).
enum class GeneratorSampling { PerRingCoordinate, Annihilator };

struct EnsembleConfig {
  Group group;
  std::vector<Rational> weights;  // per ring, nonnegative, sum exactly 1
  std::uint64_t k = 0;
  std::uint64_t n = 1;
  DecoderSpec decoder;
  GeneratorSampling sampling = GeneratorSampling::PerRingCoordinate;

  // Derived by make_ensemble_config.
  std::vector<std::uint64_t> block_sizes;  // b_i = w_i * k
  std::uint64_t message_count = 1;         // M = prod |R_i|^{b_i}
  double rate = 0.0;                       // log2(M) / n
};

inline EnsembleConfig make_ensemble_config(const Group& g, std::vector<Rational> weights,
                                           std::uint64_t k, std::uint64_t n,
                                           DecoderSpec decoder = {},
                                           GeneratorSampling sampling =
                                               GeneratorSampling::PerRingCoordinate) {
  if (weights.size() != g.arity())
    throw std::invalid_argument("ensemble: one weight per ring required");
  if (n == 0) throw std::invalid_argument("ensemble: block length must be >= 1");
  if (decoder.epsilon < 0.0 || !std::isfinite(decoder.epsilon))
    throw std::invalid_argument("ensemble: typicality epsilon must be finite and >= 0");
  Rational sum{0, 1};
  for (const Rational& w : weights) {
    if (w.num < 0) throw std::invalid_argument("ensemble: weights must be nonnegative");
    sum = add(sum, w);
  }
  if (sum != Rational{1, 1}) throw std::invalid_argument("ensemble: weights must sum to 1");

  EnsembleConfig cfg{g, std::move(weights), k, n, decoder, sampling, {}, 1, 0.0};
  unsigned __int128 m = 1;
  double bits = 0.0;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    const Rational& w = cfg.weights[i];
    const __int128 scaled = static_cast<__int128>(w.num) * static_cast<__int128>(k);
    if (scaled % w.den != 0)
      throw std::invalid_argument("ensemble: weight " + format_rational(w) +
                                  " times k = " + std::to_string(k) + " is not an integer");
    const std::uint64_t b = static_cast<std::uint64_t>(scaled / w.den);
    cfg.block_sizes.push_back(b);
    for (std::uint64_t t = 0; t < b; ++t) {
      m *= g.rings[i].modulus;
      if (m > UINT64_MAX) throw std::overflow_error("ensemble: message count overflows 64 bits");
    }
    bits += static_cast<double>(b) * static_cast<double>(g.rings[i].exponent) *
            std::log2(static_cast<double>(g.rings[i].prime));
  }
  cfg.message_count = static_cast<std::uint64_t>(m);
  cfg.rate = bits / static_cast<double>(n);
  return cfg;
}

// Picks the admissible k closest to the requested rate: k must be a multiple
// of the least common multiple of the weight denominators, and the achieved
// rate is (k/n) * sum_i w_i r_i log2 p_i. Ties round away from zero.
inline EnsembleConfig config_for_rate(const Group& g, const std::vector<Rational>& weights,
                                      std::uint64_t n, double target_rate,
                                      DecoderSpec decoder = {},
                                      GeneratorSampling sampling =
                                          GeneratorSampling::PerRingCoordinate) {
  if (weights.size() != g.arity())
    throw std::invalid_argument("ensemble: one weight per ring required");
  if (!(target_rate >= 0.0) || !std::isfinite(target_rate))
    throw std::invalid_argument("ensemble: target rate must be finite and >= 0");
  std::uint64_t step = 1;
  double bits_per_k = 0.0;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    step = std::lcm(step, static_cast<std::uint64_t>(weights[i].den));
    bits_per_k += to_double(weights[i]) * static_cast<double>(g.rings[i].exponent) *
                  std::log2(static_cast<double>(g.rings[i].prime));
  }
  if (bits_per_k <= 0.0) throw std::invalid_argument("ensemble: weights carry no rate");
  const double target_k = target_rate * static_cast<double>(n) / bits_per_k;
  const auto steps = static_cast<std::uint64_t>(
      std::llround(target_k / static_cast<double>(step)));
  return make_ensemble_config(g, weights, steps * step, n, decoder, sampling);
}

// Per-ring digit blocks; blocks[i][K] is the K-th R_i digit of the word.
struct MessageWord {
  std::vector<std::vector<std::uint64_t>> blocks;
};

inline void check_word(const EnsembleConfig& cfg, const MessageWord& w) {
  if (w.blocks.size() != cfg.group.arity())
    throw std::invalid_argument("message word: ring count mismatch");
  for (std::size_t i = 0; i < w.blocks.size(); ++i) {
    if (w.blocks[i].size() != cfg.block_sizes[i])
      throw std::invalid_argument("message word: block " + std::to_string(i) + " has wrong size");
    for (std::uint64_t d : w.blocks[i])
      if (d >= cfg.group.rings[i].modulus)
        throw std::invalid_argument("message word: digit out of range");
  }
}

// Mixed-radix expansion of the message index, least significant digit first,
// blocks in ring order. Bijective on [0, M).
inline MessageWord message_embedding(const EnsembleConfig& cfg, std::uint64_t m) {
  if (m >= cfg.message_count) throw std::out_of_range("message index out of range");
  MessageWord w;
  w.blocks.resize(cfg.group.arity());
  for (std::size_t i = 0; i < cfg.group.arity(); ++i) {
    const std::uint64_t q = cfg.group.rings[i].modulus;
    w.blocks[i].resize(cfg.block_sizes[i]);
    for (std::uint64_t& d : w.blocks[i]) {
      d = m % q;
      m /= q;
    }
  }
  return w;
}

inline std::uint64_t message_index(const EnsembleConfig& cfg, const MessageWord& w) {
  check_word(cfg, w);
  std::uint64_t m = 0;
  for (std::size_t i = cfg.group.arity(); i-- > 0;) {
    const std::uint64_t q = cfg.group.rings[i].modulus;
    for (std::size_t K = w.blocks[i].size(); K-- > 0;) m = m * q + w.blocks[i][K];
  }
  return m;
}

inline MessageWord word_add(const EnsembleConfig& cfg, const MessageWord& a,
                            const MessageWord& b) {
  check_word(cfg, a);
  check_word(cfg, b);
  MessageWord c = a;
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    const std::uint64_t q = cfg.group.rings[i].modulus;
    for (std::size_t K = 0; K < c.blocks[i].size(); ++K) {
      c.blocks[i][K] += b.blocks[i][K];
      if (c.blocks[i][K] >= q) c.blocks[i][K] -= q;
    }
  }
  return c;
}

inline MessageWord word_sub(const EnsembleConfig& cfg, const MessageWord& a,
                            const MessageWord& b) {
  check_word(cfg, a);
  check_word(cfg, b);
  MessageWord c = a;
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    const std::uint64_t q = cfg.group.rings[i].modulus;
    for (std::size_t K = 0; K < c.blocks[i].size(); ++K)
      c.blocks[i][K] = (c.blocks[i][K] + q - b.blocks[i][K]) % q;
  }
  return c;
}

inline bool word_is_zero(const MessageWord& w) {
  for (const auto& block : w.blocks)
    for (std::uint64_t d : block)
      if (d != 0) return false;
  return true;
}

using Codeword = std::vector<GroupElement>;

// Digit-major generator table: generators[d][N] is the image of digit d's
// unit at position N, where d runs over (ring 0 block, ring 1 block, ...) in
// embedding order. The dither is one group element per position.
struct Encoder {
  std::vector<Codeword> generators;
  Codeword dither;
};

// Draw order (part of the reproducibility contract): for each digit in
// embedding order, its n generator images position by position; then the
// dither position by position, one coordinate draw per ring.
inline Encoder sample_encoder(const EnsembleConfig& cfg, std::mt19937_64& rng) {
  const Group& g = cfg.group;
  Encoder enc;
  std::vector<std::vector<GroupElement>> annihilators;
  if (cfg.sampling == GeneratorSampling::Annihilator) {
    annihilators.reserve(g.arity());
    for (std::size_t i = 0; i < g.arity(); ++i)
      annihilators.push_back(annihilator_subgroup(g, i));
  }
  for (std::size_t i = 0; i < g.arity(); ++i) {
    for (std::uint64_t K = 0; K < cfg.block_sizes[i]; ++K) {
      Codeword gen(cfg.n, zero(g));
      for (std::uint64_t N = 0; N < cfg.n; ++N) {
        if (cfg.sampling == GeneratorSampling::PerRingCoordinate) {
          gen[N].coords[i] = uniform_index(rng, g.rings[i].modulus);
        } else {
          const auto& ann = annihilators[i];
          gen[N] = ann[static_cast<std::size_t>(uniform_index(rng, ann.size()))];
        }
      }
      enc.generators.push_back(std::move(gen));
    }
  }
  enc.dither.resize(cfg.n, zero(g));
  for (std::uint64_t N = 0; N < cfg.n; ++N)
    for (std::size_t j = 0; j < g.arity(); ++j)
      enc.dither[N].coords[j] = uniform_index(rng, g.rings[j].modulus);
  return enc;
}

inline void check_encoder(const EnsembleConfig& cfg, const Encoder& enc) {
  std::size_t digits = 0;
  for (std::uint64_t b : cfg.block_sizes) digits += static_cast<std::size_t>(b);
  if (enc.generators.size() != digits || enc.dither.size() != cfg.n)
    throw std::invalid_argument("encoder: shape mismatch");
  for (const Codeword& gen : enc.generators)
    if (gen.size() != cfg.n) throw std::invalid_argument("encoder: generator length mismatch");
}

// codeword(word)[N] = dither[N] + sum over digits of digit * generator[d][N].
inline Codeword encode(const EnsembleConfig& cfg, const Encoder& enc, const MessageWord& w) {
  check_word(cfg, w);
  check_encoder(cfg, enc);
  const Group& g = cfg.group;
  Codeword x = enc.dither;
  std::size_t d = 0;
  for (std::size_t i = 0; i < g.arity(); ++i)
    for (std::uint64_t K = 0; K < cfg.block_sizes[i]; ++K, ++d) {
      const std::uint64_t a = w.blocks[i][K];
      if (a == 0) continue;
      for (std::uint64_t N = 0; N < cfg.n; ++N)
        x[N] = add(g, x[N], scalar_mul(g, a, enc.generators[d][N]));
    }
  return x;
}

// Joint law on (group element, output symbol) pairs, row-major by element
// rank. The reference for typicality decoding is uniform input times the
// channel.
struct JointDistribution {
  Group group;
  std::size_t outputs = 0;
  std::vector<double> p;
};

inline JointDistribution uniform_joint(const Channel& ch) {
  JointDistribution j{ch.group, ch.output_size, ch.w};
  const double u = 1.0 / static_cast<double>(ch.group.order);
  for (double& v : j.p) v *= u;
  return j;
}

// Jointly typical iff every pair frequency is within eps/(|X||Y|) of the
// joint law and no zero-probability pair occurs.
inline bool is_jointly_typical(const JointDistribution& joint, const Codeword& x,
                               const std::vector<std::size_t>& y, double eps) {
  if (x.size() != y.size()) throw std::invalid_argument("typicality: length mismatch");
  if (eps < 0.0 || !std::isfinite(eps))
    throw std::invalid_argument("typicality: epsilon must be finite and >= 0");
  if (x.empty()) throw std::invalid_argument("typicality: empty sequence");
  const std::size_t cells = static_cast<std::size_t>(joint.group.order) * joint.outputs;
  std::vector<std::uint64_t> count(cells, 0);
  for (std::size_t N = 0; N < x.size(); ++N) {
    check_element(joint.group, x[N]);
    if (y[N] >= joint.outputs) throw std::invalid_argument("typicality: output out of range");
    const std::size_t cell =
        static_cast<std::size_t>(element_index(joint.group, x[N])) * joint.outputs + y[N];
    if (joint.p[cell] == 0.0) return false;  // forbidden pair occurs
    ++count[cell];
  }
  const double nn = static_cast<double>(x.size());
  const double threshold = eps / static_cast<double>(cells);
  for (std::size_t c = 0; c < cells; ++c)
    if (std::fabs(static_cast<double>(count[c]) / nn - joint.p[c]) > threshold) return false;
  return true;
}

// Highest-likelihood codeword index; ties go to the smallest index. Scores
// are sums of log channel weights over positions, in position order.
inline std::size_t ml_decode(const Channel& ch, const std::vector<Codeword>& codebook,
                             const std::vector<std::size_t>& y) {
  if (codebook.empty()) throw std::invalid_argument("ml_decode: empty codebook");
  for (std::size_t s : y)
    if (s >= ch.output_size) throw std::invalid_argument("ml_decode: output out of range");
  const double neg_inf = -std::numeric_limits<double>::infinity();
  double best = neg_inf;
  std::size_t best_m = 0;
  for (std::size_t m = 0; m < codebook.size(); ++m) {
    const Codeword& x = codebook[m];
    if (x.size() != y.size()) throw std::invalid_argument("ml_decode: codeword length mismatch");
    double score = 0.0;
    for (std::size_t N = 0; N < x.size(); ++N) {
      const double w = ch.at(element_index(ch.group, x[N]), y[N]);
      score += w > 0.0 ? std::log(w) : neg_inf;
    }
    if (score > best) {
      best = score;
      best_m = m;
    }
  }
  return best_m;
}

// The unique codeword jointly typical with y, if any; otherwise failure.
inline std::optional<std::size_t> typicality_decode(const Channel& ch,
                                                    const std::vector<Codeword>& codebook,
                                                    const std::vector<std::size_t>& y,
                                                    double eps) {
  const JointDistribution joint = uniform_joint(ch);
  std::optional<std::size_t> hit;
  for (std::size_t m = 0; m < codebook.size(); ++m) {
    if (!is_jointly_typical(joint, codebook[m], y, eps)) continue;
    if (hit) return std::nullopt;  // not unique
    hit = m;
  }
  return hit;
}

struct TrialStats {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double error_rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
};

// 95% Wilson score interval; always contains the point estimate.
inline TrialStats make_trial_stats(std::uint64_t errors, std::uint64_t trials,
                                   std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trial stats: need at least one trial");
  const double z = 1.959963984540054;
  const double t = static_cast<double>(trials);
  const double phat = static_cast<double>(errors) / t;
  const double z2t = z * z / t;
  const double center = (phat + z2t / 2.0) / (1.0 + z2t);
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / t + z2t / (4.0 * t)) / (1.0 + z2t);
  return TrialStats{trials, errors, phat, std::max(0.0, center - half),
                    std::min(1.0, center + half), seed};
}

struct MonteCarloOptions {
  bool fixed_code = false;  // reuse one encoder for all trials
  unsigned threads = 0;     // 0 = hardware concurrency
};

namespace detail {

// Flat per-trial working state for the decoder scan. Codewords are kept as
// raw coordinates plus the element rank per position; enumerating messages
// in embedding order only ever adds a generator to every position once per
// carried digit, because radix * generator = 0 for both sampling modes.
struct CodebookScan {
  const Group* group;
  std::uint64_t n;
  std::vector<std::uint64_t> moduli;          // per ring
  std::vector<std::uint64_t> radix;           // per digit
  std::vector<std::uint64_t> gen;             // digit-major [d][N][ring]
  std::vector<std::uint64_t> digit;           // odometer state
  std::vector<std::uint64_t> coords;          // current codeword [N][ring]
  std::vector<std::uint64_t> index;           // current element rank per position

  void reset(const EnsembleConfig& cfg, const Encoder& enc) {
    const Group& g = cfg.group;
    group = &g;
    n = cfg.n;
    const std::size_t arity = g.arity();
    moduli.resize(arity);
    for (std::size_t j = 0; j < arity; ++j) moduli[j] = g.rings[j].modulus;
    radix.clear();
    for (std::size_t i = 0; i < arity; ++i)
      radix.insert(radix.end(), static_cast<std::size_t>(cfg.block_sizes[i]),
                   g.rings[i].modulus);
    gen.assign(radix.size() * n * arity, 0);
    for (std::size_t d = 0; d < radix.size(); ++d)
      for (std::uint64_t N = 0; N < n; ++N)
        for (std::size_t j = 0; j < arity; ++j)
          gen[(d * n + N) * arity + j] = enc.generators[d][N].coords[j];
    digit.assign(radix.size(), 0);
    coords.assign(n * arity, 0);
    index.assign(n, 0);
    for (std::uint64_t N = 0; N < n; ++N) {
      std::uint64_t idx = 0;
      for (std::size_t j = 0; j < arity; ++j) {
        coords[N * arity + j] = enc.dither[N].coords[j];
        idx = idx * moduli[j] + coords[N * arity + j];
      }
      index[N] = idx;
    }
  }

  void add_generator(std::size_t d) {
    const std::size_t arity = moduli.size();
    for (std::uint64_t N = 0; N < n; ++N) {
      std::uint64_t idx = 0;
      for (std::size_t j = 0; j < arity; ++j) {
        std::uint64_t c = coords[N * arity + j] + gen[(d * n + N) * arity + j];
        if (c >= moduli[j]) c -= moduli[j];
        coords[N * arity + j] = c;
        idx = idx * moduli[j] + c;
      }
      index[N] = idx;
    }
  }

  // Steps the odometer to the next message; the caller stops after M - 1.
  void advance() {
    std::size_t d = 0;
    while (true) {
      add_generator(d);
      if (++digit[d] < radix[d]) return;
      digit[d] = 0;
      ++d;
    }
  }

  Codeword materialise() const {
    const std::size_t arity = moduli.size();
    Codeword x(n, zero(*group));
    for (std::uint64_t N = 0; N < n; ++N)
      for (std::size_t j = 0; j < arity; ++j) x[N].coords[j] = coords[N * arity + j];
    return x;
  }
};

// ML scan over all messages without materialising the codebook. Matches
// ml_decode on the enumerated codebook exactly: same score expression, same
// position order, same tie rule.
inline std::uint64_t ml_scan(const EnsembleConfig& cfg, const Encoder& enc,
                             const std::vector<double>& loglik, std::size_t outputs,
                             const std::vector<std::size_t>& y, CodebookScan& scan) {
  scan.reset(cfg, enc);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  double best = neg_inf;
  std::uint64_t best_m = 0;
  for (std::uint64_t m = 0;; ++m) {
    double score = 0.0;
    for (std::uint64_t N = 0; N < scan.n; ++N)
      score += loglik[static_cast<std::size_t>(scan.index[N]) * outputs + y[N]];
    if (score > best) {
      best = score;
      best_m = m;
    }
    if (m + 1 == cfg.message_count) return best_m;
    scan.advance();
  }
}

inline std::optional<std::uint64_t> typicality_scan(const EnsembleConfig& cfg,
                                                    const Encoder& enc,
                                                    const JointDistribution& joint,
                                                    const std::vector<std::size_t>& y,
                                                    CodebookScan& scan, double eps) {
  scan.reset(cfg, enc);
  std::optional<std::uint64_t> hit;
  for (std::uint64_t m = 0;; ++m) {
    if (is_jointly_typical(joint, scan.materialise(), y, eps)) {
      if (hit) return std::nullopt;
      hit = m;
    }
    if (m + 1 == cfg.message_count) return hit;
    scan.advance();
  }
}

}  // namespace detail

// Ensemble-average block error rate. Trial t draws everything it needs from
// the substream (seed, t): a fresh encoder (unless fixed_code, which draws
// one shared encoder from the substream (seed, 2^64 - 1)), then a uniform
// message, then one channel output per position. The decoder is taken from
// the configuration. Results are independent of the worker count because
// trials only ever combine through integer error counts.
inline TrialStats monte_carlo_error(const Channel& ch, const EnsembleConfig& cfg,
                                    std::uint64_t trials, std::uint64_t seed,
                                    const MonteCarloOptions& opts = {}) {
  if (trials == 0) throw std::invalid_argument("monte carlo: need at least one trial");
  if (ch.group.rings.size() != cfg.group.arity())
    throw std::invalid_argument("monte carlo: channel and ensemble groups differ");
  for (std::size_t i = 0; i < cfg.group.arity(); ++i)
    if (ch.group.rings[i].prime != cfg.group.rings[i].prime ||
        ch.group.rings[i].exponent != cfg.group.rings[i].exponent)
      throw std::invalid_argument("monte carlo: channel and ensemble groups differ");

  const std::size_t nx = static_cast<std::size_t>(ch.group.order);
  const std::size_t ny = ch.output_size;
  std::vector<std::vector<double>> rows(nx, std::vector<double>(ny));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t yy = 0; yy < ny; ++yy) rows[x][yy] = ch.at(x, yy);
  std::vector<double> loglik(nx * ny);
  for (std::size_t c = 0; c < loglik.size(); ++c)
    loglik[c] = ch.w[c] > 0.0 ? std::log(ch.w[c])
                              : -std::numeric_limits<double>::infinity();
  const JointDistribution joint =
      cfg.decoder.kind == DecoderKind::Typicality ? uniform_joint(ch) : JointDistribution{};

  std::optional<Encoder> shared;
  if (opts.fixed_code) {
    auto rng = make_substream(seed, UINT64_MAX);
    shared = sample_encoder(cfg, rng);
  }

  const auto run_trial = [&](std::uint64_t t, detail::CodebookScan& scan) -> bool {
    auto rng = make_substream(seed, t);
    const Encoder enc = shared ? *shared : sample_encoder(cfg, rng);
    const std::uint64_t m = uniform_index(rng, cfg.message_count);
    const Codeword x = encode(cfg, enc, message_embedding(cfg, m));
    std::vector<std::size_t> y(cfg.n);
    for (std::uint64_t N = 0; N < cfg.n; ++N)
      y[N] = sample_discrete(
          rng, rows[static_cast<std::size_t>(element_index(ch.group, x[N]))]);
    if (cfg.decoder.kind == DecoderKind::MaximumLikelihood)
      return detail::ml_scan(cfg, enc, loglik, ny, y, scan) != m;
    const auto decoded = detail::typicality_scan(cfg, enc, joint, y, scan,
                                                 cfg.decoder.epsilon);
    return !decoded || *decoded != m;
  };

  unsigned workers = opts.threads != 0 ? opts.threads
                                       : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, trials));
  std::uint64_t errors = 0;
  if (workers <= 1) {
    detail::CodebookScan scan;
    for (std::uint64_t t = 0; t < trials; ++t) errors += run_trial(t, scan) ? 1 : 0;
  } else {
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        detail::CodebookScan scan;
        std::uint64_t local = 0;
        for (std::uint64_t t = w; t < trials; t += workers)
          local += run_trial(t, scan) ? 1 : 0;
        partial[w] = local;
      });
    for (std::thread& th : pool) th.join();
    for (std::uint64_t c : partial) errors += c;
  }
  return make_trial_stats(errors, trials, seed);
}

}  // namespace groupcap
