#pragma once

// Exhaustive small-instance oracles for the ensemble. Everything here
// enumerates honestly (generator tuples, dithers, subgroup cosets, message
// differences) under an explicit cap, so tests can compare closed-form
// claims against ground truth computed by brute force.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "channel.hpp"
#include "ensemble.hpp"
#include "group.hpp"
#include "rational.hpp"

namespace groupcap {

// Per-ring valuation profile of a difference word: the smallest p_i-adic
// valuation over the block's digits, capped at r_i; an all-zero block (or an
// empty one) gets r_i. The all-r_i profile occurs only for the zero word.
inline std::vector<std::uint32_t> difference_valuations(const EnsembleConfig& cfg,
                                                        const MessageWord& a) {
  check_word(cfg, a);
  std::vector<std::uint32_t> theta(cfg.group.arity());
  for (std::size_t i = 0; i < cfg.group.arity(); ++i) {
    const Ring& ring = cfg.group.rings[i];
    std::uint32_t t = ring.exponent;
    for (std::uint64_t d : a.blocks[i])
      t = std::min(t, valuation(d, ring.prime, ring.exponent));
    theta[i] = t;
  }
  return theta;
}

// Closed-form pairwise collision probability under per-ring coordinate
// sampling: P(codeword(m + a) = xt | codeword(m) = x) equals
// prod_i p_i^(-n (r_i - theta_i)) when xt - x lies in H(theta)^n and 0
// otherwise, where theta is the valuation profile of a. Exact rational.
inline Rational collision_probability(const EnsembleConfig& cfg, const MessageWord& a,
                                      const Codeword& x, const Codeword& xt) {
  if (word_is_zero(a)) throw std::invalid_argument("collision: difference word is zero");
  if (x.size() != cfg.n || xt.size() != cfg.n)
    throw std::invalid_argument("collision: codeword length mismatch");
  const std::vector<std::uint32_t> theta = difference_valuations(cfg, a);
  const Group& g = cfg.group;
  for (std::uint64_t N = 0; N < cfg.n; ++N) {
    const GroupElement d = sub(g, xt[N], x[N]);
    for (std::size_t i = 0; i < g.arity(); ++i) {
      const std::uint64_t step = detail::checked_pow(g.rings[i].prime, theta[i]);
      if (d.coords[i] % step != 0) return Rational{0, 1};
    }
  }
  __int128 den = 1;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    const Ring& ring = g.rings[i];
    for (std::uint64_t N = 0; N < cfg.n; ++N) {
      for (std::uint32_t e = theta[i]; e < ring.exponent; ++e) {
        den *= static_cast<__int128>(ring.prime);
        if (den > INT64_MAX)
          throw std::overflow_error("collision: probability denominator overflows");
      }
    }
  }
  return make_rational(1, static_cast<std::int64_t>(den));
}

// Rank of a codeword among all |G|^n words, position 0 most significant, so
// ranks follow lexicographic word order.
inline std::uint64_t codeword_index(const Group& g, const Codeword& x) {
  std::uint64_t idx = 0;
  for (const GroupElement& e : x) idx = idx * g.order + element_index(g, e);
  return idx;
}

inline Codeword codeword_at(const Group& g, std::uint64_t n, std::uint64_t idx) {
  Codeword x(n, zero(g));
  for (std::uint64_t N = n; N-- > 0;) {
    x[N] = element_at(g, idx % g.order);
    idx /= g.order;
  }
  return x;
}

// Full joint table of one encoder draw: pair_hits[x][xt] counts the
// (generator tuple, dither) pairs under which the base word encodes to x and
// base + diff encodes to xt. Rows are indexed by codeword_index. Summing a
// row over xt recovers the number of generator tuples mapping the base word
// to x times nothing else, since the dither is a bijection onto x for fixed
// generators; tests assert that explicitly rather than assuming it.
struct CollisionLaw {
  std::uint64_t generator_tuples = 0;
  std::uint64_t word_count = 0;  // |G|^n
  std::vector<std::uint64_t> pair_hits;
};

inline CollisionLaw collision_law_exhaustive(const EnsembleConfig& cfg,
                                             const MessageWord& base,
                                             const MessageWord& diff,
                                             std::uint64_t cap = 10000000) {
  check_word(cfg, base);
  check_word(cfg, diff);
  const Group& g = cfg.group;
  const MessageWord shifted = word_add(cfg, base, diff);

  std::vector<std::vector<GroupElement>> images(g.arity());
  for (std::size_t i = 0; i < g.arity(); ++i) {
    if (cfg.sampling == GeneratorSampling::Annihilator) {
      images[i] = annihilator_subgroup(g, i);
    } else {
      images[i].reserve(static_cast<std::size_t>(g.rings[i].modulus));
      for (std::uint64_t t = 0; t < g.rings[i].modulus; ++t) {
        GroupElement e = zero(g);
        e.coords[i] = t;
        images[i].push_back(e);
      }
    }
  }

  std::vector<std::size_t> slot_ring;  // digit-major, repeated per position
  for (std::size_t i = 0; i < g.arity(); ++i)
    for (std::uint64_t K = 0; K < cfg.block_sizes[i]; ++K)
      for (std::uint64_t N = 0; N < cfg.n; ++N) slot_ring.push_back(i);

  unsigned __int128 tuples = 1;
  for (std::size_t s : slot_ring) {
    tuples *= images[s].size();
    if (tuples > cap) throw std::length_error("collision: enumeration exceeds cap");
  }
  unsigned __int128 words = 1;
  for (std::uint64_t N = 0; N < cfg.n; ++N) {
    words *= g.order;
    if (words > cap) throw std::length_error("collision: enumeration exceeds cap");
  }
  if (tuples * words > cap || words * words > cap)
    throw std::length_error("collision: enumeration exceeds cap");

  CollisionLaw law;
  law.generator_tuples = static_cast<std::uint64_t>(tuples);
  law.word_count = static_cast<std::uint64_t>(words);
  law.pair_hits.assign(static_cast<std::size_t>(law.word_count) *
                           static_cast<std::size_t>(law.word_count),
                       0);

  const std::vector<GroupElement> elements = enumerate_elements(g, g.order);
  std::vector<std::size_t> pick(slot_ring.size(), 0);  // image rank per slot
  std::vector<std::uint64_t> base_digits, shifted_digits;
  for (std::size_t i = 0; i < g.arity(); ++i)
    for (std::uint64_t K = 0; K < cfg.block_sizes[i]; ++K) {
      base_digits.push_back(base.blocks[i][K]);
      shifted_digits.push_back(shifted.blocks[i][K]);
    }

  while (true) {
    Codeword phi_base(cfg.n, zero(g)), phi_shifted(cfg.n, zero(g));
    for (std::size_t d = 0; d < base_digits.size(); ++d)
      for (std::uint64_t N = 0; N < cfg.n; ++N) {
        const GroupElement& img = images[slot_ring[d * cfg.n + N]][pick[d * cfg.n + N]];
        phi_base[N] = add(g, phi_base[N], scalar_mul(g, base_digits[d], img));
        phi_shifted[N] = add(g, phi_shifted[N], scalar_mul(g, shifted_digits[d], img));
      }

    std::vector<std::size_t> vrank(cfg.n, 0);  // dither element rank per position
    while (true) {
      std::uint64_t xi = 0, ti = 0;
      for (std::uint64_t N = 0; N < cfg.n; ++N) {
        const GroupElement& v = elements[vrank[N]];
        xi = xi * g.order + element_index(g, add(g, phi_base[N], v));
        ti = ti * g.order + element_index(g, add(g, phi_shifted[N], v));
      }
      ++law.pair_hits[static_cast<std::size_t>(xi) * law.word_count + ti];

      std::size_t N = cfg.n;
      while (N-- > 0) {
        if (++vrank[N] < elements.size()) break;
        vrank[N] = 0;
      }
      if (N == SIZE_MAX) break;
    }

    std::size_t s = pick.size();
    while (s-- > 0) {
      if (++pick[s] < images[slot_ring[s]].size()) break;
      pick[s] = 0;
    }
    if (s == SIZE_MAX) break;
  }
  return law;
}

// Exact conditional collision probability from the exhaustive table.
inline Rational collision_probability_exhaustive(const EnsembleConfig& cfg,
                                                 const MessageWord& base,
                                                 const MessageWord& diff, const Codeword& x,
                                                 const Codeword& xt,
                                                 std::uint64_t cap = 10000000) {
  if (word_is_zero(diff)) throw std::invalid_argument("collision: difference word is zero");
  if (x.size() != cfg.n || xt.size() != cfg.n)
    throw std::invalid_argument("collision: codeword length mismatch");
  const CollisionLaw law = collision_law_exhaustive(cfg, base, diff, cap);
  const std::uint64_t xi = codeword_index(cfg.group, x);
  const std::uint64_t ti = codeword_index(cfg.group, xt);
  std::uint64_t row = 0;
  for (std::uint64_t c = 0; c < law.word_count; ++c)
    row += law.pair_hits[static_cast<std::size_t>(xi) * law.word_count + c];
  if (row == 0) throw std::domain_error("collision: conditioning event never occurs");
  const std::uint64_t hit =
      law.pair_hits[static_cast<std::size_t>(xi) * law.word_count + ti];
  return make_rational(static_cast<std::int64_t>(hit), static_cast<std::int64_t>(row));
}

// Number of nonzero difference words with the given valuation profile:
// prod_i [ (p_i^(r_i - t_i))^(b_i) - (p_i^(r_i - t_i - 1))^(b_i) ], with
// factor 1 when t_i = r_i. Profiles with every t_i = r_i describe only the
// zero word, so their class is empty. Summed over all profiles this
// partitions the M - 1 nonzero words.
inline std::uint64_t count_valuation_class(const EnsembleConfig& cfg,
                                           const std::vector<std::uint32_t>& theta) {
  const Group& g = cfg.group;
  if (theta.size() != g.arity()) throw std::invalid_argument("valuation class: arity mismatch");
  bool all_max = true;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    if (theta[i] > g.rings[i].exponent)
      throw std::invalid_argument("valuation class: profile exceeds ring exponent");
    if (theta[i] < g.rings[i].exponent) all_max = false;
  }
  if (all_max) return 0;
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    const Ring& ring = g.rings[i];
    if (theta[i] == ring.exponent) continue;  // factor 1
    const std::uint64_t b = cfg.block_sizes[i];
    unsigned __int128 hi = 1, lo = 1;
    for (std::uint64_t K = 0; K < b; ++K) {
      hi *= detail::checked_pow(ring.prime, ring.exponent - theta[i]);
      lo *= detail::checked_pow(ring.prime, ring.exponent - theta[i] - 1);
      if (hi > UINT64_MAX) throw std::overflow_error("valuation class: count overflows");
    }
    total *= hi - lo;
    if (total > UINT64_MAX) throw std::overflow_error("valuation class: count overflows");
  }
  return static_cast<std::uint64_t>(total);
}

// Ground truth for count_valuation_class: bins the valuation profile of
// u(mt) - u(base) over every message mt != base. The result must not depend
// on the base message; tests check that too.
inline std::map<std::vector<std::uint32_t>, std::uint64_t> valuation_class_counts_exhaustive(
    const EnsembleConfig& cfg, std::uint64_t base_message = 0,
    std::uint64_t cap = default_enum_cap()) {
  if (cfg.message_count > cap)
    throw std::length_error("valuation classes: enumeration exceeds cap");
  if (base_message >= cfg.message_count)
    throw std::out_of_range("valuation classes: base message out of range");
  const MessageWord base = message_embedding(cfg, base_message);
  std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
  for (std::uint64_t m = 0; m < cfg.message_count; ++m) {
    if (m == base_message) continue;
    const MessageWord diff = word_sub(cfg, message_embedding(cfg, m), base);
    ++counts[difference_valuations(cfg, diff)];
  }
  return counts;
}

namespace detail {

inline double entropy_of(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

inline double binary_entropy(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return -t * std::log2(t) - (1.0 - t) * std::log2(1.0 - t);
}

}  // namespace detail

// Exact count of sequences in the coset x + H(theta)^n that are jointly
// typical with y, together with an upper bound that holds exactly at every
// finite n, not just asymptotically. The bound multiplies per-ring factors
//
//   min( p_i^((r_i - t_i) n),
//        types_i * 2^( n * (H(X_i, Y) - H(C_i, Y) + delta_i) ) )
//
// where X_i is ring i's coordinate under the uniform-input joint law, C_i
// its coset label modulo p_i^(t_i), types_i counts the empirical types that
// fit in the per-ring typicality box (at most min(2 n eps / (|R_i||Y|) + 1,
// n + 1) per cell), and delta_i is an entropy continuity allowance: any type
// in the box is within total variation min(eps/2, 1) of the joint law, so
// its entropies differ by at most T log2(alphabet - 1) + h(T) each. The
// entropy difference H(X_i,Y) - H(C_i,Y) equals H(X_i|Y) - H(C_i|Y).
struct CosetTypicalCount {
  std::uint64_t count = 0;   // |(x + H^n) intersected with the typical set|
  double bound = 0.0;        // certified upper bound on count
  double slack_bits = 0.0;   // log2 of the type-count and continuity factors
};

inline CosetTypicalCount coset_typical_count(const Channel& ch, const Codeword& x,
                                             const std::vector<std::size_t>& y,
                                             const std::vector<std::uint32_t>& theta,
                                             double eps,
                                             std::uint64_t cap = default_enum_cap()) {
  const Group& g = ch.group;
  if (theta.size() != g.arity()) throw std::invalid_argument("coset count: arity mismatch");
  for (std::size_t i = 0; i < g.arity(); ++i)
    if (theta[i] > g.rings[i].exponent)
      throw std::invalid_argument("coset count: profile exceeds ring exponent");
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("coset count: sequence length mismatch");
  if (x.size() > 10) throw std::invalid_argument("coset count: block length capped at 10");
  const std::uint64_t n = x.size();

  const JointDistribution joint = uniform_joint(ch);
  if (!is_jointly_typical(joint, x, y, eps))
    throw std::invalid_argument("coset count: base word not conditionally typical");

  SubgroupExponents sub{std::vector<std::uint32_t>(theta.begin(), theta.end())};
  check_exponents(g, sub);
  const std::vector<GroupElement> members = subgroup_members(g, sub, cap);
  unsigned __int128 total = 1;
  for (std::uint64_t N = 0; N < n; ++N) {
    total *= members.size();
    if (total > cap) throw std::length_error("coset count: enumeration exceeds cap");
  }

  CosetTypicalCount result;
  std::vector<std::size_t> rank(n, 0);
  Codeword z(n, zero(g));
  while (true) {
    for (std::uint64_t N = 0; N < n; ++N) z[N] = add(g, x[N], members[rank[N]]);
    if (is_jointly_typical(joint, z, y, eps)) ++result.count;
    std::size_t N = n;
    while (N-- > 0) {
      if (++rank[N] < members.size()) break;
      rank[N] = 0;
    }
    if (N == SIZE_MAX) break;
  }

  const std::size_t ny = ch.output_size;
  const double nn = static_cast<double>(n);
  double bound = 1.0, slack = 0.0;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    const Ring& ring = g.rings[i];
    const std::size_t ri = static_cast<std::size_t>(ring.modulus);
    const std::size_t ci = static_cast<std::size_t>(detail::checked_pow(ring.prime, theta[i]));

    std::vector<double> ring_joint(ri * ny, 0.0), coset_joint(ci * ny, 0.0);
    for (std::uint64_t e = 0; e < g.order; ++e) {
      const GroupElement el = element_at(g, e);
      const std::size_t a = static_cast<std::size_t>(el.coords[i]);
      for (std::size_t b = 0; b < ny; ++b) {
        const double w = joint.p[static_cast<std::size_t>(e) * ny + b];
        ring_joint[a * ny + b] += w;
        coset_joint[(a % ci) * ny + b] += w;
      }
    }

    const double cells = static_cast<double>(ri) * static_cast<double>(ny);
    const double window = std::min(2.0 * nn * (eps / cells) + 1.0, nn + 1.0);
    const double type_bits = cells * std::log2(window);

    const double t = std::min(eps / 2.0, 1.0);
    const double delta =
        t * std::log2(std::max<double>(static_cast<double>(ri * ny) - 1.0, 1.0)) +
        detail::binary_entropy(t) +
        t * std::log2(std::max<double>(static_cast<double>(ci * ny) - 1.0, 1.0)) +
        detail::binary_entropy(t);

    const double exponent =
        detail::entropy_of(ring_joint) - detail::entropy_of(coset_joint) + delta;
    const double trivial =
        std::pow(static_cast<double>(ring.prime),
                 static_cast<double>(ring.exponent - theta[i]) * nn);
    const double entropic = std::exp2(type_bits + nn * exponent);
    bound *= std::min(trivial, entropic);
    slack += type_bits + nn * delta;
  }
  result.bound = bound;
  result.slack_bits = slack;
  return result;
}

// Per-position support analysis of a codebook. A position is flagged when
// its symbol multiset is a coset of some subgroup with every member hit
// equally often, which is how a dithered homomorphism's single-letter
// marginal must look.
struct PositionSupport {
  std::vector<GroupElement> support;  // distinct symbols, ascending
  std::uint64_t multiplicity = 0;     // common count when uniform, else 0
  bool uniform = false;
  bool coset = false;
  bool ok = false;
};

inline std::vector<PositionSupport> marginal_uniformity_check(
    const Group& g, const std::vector<Codeword>& codebook) {
  if (codebook.empty()) throw std::invalid_argument("uniformity: empty codebook");
  const std::size_t n = codebook.front().size();
  for (const Codeword& x : codebook)
    if (x.size() != n) throw std::invalid_argument("uniformity: ragged codebook");
  if (n == 0) throw std::invalid_argument("uniformity: empty codewords");

  std::vector<PositionSupport> report(n);
  for (std::size_t N = 0; N < n; ++N) {
    std::map<std::vector<std::uint64_t>, std::uint64_t> counts;
    for (const Codeword& x : codebook) {
      check_element(g, x[N]);
      ++counts[x[N].coords];
    }
    PositionSupport& pos = report[N];
    pos.uniform = true;
    const std::uint64_t first = counts.begin()->second;
    for (const auto& [coords, c] : counts) {
      pos.support.push_back(GroupElement{coords});
      if (c != first) pos.uniform = false;
    }
    if (pos.uniform) pos.multiplicity = first;

    // Support is a coset iff its translate through any one member is a
    // subgroup; closure under addition suffices for a finite set with 0.
    std::set<std::vector<std::uint64_t>> translated;
    for (const GroupElement& s : pos.support)
      translated.insert(sub(g, s, pos.support.front()).coords);
    pos.coset = true;
    for (const auto& a : translated) {
      for (const auto& b : translated) {
        if (!translated.count(add(g, GroupElement{a}, GroupElement{b}).coords)) {
          pos.coset = false;
          break;
        }
      }
      if (!pos.coset) break;
    }
    pos.ok = pos.uniform && pos.coset;
  }
  return report;
}

}  // namespace groupcap
