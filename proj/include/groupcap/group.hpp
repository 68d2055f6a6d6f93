#pragma once

// Finite Abelian groups in primary decomposition.
//
// A group is a direct sum of cyclic rings Z_{p^r}; an element is the tuple of
// its per-ring coordinates. Subgroups handled here are the "scaled" ones
// obtained by multiplying each ring by a prime power: for an exponent vector
// e with 0 <= e_i <= r_i the subgroup is  H(e) = (+)_i p_i^{e_i} Z_{p_i^{r_i}}.
// Every such subgroup has order prod_i p_i^{r_i - e_i}, and its cosets
// partition the group. Elements are ordered lexicographically by coordinates
// throughout; "index" always means the rank in that order.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupcap {

// Enumeration guard. Routines that materialise all elements of a group (or a
// subgroup power) refuse to run past this many items. Overridable through the
// GROUPCAP_MAX_ENUM environment variable.
inline std::uint64_t default_enum_cap() {
  if (const char* s = std::getenv("GROUPCAP_MAX_ENUM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return static_cast<std::uint64_t>(v);
  }
  return 4096;
}

struct Ring {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;
  std::uint64_t modulus = 0;  // prime^exponent
};

struct Group {
  std::vector<Ring> rings;
  std::uint64_t order = 1;

  std::size_t arity() const { return rings.size(); }
};

struct GroupElement {
  std::vector<std::uint64_t> coords;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.coords == b.coords;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.coords < b.coords;  // lexicographic
  }
};

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
  unsigned __int128 v = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    v *= base;
    if (v > UINT64_MAX) throw std::overflow_error("group: ring modulus overflows 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace detail

// Builds a group from (prime, exponent) pairs. Rings keep the given order;
// the element order is lexicographic over that ring order.
inline Group make_group(const std::vector<std::pair<std::uint64_t, std::uint32_t>>& spec) {
  if (spec.empty()) throw std::invalid_argument("group: at least one ring required");
  Group g;
  unsigned __int128 order = 1;
  for (const auto& [p, r] : spec) {
    if (!detail::is_prime(p))
      throw std::invalid_argument("group: " + std::to_string(p) + " is not prime");
    if (r == 0) throw std::invalid_argument("group: ring exponent must be >= 1");
    Ring ring{p, r, detail::checked_pow(p, r)};
    order *= ring.modulus;
    if (order > UINT64_MAX) throw std::overflow_error("group: order overflows 64 bits");
    g.rings.push_back(ring);
  }
  g.order = static_cast<std::uint64_t>(order);
  return g;
}

inline GroupElement zero(const Group& g) {
  return GroupElement{std::vector<std::uint64_t>(g.arity(), 0)};
}

inline void check_element(const Group& g, const GroupElement& a) {
  if (a.coords.size() != g.arity())
    throw std::invalid_argument("group: element arity mismatch");
  for (std::size_t i = 0; i < g.arity(); ++i)
    if (a.coords[i] >= g.rings[i].modulus)
      throw std::invalid_argument("group: coordinate out of range");
}

inline GroupElement add(const Group& g, const GroupElement& a, const GroupElement& b) {
  GroupElement c = a;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    c.coords[i] += b.coords[i];
    if (c.coords[i] >= g.rings[i].modulus) c.coords[i] -= g.rings[i].modulus;
  }
  return c;
}

inline GroupElement neg(const Group& g, const GroupElement& a) {
  GroupElement c = a;
  for (std::size_t i = 0; i < g.arity(); ++i)
    c.coords[i] = a.coords[i] == 0 ? 0 : g.rings[i].modulus - a.coords[i];
  return c;
}

inline GroupElement sub(const Group& g, const GroupElement& a, const GroupElement& b) {
  return add(g, a, neg(g, b));
}

// n-fold sum of a with itself; n is reduced per ring before multiplying.
inline GroupElement scalar_mul(const Group& g, std::uint64_t n, const GroupElement& a) {
  GroupElement c = a;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    const std::uint64_t q = g.rings[i].modulus;
    c.coords[i] = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a.coords[i]) * (n % q)) % q);
  }
  return c;
}

// Rank of an element in lexicographic coordinate order (zero element first).
inline std::uint64_t element_index(const Group& g, const GroupElement& a) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < g.arity(); ++i) idx = idx * g.rings[i].modulus + a.coords[i];
  return idx;
}

inline GroupElement element_at(const Group& g, std::uint64_t index) {
  GroupElement a = zero(g);
  for (std::size_t i = g.arity(); i-- > 0;) {
    a.coords[i] = index % g.rings[i].modulus;
    index /= g.rings[i].modulus;
  }
  if (index != 0) throw std::out_of_range("group: element index out of range");
  return a;
}

// All elements in lexicographic order. Refuses groups larger than max_elements.
inline std::vector<GroupElement> enumerate_elements(const Group& g,
                                                    std::uint64_t max_elements = default_enum_cap()) {
  if (g.order > max_elements)
    throw std::length_error("group: order " + std::to_string(g.order) +
                            " exceeds enumeration cap " + std::to_string(max_elements));
  std::vector<GroupElement> all;
  all.reserve(static_cast<std::size_t>(g.order));
  for (std::uint64_t i = 0; i < g.order; ++i) all.push_back(element_at(g, i));
  return all;
}

// Exponent vector selecting the subgroup (+)_i p_i^{e_i} Z_{p_i^{r_i}}.
struct SubgroupExponents {
  std::vector<std::uint32_t> e;

  friend bool operator==(const SubgroupExponents& a, const SubgroupExponents& b) {
    return a.e == b.e;
  }
  friend bool operator<(const SubgroupExponents& a, const SubgroupExponents& b) {
    return a.e < b.e;
  }
};

inline void check_exponents(const Group& g, const SubgroupExponents& s) {
  if (s.e.size() != g.arity())
    throw std::invalid_argument("subgroup: exponent arity mismatch");
  for (std::size_t i = 0; i < g.arity(); ++i)
    if (s.e[i] > g.rings[i].exponent)
      throw std::invalid_argument("subgroup: exponent exceeds ring exponent");
}

// The trivial subgroup {0} has every exponent maxed out.
inline bool is_trivial_subgroup(const Group& g, const SubgroupExponents& s) {
  for (std::size_t i = 0; i < g.arity(); ++i)
    if (s.e[i] != g.rings[i].exponent) return false;
  return true;
}

// Containment is componentwise: H(b) is a subgroup of H(a) iff a_i <= b_i.
inline bool subgroup_contains(const SubgroupExponents& outer, const SubgroupExponents& inner) {
  for (std::size_t i = 0; i < outer.e.size(); ++i)
    if (inner.e[i] < outer.e[i]) return false;
  return true;
}

inline std::uint64_t subgroup_order(const Group& g, const SubgroupExponents& s) {
  check_exponents(g, s);
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < g.arity(); ++i)
    n *= detail::checked_pow(g.rings[i].prime, g.rings[i].exponent - s.e[i]);
  return n;
}

// Fraction of each ring's rate that survives quotienting by the subgroup:
// coefficient i is (r_i - e_i) / r_i.
inline std::vector<double> rate_coefficients(const Group& g, const SubgroupExponents& s) {
  check_exponents(g, s);
  std::vector<double> c(g.arity());
  for (std::size_t i = 0; i < g.arity(); ++i)
    c[i] = static_cast<double>(g.rings[i].exponent - s.e[i]) /
           static_cast<double>(g.rings[i].exponent);
  return c;
}

// All exponent vectors in lexicographic order, optionally excluding the
// trivial subgroup. (The full group corresponds to the all-zero vector and is
// always included.)
inline std::vector<SubgroupExponents> enumerate_subgroups(const Group& g, bool include_trivial) {
  std::vector<SubgroupExponents> out;
  SubgroupExponents cur{std::vector<std::uint32_t>(g.arity(), 0)};
  while (true) {
    if (include_trivial || !is_trivial_subgroup(g, cur)) out.push_back(cur);
    std::size_t i = g.arity();
    while (i-- > 0) {
      if (cur.e[i] < g.rings[i].exponent) {
        ++cur.e[i];
        std::fill(cur.e.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur.e.end(), 0);
        break;
      }
      if (i == 0) return out;
    }
  }
}

// Members of H(e) in lexicographic order: per ring the multiples of p^{e_i}.
inline std::vector<GroupElement> subgroup_members(const Group& g, const SubgroupExponents& s,
                                                  std::uint64_t max_elements = default_enum_cap()) {
  check_exponents(g, s);
  const std::uint64_t n = subgroup_order(g, s);
  if (n > max_elements) throw std::length_error("subgroup: size exceeds enumeration cap");
  std::vector<std::uint64_t> step(g.arity()), count(g.arity());
  for (std::size_t i = 0; i < g.arity(); ++i) {
    step[i] = detail::checked_pow(g.rings[i].prime, s.e[i]);
    count[i] = g.rings[i].modulus / step[i];
  }
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(n));
  GroupElement cur = zero(g);
  std::vector<std::uint64_t> digit(g.arity(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = g.arity();
    bool done = true;
    while (i-- > 0) {
      if (digit[i] + 1 < count[i]) {
        ++digit[i];
        cur.coords[i] += step[i];
        for (std::size_t j = i + 1; j < g.arity(); ++j) {
          digit[j] = 0;
          cur.coords[j] = 0;
        }
        done = false;
        break;
      }
      if (i == 0) break;
    }
    if (done) return out;
  }
}

// Canonical representative of the coset of H(e) through a: the componentwise
// residue a_i mod p_i^{e_i}. It is also the lexicographically smallest member.
inline GroupElement coset_representative(const Group& g, const SubgroupExponents& s,
                                         const GroupElement& a) {
  check_element(g, a);
  check_exponents(g, s);
  GroupElement rep = a;
  for (std::size_t i = 0; i < g.arity(); ++i)
    rep.coords[i] = a.coords[i] % detail::checked_pow(g.rings[i].prime, s.e[i]);
  return rep;
}

struct Coset {
  SubgroupExponents subgroup;
  GroupElement representative;          // lexicographically smallest member
  std::vector<GroupElement> members;    // sorted lexicographically
};

// All cosets of H(e), ordered by representative. Together they partition the
// group: (#cosets) * |H| = |G|.
inline std::vector<Coset> cosets(const Group& g, const SubgroupExponents& s,
                                 std::uint64_t max_elements = default_enum_cap()) {
  check_exponents(g, s);
  if (g.order > max_elements) throw std::length_error("cosets: group exceeds enumeration cap");
  const std::vector<GroupElement> h = subgroup_members(g, s, max_elements);

  // Representatives are exactly the elements with coords[i] < p_i^{e_i},
  // enumerated in lexicographic order by an odometer over those ranges.
  std::vector<std::uint64_t> repmod(g.arity());
  for (std::size_t i = 0; i < g.arity(); ++i)
    repmod[i] = detail::checked_pow(g.rings[i].prime, s.e[i]);

  std::vector<Coset> out;
  GroupElement rep = zero(g);
  while (true) {
    Coset c{s, rep, {}};
    c.members.reserve(h.size());
    // rep + h stays sorted: per coordinate rep_i + h_i < modulus, no wraparound.
    for (const GroupElement& m : h) c.members.push_back(add(g, rep, m));
    out.push_back(std::move(c));
    std::size_t i = g.arity();
    bool done = true;
    while (i-- > 0) {
      if (rep.coords[i] + 1 < repmod[i]) {
        ++rep.coords[i];
        for (std::size_t j = i + 1; j < g.arity(); ++j) rep.coords[j] = 0;
        done = false;
        break;
      }
      if (i == 0) break;
    }
    if (done) return out;
  }
}

// Elements killed by p_i^{r_i}: all g with p_i^{r_i} * g = 0. Componentwise
// this is the full ring where the primes match and r_j <= r_i, the scaled ring
// p_j^{r_j - r_i} Z_{p_j^{r_j}} where they match with r_j > r_i, and {0} for
// rings of a different prime. These are the valid images of the unit of ring i
// under a homomorphism into the group.
inline std::vector<GroupElement> annihilator_subgroup(const Group& g, std::size_t ring_index,
                                                      std::uint64_t max_elements = default_enum_cap()) {
  if (ring_index >= g.arity()) throw std::out_of_range("annihilator: ring index out of range");
  const Ring& ri = g.rings[ring_index];
  SubgroupExponents s{std::vector<std::uint32_t>(g.arity(), 0)};
  for (std::size_t j = 0; j < g.arity(); ++j) {
    const Ring& rj = g.rings[j];
    if (rj.prime != ri.prime)
      s.e[j] = rj.exponent;  // only 0 survives
    else
      s.e[j] = rj.exponent > ri.exponent ? rj.exponent - ri.exponent : 0;
  }
  return subgroup_members(g, s, max_elements);
}

// Largest exponent v <= cap with p^v dividing x; the valuation of 0 is cap.
inline std::uint32_t valuation(std::uint64_t x, std::uint64_t p, std::uint32_t cap) {
  std::uint32_t v = 0;
  while (v < cap && x % p == 0) {
    if (x == 0) return cap;
    x /= p;
    ++v;
  }
  return v;
}

inline std::string format_element(const GroupElement& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a.coords[i]);
  }
  return s + ")";
}

inline std::string format_exponents(const SubgroupExponents& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.e.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.e[i]);
  }
  return out + ")";
}

// Compact ring-list label, e.g. "2^2x3" for Z_4 (+) Z_3.
inline std::string format_group(const Group& g) {
  std::string out;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    if (i) out += "x";
    out += std::to_string(g.rings[i].prime);
    if (g.rings[i].exponent > 1) out += "^" + std::to_string(g.rings[i].exponent);
  }
  return out;
}

}  // namespace groupcap
