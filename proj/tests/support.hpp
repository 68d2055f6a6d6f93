#pragma once

// Shared helpers for the test suites: group pools, random channel generators,
// and small numeric utilities. All randomness flows through fixed seeds so
// every suite is reproducible.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include <groupcap/group.hpp>
#include <groupcap/rng.hpp>

namespace gctest {

using groupcap::Group;
using groupcap::GroupElement;

inline Group Z(std::uint64_t p, std::uint32_t r = 1) { return groupcap::make_group({{p, r}}); }

inline Group make(std::vector<std::pair<std::uint64_t, std::uint32_t>> spec) {
  return groupcap::make_group(spec);
}

// A structurally varied pool: single rings, repeated primes, mixed primes,
// unequal exponents within one prime.
inline std::vector<Group> group_pool() {
  return {
      Z(2),          Z(3),          Z(2, 2),       Z(2, 3),      Z(3, 2),
      make({{2, 1}, {2, 1}}),        make({{2, 1}, {3, 1}}),
      make({{2, 1}, {2, 2}}),        make({{2, 2}, {2, 2}}),
      make({{2, 1}, {2, 1}, {3, 1}}), make({{2, 3}, {3, 2}}),
      make({{2, 1}, {3, 1}, {5, 1}}),
  };
}

inline std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t n) {
  // All multisets of positive integers summing to n, parts non-increasing.
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t left, std::uint32_t maxPart) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t part = std::min(left, maxPart); part >= 1; --part) {
      cur.push_back(part);
      self(self, left - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// Every Abelian group of order 2..max_order, one spec per isomorphism class.
inline std::vector<Group> all_abelian_groups_up_to(std::uint64_t max_order) {
  std::vector<Group> out;
  for (std::uint64_t n = 2; n <= max_order; ++n) {
    std::map<std::uint64_t, std::uint32_t> fact;
    std::uint64_t m = n;
    for (std::uint64_t d = 2; d * d <= m; ++d)
      while (m % d == 0) {
        ++fact[d];
        m /= d;
      }
    if (m > 1) ++fact[m];

    std::vector<std::vector<std::vector<std::uint32_t>>> perPrime;
    std::vector<std::uint64_t> primes;
    for (const auto& [p, e] : fact) {
      primes.push_back(p);
      perPrime.push_back(partitions(e));
    }
    std::vector<std::size_t> pick(perPrime.size(), 0);
    while (true) {
      std::vector<std::pair<std::uint64_t, std::uint32_t>> spec;
      for (std::size_t i = 0; i < perPrime.size(); ++i)
        for (std::uint32_t part : perPrime[i][pick[i]]) spec.push_back({primes[i], part});
      out.push_back(groupcap::make_group(spec));
      std::size_t i = perPrime.size();
      bool done = true;
      while (i-- > 0) {
        if (++pick[i] < perPrime[i].size()) {
          std::fill(pick.begin() + static_cast<std::ptrdiff_t>(i) + 1, pick.end(), 0);
          done = false;
          break;
        }
        if (i == 0) break;
      }
      if (done) break;
    }
  }
  return out;
}

inline GroupElement random_element(const Group& g, std::mt19937_64& rng) {
  GroupElement a = groupcap::zero(g);
  for (std::size_t i = 0; i < g.arity(); ++i)
    a.coords[i] = groupcap::uniform_index(rng, g.rings[i].modulus);
  return a;
}

inline bool approx(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace gctest

#ifdef GCTEST_WANT_CHANNEL
#include <groupcap/channel.hpp>

namespace gctest {

// Random row-stochastic channel; rows are normalised unit exponentials, so
// every entry is strictly positive with probability one.
inline groupcap::Channel random_channel(const Group& g, std::size_t ny, std::mt19937_64& rng) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(g.order),
                                        std::vector<double>(ny));
  for (auto& row : rows) {
    double sum = 0.0;
    for (double& v : row) {
      v = -std::log(1.0 - groupcap::uniform_real(rng));
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
  return groupcap::make_channel(g, ny, rows);
}

inline groupcap::InputDistribution random_distribution(const Group& g, std::mt19937_64& rng) {
  std::vector<double> p(static_cast<std::size_t>(g.order));
  double sum = 0.0;
  for (double& v : p) {
    v = -std::log(1.0 - groupcap::uniform_real(rng));
    sum += v;
  }
  for (double& v : p) v /= sum;
  return groupcap::make_input_distribution(g, std::move(p));
}

inline groupcap::Channel uniform_input_bsc(double flip) {
  return groupcap::make_channel(Z(2), 2, {{1.0 - flip, flip}, {flip, 1.0 - flip}});
}

inline groupcap::Channel identity_channel(const Group& g) {
  std::vector<double> noise(static_cast<std::size_t>(g.order), 0.0);
  noise[0] = 1.0;
  return groupcap::additive_noise_channel(g, noise);
}

}  // namespace gctest
#endif  // GCTEST_WANT_CHANNEL
