#pragma once

// Discrete memoryless channels over a finite Abelian group input alphabet.
//
// The input alphabet is the group in lexicographic element order; outputs are
// abstract symbols 0..|Y|-1. Everything is measured in bits with the usual
// convention 0*log(0) = 0. The quantities computed here:
//   - mutual information I(X;Y) for an arbitrary input distribution,
//   - coset capacity: I(X;Y) with X uniform on one coset of a scaled subgroup,
//   - unconstrained capacity via alternating maximisation, returned with a
//     certified upper value (see shannon_capacity).

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "group.hpp"

namespace groupcap {

struct Channel {
  Group group;
  std::size_t output_size = 0;
  std::vector<double> w;  // row-major |G| x |Y|, rows indexed by element rank

  double at(std::uint64_t x, std::size_t y) const {
    return w[static_cast<std::size_t>(x) * output_size + y];
  }
};

inline Channel make_channel(const Group& g, std::size_t output_size,
                            const std::vector<std::vector<double>>& rows) {
  if (output_size == 0) throw std::invalid_argument("channel: need at least one output symbol");
  if (rows.size() != g.order)
    throw std::invalid_argument("channel: expected " + std::to_string(g.order) + " rows, got " +
                                std::to_string(rows.size()));
  Channel ch{g, output_size, {}};
  ch.w.reserve(static_cast<std::size_t>(g.order) * output_size);
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (rows[x].size() != output_size)
      throw std::invalid_argument("channel: row " + std::to_string(x) + " has wrong width");
    double sum = 0.0;
    for (double v : rows[x]) {
      if (v < 0.0 || !std::isfinite(v))
        throw std::invalid_argument("channel: row " + std::to_string(x) +
                                    " has a negative or non-finite entry");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("channel: row " + std::to_string(x) + " sums to " +
                                  std::to_string(sum) + ", expected 1");
    for (double v : rows[x]) ch.w.push_back(v);
  }
  return ch;
}

// Additive-noise channel on the group itself: W(y|x) = noise(y - x), with the
// output alphabet identified with the group in element order.
inline Channel additive_noise_channel(const Group& g, const std::vector<double>& noise) {
  if (noise.size() != g.order)
    throw std::invalid_argument("channel: noise vector must have one entry per element");
  auto all = enumerate_elements(g);
  std::vector<std::vector<double>> rows(all.size(), std::vector<double>(all.size(), 0.0));
  for (std::size_t x = 0; x < all.size(); ++x)
    for (std::size_t y = 0; y < all.size(); ++y)
      rows[x][y] = noise[static_cast<std::size_t>(element_index(g, sub(g, all[y], all[x])))];
  return make_channel(g, all.size(), rows);
}

struct InputDistribution {
  std::vector<double> p;  // indexed by element rank
};

inline InputDistribution make_input_distribution(const Group& g, std::vector<double> p) {
  if (p.size() != g.order)
    throw std::invalid_argument("input distribution: needs one probability per element");
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("input distribution: negative or non-finite entry");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("input distribution: mass sums to " + std::to_string(sum));
  return InputDistribution{std::move(p)};
}

inline double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

// I(X;Y) in bits. Computed as sum_x p(x) D(W(.|x) || q) with q the output
// distribution; terms with W = 0 or p(x) = 0 contribute nothing.
inline double mutual_information(const Channel& ch, const InputDistribution& dist) {
  if (dist.p.size() != ch.group.order)
    throw std::invalid_argument("mutual information: distribution/channel size mismatch");
  const std::size_t ny = ch.output_size;
  std::vector<double> q(ny, 0.0);
  for (std::uint64_t x = 0; x < ch.group.order; ++x) {
    const double px = dist.p[static_cast<std::size_t>(x)];
    if (px == 0.0) continue;
    for (std::size_t y = 0; y < ny; ++y) q[y] += px * ch.at(x, y);
  }
  double info = 0.0;
  for (std::uint64_t x = 0; x < ch.group.order; ++x) {
    const double px = dist.p[static_cast<std::size_t>(x)];
    if (px == 0.0) continue;
    for (std::size_t y = 0; y < ny; ++y) {
      const double wxy = ch.at(x, y);
      if (wxy > 0.0) info += px * wxy * std::log2(wxy / q[y]);
    }
  }
  if (info < 0.0) {
    if (info < -1e-9) throw std::runtime_error("mutual information: negative beyond rounding");
    info = 0.0;
  }
  return info;
}

struct CosetCapacity {
  Coset coset;
  double value = 0.0;  // bits
};

// Capacity of the subchannel obtained by restricting the input to one coset,
// with the uniform distribution on that coset.
inline double coset_capacity(const Channel& ch, const Coset& c) {
  std::vector<double> p(static_cast<std::size_t>(ch.group.order), 0.0);
  const double mass = 1.0 / static_cast<double>(c.members.size());
  for (const GroupElement& m : c.members)
    p[static_cast<std::size_t>(element_index(ch.group, m))] = mass;
  return mutual_information(ch, InputDistribution{std::move(p)});
}

// Best coset of the given subgroup; ties resolved toward the smallest
// representative (cosets are scanned in representative order, strict >).
inline CosetCapacity optimal_coset(const Channel& ch, const SubgroupExponents& s) {
  auto cs = cosets(ch.group, s);
  CosetCapacity best{cs.front(), coset_capacity(ch, cs.front())};
  for (std::size_t i = 1; i < cs.size(); ++i) {
    double v = coset_capacity(ch, cs[i]);
    if (v > best.value) best = CosetCapacity{cs[i], v};
  }
  return best;
}

// A channel is coset symmetric when, for every scaled subgroup, all of its
// cosets have the same coset capacity (within tol). Additive-noise channels
// are the canonical examples.
inline bool is_coset_symmetric(const Channel& ch, double tol = 1e-9) {
  for (const auto& s : enumerate_subgroups(ch.group, true)) {
    auto cs = cosets(ch.group, s);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Coset& c : cs) {
      double v = coset_capacity(ch, c);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > tol) return false;
  }
  return true;
}

// Unconstrained capacity max_p I(X;Y) by alternating maximisation.
//
// Each pass computes D(x) = D(W(.|x) || q) for the current input p. Then
//   sum_x p(x) D(x)  <=  C  <=  max_x D(x)
// holds for every p, giving a certified enclosure; iteration stops once the
// gap is at most tol and the upper end is returned, so the result is always
// >= the true capacity (and within tol of it).
// The iteration cap is generous: convergence of the alternating update is
// sublinear when the optimizer touches the boundary of the simplex, and
// random channels routinely need upwards of 10^5 rounds at tight tolerances.
inline double shannon_capacity(const Channel& ch, double tol = 1e-9, int max_iter = 1000000) {
  const std::size_t nx = static_cast<std::size_t>(ch.group.order);
  const std::size_t ny = ch.output_size;
  std::vector<double> p(nx, 1.0 / static_cast<double>(nx));
  std::vector<double> q(ny), d(nx);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) q[y] += p[x] * ch.at(x, y);
    double lower = 0.0, upper = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < nx; ++x) {
      double dx = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        const double wxy = ch.at(x, y);
        if (wxy > 0.0) dx += wxy * std::log2(wxy / q[y]);
      }
      d[x] = dx;
      lower += p[x] * dx;
      upper = std::max(upper, dx);
    }
    if (upper - lower <= tol) return std::max(upper, 0.0);
    double z = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      p[x] *= std::exp2(d[x] - upper);  // shift by max to avoid overflow
      z += p[x];
    }
    for (std::size_t x = 0; x < nx; ++x) p[x] = std::max(p[x] / z, 1e-300);
  }
  throw std::runtime_error("shannon_capacity: no convergence within iteration cap");
}

}  // namespace groupcap
