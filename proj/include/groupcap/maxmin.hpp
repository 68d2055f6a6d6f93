#pragma once

// Max-min ratio optimization over the probability simplex. Given constraints
// with nonnegative numerators A_h and nonnegative coefficient vectors c_h,
// computes
//
//   max over weights w in the simplex of  min over h of  A_h / (c_h . w)
//
// where a row with c_h . w == 0 is vacuous (the ratio is treated as infinite,
// matching the epigraph reading t * (c_h . w) <= A_h). The optimum is found by
// bisection on t, deciding each candidate with a margin linear program, so the
// returned weights come with a feasibility certificate rather than relying on
// a smooth-solver convergence heuristic.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupcap/simplex.hpp"

namespace groupcap {

struct RatioConstraint {
  std::string label;           // diagnostic tag reported back in active sets
  double numerator = 0.0;      // A_h, must be finite and >= 0
  std::vector<double> coeffs;  // c_h, finite and >= 0, one entry per weight
};

struct MaxMinSolution {
  double value = 0.0;               // min ratio achieved at `weights`
  std::vector<double> weights;      // point on the probability simplex
  std::vector<std::string> active;  // labels whose ratio is tight at `weights`
  double bracket_width = 0.0;       // final bisection enclosure width
};

namespace detail {

inline void check_ratio_constraints(const std::vector<RatioConstraint>& cs,
                                    std::size_t weight_count) {
  if (weight_count == 0)
    throw std::invalid_argument("maxmin: weight_count must be positive");
  if (cs.empty()) throw std::invalid_argument("maxmin: no constraints");
  for (const auto& c : cs) {
    if (!(std::isfinite(c.numerator) && c.numerator >= 0.0))
      throw std::invalid_argument("maxmin: numerator must be finite and >= 0");
    if (c.coeffs.size() != weight_count)
      throw std::invalid_argument("maxmin: coefficient width mismatch");
    for (double v : c.coeffs)
      if (!(std::isfinite(v) && v >= 0.0))
        throw std::invalid_argument(
            "maxmin: coefficients must be finite and >= 0");
  }
}

// Every weight slot must carry a positive coefficient in some constraint;
// otherwise all weight can hide on an uncovered slot and the ratio objective
// has no finite maximum.
inline void check_coverage(const std::vector<RatioConstraint>& cs,
                           std::size_t weight_count) {
  for (std::size_t i = 0; i < weight_count; ++i) {
    bool covered = false;
    for (const auto& c : cs) covered = covered || c.coeffs[i] > 0.0;
    if (!covered)
      throw std::runtime_error("maxmin: weight slot " + std::to_string(i) +
                               " has no positive coefficient, objective "
                               "is unbounded");
  }
}

// Margin program for fixed t: maximize s subject to
//   sum_i w_i = 1,  t * (c_h . w) + s <= A_h,  w >= 0,  s free.
// The original system is feasible at t exactly when the optimal s is >= 0.
struct MarginPoint {
  double margin = 0.0;
  std::vector<double> weights;
};

inline MarginPoint solve_margin(const std::vector<RatioConstraint>& cs,
                                std::size_t weight_count, double t) {
  const std::size_t h = cs.size();
  // Columns: w_0..w_{I-1}, s+ , s-, one slack per ratio row.
  const std::size_t cols = weight_count + 2 + h;
  std::vector<std::vector<double>> a(1 + h, std::vector<double>(cols, 0.0));
  std::vector<double> b(1 + h, 0.0);
  std::vector<double> obj(cols, 0.0);
  for (std::size_t i = 0; i < weight_count; ++i) a[0][i] = 1.0;
  b[0] = 1.0;
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t i = 0; i < weight_count; ++i)
      a[1 + r][i] = t * cs[r].coeffs[i];
    a[1 + r][weight_count] = 1.0;
    a[1 + r][weight_count + 1] = -1.0;
    a[1 + r][weight_count + 2 + r] = 1.0;
    b[1 + r] = cs[r].numerator;
  }
  obj[weight_count] = 1.0;
  obj[weight_count + 1] = -1.0;

  LpResult lp = solve_lp(std::move(a), std::move(b), obj);
  if (lp.status != LpStatus::Optimal)
    throw std::runtime_error("maxmin: margin subproblem did not solve");
  MarginPoint point;
  point.margin = lp.objective;
  point.weights.assign(lp.x.begin(), lp.x.begin() + weight_count);
  double total = 0.0;
  for (double& w : point.weights) total += (w = std::max(w, 0.0));
  for (double& w : point.weights) w /= total;  // total == 1 up to roundoff
  return point;
}

inline double min_ratio_unchecked(const std::vector<RatioConstraint>& cs,
                                  const std::vector<double>& weights) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cs) {
    double d = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i)
      d += c.coeffs[i] * weights[i];
    if (d > 0.0) best = std::min(best, c.numerator / d);
  }
  return best;
}

}  // namespace detail

// Smallest constraint ratio at a given weight vector; rows whose denominator
// vanishes are vacuous. Returns +infinity when every row is vacuous.
inline double min_ratio_at(const std::vector<RatioConstraint>& constraints,
                           const std::vector<double>& weights) {
  detail::check_ratio_constraints(constraints, weights.size());
  return detail::min_ratio_unchecked(constraints, weights);
}

// Weights certifying that every ratio is at least t, when any exist.
inline std::optional<std::vector<double>> feasible_weights(
    const std::vector<RatioConstraint>& constraints, std::size_t weight_count,
    double t) {
  detail::check_ratio_constraints(constraints, weight_count);
  detail::MarginPoint point = detail::solve_margin(constraints, weight_count, t);
  if (point.margin < 0.0) return std::nullopt;
  return point.weights;
}

// Maximizes the minimum constraint ratio over the probability simplex.
// Throws when some weight slot is touched by no constraint (the objective is
// then unbounded). The reported value is the exact min ratio at the returned
// weights, so it is always achievable; the bisection enclosure is tighter
// than any tolerance relevant downstream.
inline MaxMinSolution maximize_min_ratio(
    const std::vector<RatioConstraint>& constraints, std::size_t weight_count) {
  detail::check_ratio_constraints(constraints, weight_count);

  // Rows with an all-zero coefficient vector are vacuous everywhere.
  std::vector<RatioConstraint> live;
  for (const auto& c : constraints) {
    bool any = false;
    for (double v : c.coeffs) any = any || v > 0.0;
    if (any) live.push_back(c);
  }
  if (live.empty())
    throw std::runtime_error(
        "maxmin: every constraint is vacuous, objective is unbounded");
  detail::check_coverage(live, weight_count);

  MaxMinSolution out;
  if (weight_count == 1) {
    // Single slot: the simplex is one point and the answer is exact.
    out.weights = {1.0};
    out.value = detail::min_ratio_unchecked(live, out.weights);
    for (const auto& c : live)
      if (c.numerator / c.coeffs[0] <= out.value * (1.0 + 1e-9) + 1e-12)
        out.active.push_back(c.label);
    return out;
  }

  // Some weight slot holds at least 1/I, so the covering constraint there
  // caps the min ratio; pad the cap so the upper end starts infeasible.
  double upper = 0.0;
  for (const auto& c : live)
    for (double v : c.coeffs)
      if (v > 0.0)
        upper = std::max(
            upper, c.numerator * static_cast<double>(weight_count) / v);
  double lo = 0.0;
  double hi = upper + 1.0;
  for (int iter = 0; iter < 60; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (detail::solve_margin(live, weight_count, mid).margin >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  out.weights = detail::solve_margin(live, weight_count, lo).weights;
  out.value = detail::min_ratio_unchecked(live, out.weights);
  out.bracket_width = hi - lo;

  double tol = 1e-7 * std::max(1.0, out.value);
  for (const auto& c : live) {
    double d = 0.0;
    for (std::size_t i = 0; i < weight_count; ++i)
      d += c.coeffs[i] * out.weights[i];
    if (d > 0.0 && c.numerator / d <= out.value + tol)
      out.active.push_back(c.label);
  }
  return out;
}

// Exhaustive lattice sweep used as an independent cross-check: evaluates the
// min ratio at every point of the resolution-R simplex lattice and returns
// the best value seen. Cost grows as R^(I-1), so I is capped at 4.
inline double grid_cross_check(const std::vector<RatioConstraint>& constraints,
                               std::size_t weight_count, int resolution) {
  detail::check_ratio_constraints(constraints, weight_count);
  if (weight_count > 4)
    throw std::invalid_argument("grid_cross_check: at most 4 weights");
  if (resolution < 2)
    throw std::invalid_argument("grid_cross_check: resolution must be >= 2");

  std::vector<int> parts(weight_count, 0);
  parts[0] = resolution;
  std::vector<double> w(weight_count, 0.0);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t i = 0; i < weight_count; ++i)
      w[i] = static_cast<double>(parts[i]) / resolution;
    double v = detail::min_ratio_unchecked(constraints, w);
    if (v > best && v < std::numeric_limits<double>::infinity()) best = v;
    if (weight_count == 1) break;

    // Next composition of `resolution` into weight_count ordered parts.
    if (parts[0] > 0) {
      --parts[0];
      ++parts[1];
    } else {
      std::size_t j = 1;
      while (parts[j] == 0) ++j;
      if (j + 1 >= weight_count) break;  // all mass on the last slot
      parts[0] = parts[j] - 1;
      parts[j] = 0;
      ++parts[j + 1];
    }
  }
  return best;
}

}  // namespace groupcap
