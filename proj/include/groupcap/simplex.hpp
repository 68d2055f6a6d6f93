#pragma once

// Small dense linear-program solver: two-phase tableau simplex with Bland's
// entering rule. Built for the tiny, well-scaled programs assembled by the
// max-min ratio solver (tens of rows and columns), not as a general LP code.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace groupcap {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;  // primal solution, set only when status == Optimal
};

namespace detail {

inline constexpr double kLpCostTol = 1e-9;
inline constexpr double kLpPivotTol = 1e-11;
inline constexpr std::size_t kLpIterationCap = 20000;

struct LpTableau {
  std::size_t rows = 0;
  std::size_t structural = 0;  // columns before the artificial block
  std::size_t cols = 0;        // structural + one artificial per row
  std::vector<std::vector<double>> t;  // rows x (cols + 1), last entry is rhs
  std::vector<double> z;               // objective row, same width
  std::vector<std::size_t> basis;      // basic column of each row
  std::size_t pivots = 0;

  void pivot(std::size_t r, std::size_t j) {
    double p = t[r][j];
    for (auto& v : t[r]) v /= p;
    t[r][j] = 1.0;  // invariant: pivot entry exactly one
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || t[i][j] == 0.0) continue;
      double f = t[i][j];
      for (std::size_t k = 0; k <= cols; ++k) t[i][k] -= f * t[r][k];
      t[i][j] = 0.0;
    }
    if (z[j] != 0.0) {
      double f = z[j];
      for (std::size_t k = 0; k <= cols; ++k) z[k] -= f * t[r][k];
      z[j] = 0.0;
    }
    basis[r] = j;
    if (++pivots > kLpIterationCap)
      throw std::runtime_error("solve_lp: iteration cap exceeded");
  }

  // Subtract multiples of the constraint rows so every basic column has a
  // zero objective entry; afterwards z.back() is the current objective value.
  void price_out() {
    for (std::size_t r = 0; r < rows; ++r) {
      double f = z[basis[r]];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k <= cols; ++k) z[k] -= f * t[r][k];
      z[basis[r]] = 0.0;
    }
  }

  // Runs simplex iterations over columns [0, limit). Returns false when the
  // entering column is unbounded below in the ratio test.
  bool iterate(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (z[j] < -kLpCostTol) {
          enter = j;  // Bland: smallest eligible index
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = rows;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows; ++r) {
        if (t[r][enter] <= kLpPivotTol) continue;
        double ratio = t[r][cols] / t[r][enter];
        if (ratio < best ||
            (ratio == best && leave < rows && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace detail

// Maximizes c.x subject to a*x == b and x >= 0. Rows with negative b are
// sign-flipped internally; callers encode inequalities by adding slack
// columns themselves.
inline LpResult solve_lp(std::vector<std::vector<double>> a,
                         std::vector<double> b, const std::vector<double>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw std::invalid_argument("solve_lp: rhs size mismatch");
  for (const auto& row : a)
    if (row.size() != n)
      throw std::invalid_argument("solve_lp: row width mismatch");
  for (std::size_t r = 0; r < m; ++r) {
    if (b[r] < 0.0) {
      b[r] = -b[r];
      for (auto& v : a[r]) v = -v;
    }
  }

  detail::LpTableau tab;
  tab.rows = m;
  tab.structural = n;
  tab.cols = n + m;
  tab.t.assign(m, std::vector<double>(tab.cols + 1, 0.0));
  tab.basis.resize(m);
  double rhs_scale = 1.0;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) tab.t[r][j] = a[r][j];
    tab.t[r][n + r] = 1.0;
    tab.t[r][tab.cols] = b[r];
    tab.basis[r] = n + r;
    rhs_scale += b[r];
  }

  // Phase one: maximize minus the sum of artificials from the all-artificial
  // basis; the system is feasible exactly when that optimum reaches zero.
  tab.z.assign(tab.cols + 1, 0.0);
  for (std::size_t r = 0; r < m; ++r) tab.z[n + r] = 1.0;
  tab.price_out();
  tab.iterate(tab.cols);  // bounded above by zero, never unbounded
  LpResult result;
  if (tab.z[tab.cols] < -1e-7 * rhs_scale) {
    result.status = LpStatus::Infeasible;
    return result;
  }

  // Drive leftover artificials out of the basis where a structural pivot
  // exists; rows without one are redundant and stay inert at rhs zero.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(tab.t[r][j]) > detail::kLpPivotTol) {
        tab.pivot(r, j);
        break;
      }
    }
  }

  // Phase two over structural columns only, so no artificial re-enters.
  tab.z.assign(tab.cols + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) tab.z[j] = -c[j];
  tab.price_out();
  if (!tab.iterate(n)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.objective = tab.z[tab.cols];
  result.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (tab.basis[r] < n) result.x[tab.basis[r]] = tab.t[r][tab.cols];
  return result;
}

}  // namespace groupcap
