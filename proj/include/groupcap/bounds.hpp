#pragma once

// Capacity bounds for shifted group codes over a finite Abelian group.
//
// Every scaled subgroup H splits the channel input into coset subchannels.
// The achievable-rate bound weighs the mean uniform-input mutual information
// over those cosets against the fraction of rate that survives quotienting by
// H; the converse bound does the same with the best coset, restricted to
// subgroups that dominate every smaller scaled subgroup. Both reduce to
// max-min ratio programs over per-ring rate weights. The trivial subgroup is
// excluded throughout: its numerator and denominator both vanish and the
// corresponding error event is the transmitted message itself.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupcap/channel.hpp"
#include "groupcap/group.hpp"
#include "groupcap/maxmin.hpp"

namespace groupcap {

// Per-subgroup summary feeding the bound programs.
struct SubgroupDiagnostics {
  SubgroupExponents exponents;
  std::vector<CosetCapacity> coset_values;  // one per coset, in rep order
  double mean_value = 0.0;          // equal-weight average over cosets
  double best_value = 0.0;          // best single coset
  std::vector<double> rate_coeffs;  // per-ring surviving rate fractions
  bool maximal = false;
};

// One optimized bound: its value, the optimizing per-ring weights, and the
// labels of the subgroups whose ratio is tight at the optimum.
struct BoundValue {
  double value = 0.0;
  std::vector<double> weights;
  std::vector<std::string> binding;
};

// Bracket on the group-code capacity. `upper` is the lesser of the subgroup
// converse and the unconstrained reference capacity: both are valid upper
// bounds, and the subgroup program alone can exceed the reference whenever
// the full group fails the domination test (a best coset then carries more
// than full uniform input, and dividing it by a rate fraction below one
// inflates the ratio). The weights and binding labels always describe the
// subgroup program; its raw value is capacity_upper_bound.
struct BoundsReport {
  double lower = 0.0;
  double upper = 0.0;
  double shannon = 0.0;  // unconstrained-input reference capacity
  std::vector<double> lower_weights;
  std::vector<double> upper_weights;
  std::vector<std::string> binding_lower;
  std::vector<std::string> binding_upper;
  std::vector<SubgroupDiagnostics> diagnostics;
  bool coset_symmetric = false;
};

// Coset subchannel summary for one non-trivial scaled subgroup.
inline SubgroupDiagnostics subgroup_diagnostics(const Channel& ch,
                                                const SubgroupExponents& theta) {
  check_exponents(ch.group, theta);
  if (is_trivial_subgroup(ch.group, theta))
    throw std::invalid_argument(
        "subgroup_diagnostics: trivial subgroup has no subchannel");
  SubgroupDiagnostics d;
  d.exponents = theta;
  for (const Coset& c : cosets(ch.group, theta)) {
    double v = coset_capacity(ch, c);
    d.coset_values.push_back({c, v});
    d.mean_value += v;
    d.best_value = std::max(d.best_value, v);
  }
  d.mean_value /= static_cast<double>(d.coset_values.size());
  d.rate_coeffs = rate_coefficients(ch.group, theta);
  return d;
}

namespace detail {

// Maximality: H dominates when its best coset is at least the best coset of
// every non-trivial scaled subgroup inside it, up to tol.
inline void mark_maximal(std::vector<SubgroupDiagnostics>& diags, double tol) {
  for (auto& h : diags) {
    h.maximal = true;
    for (const auto& s : diags) {
      if (!subgroup_contains(h.exponents, s.exponents)) continue;
      if (h.best_value < s.best_value - tol) {
        h.maximal = false;
        break;
      }
    }
  }
}

inline std::vector<RatioConstraint> bound_constraints(
    const std::vector<SubgroupDiagnostics>& diags, bool use_best,
    bool only_maximal) {
  std::vector<RatioConstraint> cs;
  for (const auto& d : diags) {
    if (only_maximal && !d.maximal) continue;
    RatioConstraint c;
    c.label = format_exponents(d.exponents);
    c.numerator = use_best ? d.best_value : d.mean_value;
    c.coeffs = d.rate_coeffs;
    cs.push_back(std::move(c));
  }
  return cs;
}

inline BoundValue solve_bound(const std::vector<RatioConstraint>& cs,
                              std::size_t rings) {
  MaxMinSolution sol = maximize_min_ratio(cs, rings);
  return {sol.value, sol.weights, sol.active};
}

}  // namespace detail

// Diagnostics for every non-trivial scaled subgroup, in lexicographic
// exponent order, with maximality flags resolved.
inline std::vector<SubgroupDiagnostics> all_subgroup_diagnostics(
    const Channel& ch, double maximal_tol = 1e-9) {
  std::vector<SubgroupDiagnostics> diags;
  for (const auto& e : enumerate_subgroups(ch.group, false))
    diags.push_back(subgroup_diagnostics(ch, e));
  detail::mark_maximal(diags, maximal_tol);
  return diags;
}

inline std::vector<SubgroupExponents> maximal_subgroups(const Channel& ch,
                                                        double tol = 1e-9) {
  std::vector<SubgroupExponents> out;
  for (const auto& d : all_subgroup_diagnostics(ch, tol))
    if (d.maximal) out.push_back(d.exponents);
  return out;
}

// Achievable rate of the shifted-homomorphism ensemble: the min over
// non-trivial scaled subgroups of (mean coset value) / (rate fraction),
// maximized over per-ring weights. The full group contributes rate fraction
// one, so the value never exceeds the uniform-input mutual information.
inline BoundValue capacity_lower_bound(const Channel& ch) {
  auto diags = all_subgroup_diagnostics(ch);
  return detail::solve_bound(
      detail::bound_constraints(diags, /*use_best=*/false,
                                /*only_maximal=*/false),
      ch.group.arity());
}

// Converse: same program over maximal subgroups only, each scored by its best
// coset. Rings always retain their prime-order atom subgroup, which is
// maximal vacuously, so every weight slot stays covered.
inline BoundValue capacity_upper_bound(const Channel& ch,
                                       double maximal_tol = 1e-9) {
  auto diags = all_subgroup_diagnostics(ch, maximal_tol);
  return detail::solve_bound(
      detail::bound_constraints(diags, /*use_best=*/true,
                                /*only_maximal=*/true),
      ch.group.arity());
}

// Group-code capacity for coset-symmetric channels, where both bounds
// collapse to the same program scored by each subgroup's own coset.
inline double symmetric_capacity(const Channel& ch, double tol = 1e-9) {
  if (!is_coset_symmetric(ch, tol))
    throw std::invalid_argument(
        "symmetric_capacity: channel is not coset-symmetric");
  std::vector<RatioConstraint> cs;
  for (const auto& e : enumerate_subgroups(ch.group, false)) {
    Coset c;
    c.subgroup = e;
    c.representative = zero(ch.group);
    c.members = subgroup_members(ch.group, e);
    cs.push_back(
        {format_exponents(e), coset_capacity(ch, c), rate_coefficients(ch.group, e)});
  }
  return maximize_min_ratio(cs, ch.group.arity()).value;
}

inline BoundsReport full_report(const Channel& ch, double shannon_tol = 1e-9) {
  BoundsReport r;
  r.diagnostics = all_subgroup_diagnostics(ch);
  std::size_t rings = ch.group.arity();
  BoundValue lo = detail::solve_bound(
      detail::bound_constraints(r.diagnostics, false, false), rings);
  BoundValue up = detail::solve_bound(
      detail::bound_constraints(r.diagnostics, true, true), rings);
  r.lower = lo.value;
  r.lower_weights = std::move(lo.weights);
  r.binding_lower = std::move(lo.binding);
  r.upper_weights = std::move(up.weights);
  r.binding_upper = std::move(up.binding);
  r.shannon = shannon_capacity(ch, shannon_tol);
  r.upper = std::min(up.value, r.shannon);
  r.coset_symmetric = is_coset_symmetric(ch);
  return r;
}

}  // namespace groupcap
