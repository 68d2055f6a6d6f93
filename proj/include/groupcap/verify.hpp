#pragma once

// Self-verification suites: run the exhaustive oracles against the closed
// forms on small instance grids and report pass/fail per instance with a
// counterexample dump on failure. A fault-injection switch deliberately
// corrupts the first instance of each suite so the reporting and exit-code
// path can be exercised end to end.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "channel.hpp"
#include "ensemble.hpp"
#include "group.hpp"
#include "oracles.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace groupcap {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;  // counterexample or summary
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed = true;
};

namespace detail {

inline void finish(SuiteResult& s) {
  s.passed = true;
  for (const CheckResult& c : s.checks) s.passed = s.passed && c.passed;
}

inline std::string config_label(const EnsembleConfig& cfg) {
  return format_group(cfg.group) + " k=" + std::to_string(cfg.k) +
         " n=" + std::to_string(cfg.n);
}

inline Channel random_verification_channel(const Group& g, std::size_t ny,
                                           std::mt19937_64& rng) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(g.order),
                                        std::vector<double>(ny));
  for (auto& row : rows) {
    double sum = 0.0;
    for (double& v : row) {
      v = -std::log(1.0 - uniform_real(rng));
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
  return make_channel(g, ny, rows);
}

}  // namespace detail

// Uniform-weight configurations; scale k must be a multiple of the arity.
inline EnsembleConfig oracle_config(const Group& g, std::uint64_t k, std::uint64_t n,
                                    GeneratorSampling mode =
                                        GeneratorSampling::PerRingCoordinate) {
  std::vector<Rational> w(g.arity(), make_rational(1, static_cast<std::int64_t>(g.arity())));
  return make_ensemble_config(g, w, k, n, {}, mode);
}

// The small-instance grid the collision and valuation suites sweep by
// default: every group in {Z_2, Z_4, Z_2+Z_2, Z_2+Z_3} with admissible
// k <= 2 and n <= 2.
inline std::vector<EnsembleConfig> default_oracle_grid() {
  std::vector<EnsembleConfig> grid;
  const Group z2 = make_group({{2, 1}});
  const Group z4 = make_group({{2, 2}});
  const Group z22 = make_group({{2, 1}, {2, 1}});
  const Group z6 = make_group({{2, 1}, {3, 1}});
  for (std::uint64_t n = 1; n <= 2; ++n) {
    for (std::uint64_t k = 1; k <= 2; ++k) {
      grid.push_back(oracle_config(z2, k, n));
      grid.push_back(oracle_config(z4, k, n));
    }
    grid.push_back(oracle_config(z22, 2, n));
    grid.push_back(oracle_config(z6, 2, n));
  }
  return grid;
}

// Compares the closed-form collision probability against the exhaustive
// joint table for every nonzero difference word and every (x, xt) pair.
// Also asserts the uniform-marginal property: each row of the table sums to
// the number of generator tuples.
inline SuiteResult collision_suite(const std::vector<EnsembleConfig>& configs,
                                   bool inject_fault = false,
                                   std::uint64_t cap = 10000000) {
  SuiteResult suite{"collision law", {}, true};
  bool pending_fault = inject_fault;
  for (const EnsembleConfig& cfg : configs) {
    const Group& g = cfg.group;
    const MessageWord base = message_embedding(cfg, 0);

    // The closed form depends only on xt - x, so evaluate it once per
    // difference word and sweep the table with integer arithmetic.
    const auto elements = enumerate_elements(g, g.order);
    std::vector<std::uint64_t> dtab(elements.size() * elements.size());
    for (std::size_t a = 0; a < elements.size(); ++a)
      for (std::size_t b = 0; b < elements.size(); ++b)
        dtab[a * elements.size() + b] = element_index(g, sub(g, elements[b], elements[a]));
    std::uint64_t words = 1;
    for (std::uint64_t N = 0; N < cfg.n; ++N) words *= g.order;
    std::vector<std::uint64_t> digits(words * cfg.n);
    for (std::uint64_t w = 0; w < words; ++w) {
      std::uint64_t tmp = w;
      for (std::uint64_t N = cfg.n; N-- > 0;) {
        digits[w * cfg.n + N] = tmp % g.order;
        tmp /= g.order;
      }
    }

    for (std::uint64_t md = 1; md < cfg.message_count; ++md) {
      const MessageWord diff = message_embedding(cfg, md);
      CheckResult check{detail::config_label(cfg) + " diff=" + std::to_string(md), true, ""};
      CollisionLaw law = collision_law_exhaustive(cfg, base, diff, cap);
      if (pending_fault) {
        ++law.pair_hits[0];  // corrupt one tally: the suite must notice
        pending_fault = false;
      }
      const Codeword x0 = codeword_at(g, cfg.n, 0);
      std::vector<Rational> formula(words);
      for (std::uint64_t d = 0; d < words; ++d)
        formula[d] = collision_probability(cfg, diff, x0, codeword_at(g, cfg.n, d));

      std::uint64_t cells_checked = 0;
      for (std::uint64_t xi = 0; xi < words && check.passed; ++xi) {
        std::uint64_t row = 0;
        for (std::uint64_t ti = 0; ti < words; ++ti)
          row += law.pair_hits[static_cast<std::size_t>(xi) * words + ti];
        if (row != law.generator_tuples) {
          check.passed = false;
          check.detail = "conditioning row rank " + std::to_string(xi) + " sums to " +
                         std::to_string(row) + ", expected " +
                         std::to_string(law.generator_tuples);
          break;
        }
        for (std::uint64_t ti = 0; ti < words; ++ti) {
          std::uint64_t d = 0;
          for (std::uint64_t N = 0; N < cfg.n; ++N)
            d = d * g.order +
                dtab[digits[xi * cfg.n + N] * elements.size() + digits[ti * cfg.n + N]];
          const std::uint64_t hits =
              law.pair_hits[static_cast<std::size_t>(xi) * words + ti];
          const __int128 lhs = static_cast<__int128>(hits) * formula[d].den;
          const __int128 rhs = static_cast<__int128>(formula[d].num) * row;
          ++cells_checked;
          if (lhs != rhs) {
            check.passed = false;
            check.detail = "x rank " + std::to_string(xi) + ", xt rank " +
                           std::to_string(ti) + ": formula " + format_rational(formula[d]) +
                           ", exhaustive " + std::to_string(hits) + "/" +
                           std::to_string(row);
            break;
          }
        }
      }
      if (check.passed)
        check.detail = std::to_string(cells_checked) + " cells match";
      suite.checks.push_back(std::move(check));
    }
  }
  detail::finish(suite);
  return suite;
}

// Compares the closed-form valuation class counts against exhaustive
// difference enumeration over the full profile grid, and checks that the
// classes partition the nonzero words.
inline SuiteResult valuation_suite(const std::vector<EnsembleConfig>& configs,
                                   bool inject_fault = false,
                                   std::uint64_t cap = default_enum_cap()) {
  SuiteResult suite{"valuation classes", {}, true};
  bool pending_fault = inject_fault;
  for (const EnsembleConfig& cfg : configs) {
    CheckResult check{detail::config_label(cfg), true, ""};
    auto exact = valuation_class_counts_exhaustive(cfg, 0, cap);
    if (pending_fault && !exact.empty()) {
      ++exact.begin()->second;
      pending_fault = false;
    }
    std::vector<std::uint32_t> theta(cfg.group.arity(), 0);
    std::uint64_t sum = 0;
    while (check.passed) {
      const std::uint64_t predicted = count_valuation_class(cfg, theta);
      const auto it = exact.find(theta);
      const std::uint64_t observed = it == exact.end() ? 0 : it->second;
      if (predicted != observed) {
        check.passed = false;
        check.detail = "profile " +
                       format_exponents(SubgroupExponents{theta}) + ": formula " +
                       std::to_string(predicted) + ", exhaustive " +
                       std::to_string(observed);
        break;
      }
      sum += predicted;
      std::size_t i = theta.size();
      while (i-- > 0) {
        if (++theta[i] <= cfg.group.rings[i].exponent) break;
        theta[i] = 0;
      }
      if (i == SIZE_MAX) break;
    }
    if (check.passed && sum != cfg.message_count - 1) {
      check.passed = false;
      check.detail = "classes sum to " + std::to_string(sum) + ", expected " +
                     std::to_string(cfg.message_count - 1);
    }
    if (check.passed)
      check.detail = "all profiles match, total " + std::to_string(sum);
    suite.checks.push_back(std::move(check));
  }
  detail::finish(suite);
  return suite;
}

// Samples whole codebooks and checks every single-letter marginal is
// uniform over a coset. Codebooks stay small: M <= 256, n <= 8.
inline SuiteResult uniformity_suite(std::uint64_t codebooks = 200, std::uint64_t seed = 9001,
                                    bool inject_fault = false) {
  SuiteResult suite{"marginal uniformity", {}, true};
  const std::vector<Group> pool = {
      make_group({{2, 1}}),         make_group({{2, 2}}),
      make_group({{5, 1}}),         make_group({{2, 1}, {2, 1}}),
      make_group({{2, 1}, {2, 2}}), make_group({{2, 1}, {3, 1}})};
  bool pending_fault = inject_fault;
  std::uint64_t produced = 0;
  for (std::uint64_t iter = 0; produced < codebooks; ++iter) {
    const Group& g = pool[iter % pool.size()];
    const std::uint64_t k = g.arity() * (iter % 3);
    const std::uint64_t n = 1 + iter % 8;
    const auto mode = iter % 2 == 0 ? GeneratorSampling::PerRingCoordinate
                                    : GeneratorSampling::Annihilator;
    const EnsembleConfig cfg = oracle_config(g, k, n, mode);
    if (cfg.message_count > 256) continue;
    if (pending_fault && cfg.message_count < 2) continue;
    auto rng = make_substream(seed, iter);
    const Encoder enc = sample_encoder(cfg, rng);
    std::vector<Codeword> book;
    for (std::uint64_t m = 0; m < cfg.message_count; ++m)
      book.push_back(encode(cfg, enc, message_embedding(cfg, m)));
    if (pending_fault) {
      // Move one symbol off its coset track; the multiset must go uneven.
      GroupElement bump = zero(g);
      bump.coords[0] = 1;
      book[0][0] = add(g, book[0][0], bump);
      pending_fault = false;
    }
    CheckResult check{detail::config_label(cfg) + " draw=" + std::to_string(iter), true, ""};
    const auto report = marginal_uniformity_check(g, book);
    for (std::size_t N = 0; N < report.size() && check.passed; ++N) {
      if (!report[N].ok) {
        check.passed = false;
        std::string supp;
        for (const auto& e : report[N].support) supp += format_element(e);
        check.detail = "position " + std::to_string(N) +
                       (report[N].uniform ? "" : ": multiplicities uneven") +
                       (report[N].coset ? "" : ": support not a coset") + ", support " +
                       supp;
      }
    }
    if (check.passed)
      check.detail = std::to_string(report.size()) + " positions coset-uniform";
    suite.checks.push_back(std::move(check));
    ++produced;
  }
  detail::finish(suite);
  return suite;
}

// Random-instance check that the exact coset-typical count never exceeds
// its finite-n certificate.
inline SuiteResult coset_typical_suite(std::uint64_t instances = 50, std::uint64_t seed = 9002,
                                       bool inject_fault = false,
                                       std::uint64_t cap = default_enum_cap()) {
  SuiteResult suite{"coset typical counting", {}, true};
  const std::vector<Group> pool = {make_group({{2, 1}}), make_group({{2, 2}}),
                                   make_group({{2, 1}, {3, 1}})};
  auto rng = make_substream(seed, 0);
  bool pending_fault = inject_fault;
  std::uint64_t produced = 0;
  for (std::uint64_t iter = 0; produced < instances; ++iter) {
    const Group& g = pool[iter % pool.size()];
    const std::size_t ny = 2 + iter % 3;
    const Channel ch = detail::random_verification_channel(g, ny, rng);
    const std::uint64_t n = 3 + uniform_index(rng, 6);  // up to 8

    Codeword x;
    std::vector<std::size_t> y;
    for (std::uint64_t N = 0; N < n; ++N) {
      x.push_back(element_at(g, uniform_index(rng, g.order)));
      std::vector<double> row(ny);
      for (std::size_t b = 0; b < ny; ++b)
        row[b] = ch.at(static_cast<std::size_t>(element_index(g, x.back())), b);
      y.push_back(sample_discrete(rng, row));
    }
    const JointDistribution joint = uniform_joint(ch);
    const std::size_t cells = static_cast<std::size_t>(g.order) * ny;
    std::vector<double> freq(cells, 0.0);
    for (std::uint64_t N = 0; N < n; ++N)
      freq[static_cast<std::size_t>(element_index(g, x[N])) * ny + y[N]] +=
          1.0 / static_cast<double>(n);
    double dev = 0.0;
    for (std::size_t c = 0; c < cells; ++c)
      dev = std::max(dev, std::fabs(freq[c] - joint.p[c]));
    const double eps = dev * static_cast<double>(cells) * 1.25 + 0.05;

    std::vector<std::uint32_t> theta(g.arity());
    for (std::size_t i = 0; i < g.arity(); ++i)
      theta[i] =
          static_cast<std::uint32_t>(uniform_index(rng, g.rings[i].exponent + 1));
    const std::uint64_t hs = subgroup_order(g, SubgroupExponents{theta});
    double coset_words = 1.0;
    for (std::uint64_t N = 0; N < n; ++N) coset_words *= static_cast<double>(hs);
    if (coset_words > static_cast<double>(cap)) continue;

    CosetTypicalCount res = coset_typical_count(ch, x, y, theta, eps, cap);
    if (pending_fault) {
      res.bound = static_cast<double>(res.count) - 1.0;  // force a violation
      pending_fault = false;
    }
    CheckResult check{format_group(g) + " n=" + std::to_string(n) + " theta=" +
                          format_exponents(SubgroupExponents{theta}),
                      true, ""};
    if (res.count < 1 || static_cast<double>(res.count) > res.bound) {
      check.passed = false;
      check.detail = "count " + std::to_string(res.count) + " vs bound " +
                     std::to_string(res.bound) + " at eps " + std::to_string(eps);
    } else {
      check.detail = "count " + std::to_string(res.count) + " <= bound " +
                     std::to_string(res.bound) + ", slack " +
                     std::to_string(res.slack_bits) + " bits";
    }
    suite.checks.push_back(std::move(check));
    ++produced;
  }
  detail::finish(suite);
  return suite;
}

// The default verification battery: all four suites on their default grids.
inline std::vector<SuiteResult> run_verification(bool inject_fault = false) {
  const auto grid = default_oracle_grid();
  return {collision_suite(grid, inject_fault), valuation_suite(grid, inject_fault),
          uniformity_suite(200, 9001, inject_fault),
          coset_typical_suite(50, 9002, inject_fault)};
}

}  // namespace groupcap
