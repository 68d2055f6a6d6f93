// Acceptance gate: nine end-to-end checks with pinned tolerances, printed as
// one [PASS]/[FAIL] line each plus indented measurements. Run it bare for the
// whole battery or with --criterion N for a single check; the exit code is 0
// exactly when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "groupcap/bounds.hpp"
#include "groupcap/channel.hpp"
#include "groupcap/ensemble.hpp"
#include "groupcap/group.hpp"
#include "groupcap/maxmin.hpp"
#include "groupcap/oracles.hpp"
#include "groupcap/rational.hpp"
#include "groupcap/verify.hpp"

namespace {

using namespace groupcap;

struct Outcome {
  bool pass = true;
  std::string headline;
  std::vector<std::string> details;
};

class Timer {
 public:
  Timer() : start_(clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_;
};

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

Group Z(std::uint64_t p, std::uint32_t r = 1) { return make_group({{p, r}}); }

Channel bsc(double flip) {
  return make_channel(Z(2), 2, {{1.0 - flip, flip}, {flip, 1.0 - flip}});
}

Channel additive_z4(const std::vector<double>& noise) {
  std::vector<std::vector<double>> rows(4, std::vector<double>(4));
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) rows[x][y] = noise[(y + 4 - x) % 4];
  return make_channel(make_group({{2, 2}}), 4, rows);
}

Channel random_channel(const Group& g, std::size_t ny, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(g.order),
                                        std::vector<double>(ny));
  for (auto& row : rows) {
    double sum = 0.0;
    for (double& v : row) sum += (v = exp1(rng) + 1e-6);
    for (double& v : row) v /= sum;
  }
  return make_channel(g, ny, rows);
}

// ---------------------------------------------------------------------------
// 1. Binary symmetric channel: both bounds and the unconstrained capacity
//    collapse to 1 - h(flip). Tolerance 1e-6, budget 1 s.

Outcome criterion1() {
  Outcome out;
  const double flip = 0.1;
  const double ref = 1.0 + flip * std::log2(flip) + (1.0 - flip) * std::log2(1.0 - flip);
  Timer t;
  const BoundsReport rep = full_report(bsc(flip));
  const double secs = t.seconds();

  const double tol = 1e-6;
  out.pass = std::fabs(rep.lower - ref) <= tol && std::fabs(rep.upper - ref) <= tol &&
             std::fabs(rep.shannon - ref) <= tol && secs < 1.0;
  out.headline = fmt("binary symmetric channel is tight: lower=upper=shannon=%.6f "
                     "(reference %.6f, tolerance 1e-6, %.0f ms)",
                     rep.lower, ref, secs * 1e3);
  out.details.push_back(fmt("lower %.9f  upper %.9f  shannon %.9f", rep.lower, rep.upper,
                            rep.shannon));
  return out;
}

// ---------------------------------------------------------------------------
// 2. Additive channels on Z_4: for noise (0.7,0.1,0.1,0.1) both bounds meet
//    the symmetric-capacity value min over subgroup ratios; for the noise
//    (0.45,0.05,0.45,0.05) that hides a binary channel inside Z_4, both
//    bounds are exactly zero while the unconstrained capacity stays positive.

Outcome criterion2() {
  Outcome out;

  // Reference values recomputed from scratch via direct entropy evaluation.
  const std::vector<double> noise1 = {0.7, 0.1, 0.1, 0.1};
  const double whole = 2.0 - entropy_bits(noise1);
  const std::vector<double> mix = {0.4, 0.1, 0.4, 0.1};  // rows 0 and 2 averaged
  const double sub = (entropy_bits(mix) - entropy_bits(noise1)) / 0.5;
  const double expected = std::min(whole, sub);

  Timer t1;
  const BoundsReport rep1 = full_report(additive_z4(noise1));
  const double secs1 = t1.seconds();
  const double sym = symmetric_capacity(additive_z4(noise1));

  const std::vector<double> noise2 = {0.45, 0.05, 0.45, 0.05};
  Timer t2;
  const BoundsReport rep2 = full_report(additive_z4(noise2));
  const double secs2 = t2.seconds();
  const double shannon2 = 2.0 - entropy_bits(noise2);

  bool ok = true;
  ok = ok && std::fabs(rep1.lower - expected) <= 1e-5;
  ok = ok && std::fabs(rep1.upper - expected) <= 1e-5;
  ok = ok && std::fabs(sym - expected) <= 1e-5;
  ok = ok && std::fabs(rep2.lower) <= 1e-9 && std::fabs(rep2.upper) <= 1e-9;
  ok = ok && std::fabs(rep2.shannon - shannon2) <= 1e-5;
  ok = ok && secs1 < 1.0 && secs2 < 1.0;
  out.pass = ok;
  out.headline = fmt("additive channels on Z_4: bounds meet min(%.5f, %.5f)=%.5f and "
                     "degrade to 0 when the group structure is useless",
                     whole, sub, expected);
  out.details.push_back(fmt("noise (0.7,0.1,0.1,0.1): lower %.9f upper %.9f "
                            "symmetric %.9f (%.0f ms)",
                            rep1.lower, rep1.upper, sym, secs1 * 1e3));
  out.details.push_back(fmt("noise (0.45,0.05,0.45,0.05): lower %.3g upper %.3g "
                            "shannon %.9f vs %.9f (%.0f ms)",
                            rep2.lower, rep2.upper, rep2.shannon, shannon2, secs2 * 1e3));
  return out;
}

// ---------------------------------------------------------------------------
// 3. Collision probability closed form vs exhaustive enumeration over every
//    (generator tuple, dither) pair: exact equality on all nonzero difference
//    words and all conditioning cells, for the full small-group grid.

Outcome criterion3() {
  Outcome out;
  Timer t;
  const SuiteResult suite = collision_suite(default_oracle_grid());
  const double secs = t.seconds();

  out.pass = suite.passed && secs < 30.0;
  out.headline = fmt("collision closed form equals brute force on %zu difference "
                     "classes across 12 configs (exact integers, %.2f s)",
                     suite.checks.size(), secs);
  for (const auto& c : suite.checks)
    if (!c.passed) out.details.push_back("counterexample " + c.name + ": " + c.detail);
  return out;
}

// ---------------------------------------------------------------------------
// 4. Valuation-class sizes: the per-ring product formula
//    prod_i (p_i^(r_i-theta_i))^(b_i) (1 - p_i^(-b_i)) matches
//    count_valuation_class exactly on the grid theta_i <= r_i - 1, the
//    extended grid partitions the M-1 nonzero words, and everything agrees
//    with the word-by-word exhaustive census.

Outcome criterion4() {
  Outcome out;
  std::uint64_t formula_cells = 0;

  for (const EnsembleConfig& cfg : default_oracle_grid()) {
    if (cfg.n != 1) continue;  // class sizes do not depend on block length
    const std::size_t rings = cfg.group.arity();

    // Closed-form grid walk over theta_i in [0, r_i - 1].
    std::vector<std::uint32_t> theta(rings, 0);
    bool more = true;
    while (more) {
      std::uint64_t formula = 1;
      for (std::size_t i = 0; i < rings; ++i) {
        const std::uint64_t p = cfg.group.rings[i].prime;
        const std::uint32_t r = cfg.group.rings[i].exponent;
        const std::uint64_t b = cfg.block_sizes[i];
        // (p^(r-theta))^b (1 - p^-b) = p^((r-theta-1) b) (p^b - 1), an integer.
        formula *=
            detail::checked_pow(p, static_cast<std::uint32_t>((r - theta[i] - 1) * b)) *
            (detail::checked_pow(p, static_cast<std::uint32_t>(b)) - 1);
      }
      const std::uint64_t counted = count_valuation_class(cfg, theta);
      ++formula_cells;
      if (counted != formula) {
        out.pass = false;
        out.details.push_back(fmt("%s k=%llu: formula %llu vs count %llu",
                                  format_group(cfg.group).c_str(),
                                  static_cast<unsigned long long>(cfg.k),
                                  static_cast<unsigned long long>(formula),
                                  static_cast<unsigned long long>(counted)));
      }
      more = false;
      for (std::size_t i = 0; i < rings && !more; ++i) {
        if (++theta[i] < cfg.group.rings[i].exponent)
          more = true;
        else
          theta[i] = 0;
      }
    }

    // Extended grid (theta_i up to r_i) must partition the nonzero words.
    std::vector<std::uint32_t> full(rings, 0);
    std::uint64_t total = 0;
    more = true;
    while (more) {
      total += count_valuation_class(cfg, full);
      more = false;
      for (std::size_t i = 0; i < rings && !more; ++i) {
        if (++full[i] <= cfg.group.rings[i].exponent)
          more = true;
        else
          full[i] = 0;
      }
    }
    if (total != cfg.message_count - 1) {
      out.pass = false;
      out.details.push_back(fmt("%s k=%llu: classes sum to %llu, expected M-1=%llu",
                                format_group(cfg.group).c_str(),
                                static_cast<unsigned long long>(cfg.k),
                                static_cast<unsigned long long>(total),
                                static_cast<unsigned long long>(cfg.message_count - 1)));
    }
  }

  const SuiteResult census = valuation_suite(default_oracle_grid());
  if (!census.passed) {
    out.pass = false;
    for (const auto& c : census.checks)
      if (!c.passed) out.details.push_back("census " + c.name + ": " + c.detail);
  }

  out.headline = fmt("valuation class sizes: product formula exact on %llu cells, "
                     "every class partition sums to M-1, census agrees",
                     static_cast<unsigned long long>(formula_cells));
  return out;
}

// ---------------------------------------------------------------------------
// 5. Every coordinate of a sampled codebook is uniform on a coset of a
//    coordinate subgroup, across 200 random (group, config, seed) draws.

Outcome criterion5() {
  Outcome out;
  const SuiteResult suite = uniformity_suite(200);
  out.pass = suite.passed;
  out.headline = fmt("single-letter marginals uniform at every position in %zu "
                     "random codebooks (M <= 256, n <= 8)",
                     suite.checks.size());
  for (const auto& c : suite.checks)
    if (!c.passed) out.details.push_back("counterexample " + c.name + ": " + c.detail);
  return out;
}

// ---------------------------------------------------------------------------
// 6. Max-min solver vs an exhaustive simplex-lattice sweep at resolution
//    2000 on 100 random instances, plus the noiseless Z_2+Z_3 closed form.

Outcome criterion6() {
  Outcome out;
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unit(0.5, 2.0);

  double worst = 0.0;
  int failures = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t slots = 1 + static_cast<std::size_t>(iter % 3);
    const std::size_t rows = 2 + static_cast<std::size_t>(rng() % 4);
    std::vector<RatioConstraint> cs;
    for (std::size_t h = 0; h < rows; ++h) {
      RatioConstraint c;
      c.label = "row" + std::to_string(h);
      c.numerator = unit(rng);
      c.coeffs.resize(slots);
      for (double& v : c.coeffs) v = unit(rng);
      cs.push_back(std::move(c));
    }
    const double solved = maximize_min_ratio(cs, slots).value;
    const double swept = grid_cross_check(cs, slots, 2000);
    const double gap = std::fabs(solved - swept);
    worst = std::max(worst, gap);
    if (gap > 2e-3) {
      ++failures;
      if (out.details.size() < 4)
        out.details.push_back(fmt("instance %d (I=%zu): solver %.9f sweep %.9f", iter,
                                  slots, solved, swept));
    }
  }

  const Channel z6 = make_channel(
      make_group({{2, 1}, {3, 1}}), 6,
      {{1, 0, 0, 0, 0, 0},
       {0, 1, 0, 0, 0, 0},
       {0, 0, 1, 0, 0, 0},
       {0, 0, 0, 1, 0, 0},
       {0, 0, 0, 0, 1, 0},
       {0, 0, 0, 0, 0, 1}});
  const BoundValue lower = capacity_lower_bound(z6);
  const double log26 = std::log2(6.0);
  const bool closed_form = std::fabs(lower.value - log26) <= 1e-9 &&
                           lower.weights.size() == 2 &&
                           std::fabs(lower.weights[0] - 1.0 / log26) <= 1e-6 &&
                           std::fabs(lower.weights[1] - std::log2(3.0) / log26) <= 1e-6;

  out.pass = failures == 0 && closed_form;
  out.headline = fmt("max-min solver within 2e-3 of the resolution-2000 lattice sweep "
                     "on 100 instances (worst gap %.2e); noiseless Z_2+Z_3 gives "
                     "log2(6) with weights (1/log2 6, log2 3/log2 6)",
                     worst);
  out.details.push_back(fmt("closed form: value %.12f vs %.12f, weights %.9f %.9f",
                            lower.value, log26, lower.weights[0], lower.weights[1]));
  return out;
}

// ---------------------------------------------------------------------------
// 7. Monte Carlo achievability trend for the binary symmetric channel at
//    flip 0.05 (capacity 0.71360): at rate 1/2 the ensemble-average error
//    must fall strictly as n runs through {8, 16, 32, 64} with 10000 trials,
//    seed 7, maximum-likelihood decoding; above capacity it must not fall.
//
//    The n = 64 point at rate 1/2 needs an exact ML scan of M = 2^32
//    codewords for each of the 10000 trials. The general-purpose decoder
//    measured below handles ~4x10^6 codewords/s at n=64 (projection ~130
//    days), and even a bit-packed single-word specialisation (~10^9
//    codewords/s) would need ~12 core-hours; exact shortcuts are no better
//    (syndrome tables need 2^32 coset leaders, ~34 GB). The point is out of
//    reach on one core inside any sane budget,
//    so this criterion runs the feasible prefix, reports the measured
//    throughput and the projected cost, and fails honestly.

Outcome criterion7() {
  Outcome out;
  const Channel ch = bsc(0.05);
  const std::uint64_t trials = 10000, seed = 7;
  const std::vector<Rational> w1 = {make_rational(1, 1)};

  struct Run {
    std::uint64_t n = 0, k = 0, messages = 0;
    double err = 0.0, secs = 0.0;
  };
  const auto run_point = [&](std::uint64_t n, double rate) {
    const EnsembleConfig cfg = config_for_rate(Z(2), w1, n, rate);
    Timer t;
    const TrialStats stats = monte_carlo_error(ch, cfg, trials, seed);
    return Run{n, cfg.k, cfg.message_count, stats.error_rate, t.seconds()};
  };

  std::vector<Run> low;
  for (const std::uint64_t n : {8u, 16u, 32u}) low.push_back(run_point(n, 0.5));
  bool decreasing = true;
  for (std::size_t i = 1; i < low.size(); ++i)
    decreasing = decreasing && low[i].err < low[i - 1].err;

  std::vector<Run> high;
  for (const std::uint64_t n : {8u, 16u}) high.push_back(run_point(n, 0.9));
  bool nondecreasing = true;
  for (std::size_t i = 1; i < high.size(); ++i)
    nondecreasing = nondecreasing && high[i].err >= high[i - 1].err;

  // Projected cost of the missing points from the measured scan throughput.
  const Run& base = low.back();
  const double ops_per_sec =
      static_cast<double>(base.messages) * static_cast<double>(base.n) *
      static_cast<double>(trials) / base.secs;
  const double ops64 = 4294967296.0 * 64.0 * static_cast<double>(trials);
  const double days64 = ops64 / ops_per_sec / 86400.0;

  out.pass = false;
  out.headline = fmt("achievability trend verified on the feasible prefix only; the "
                     "n=64, rate-1/2 point needs ~%.0f single-core days of exact ML "
                     "scanning and cannot meet a 5-minute budget",
                     days64);
  for (const Run& r : low)
    out.details.push_back(fmt("rate 1/2: n=%2llu k=%2llu M=%5llu  error %.4f  (%.1f s)",
                              static_cast<unsigned long long>(r.n),
                              static_cast<unsigned long long>(r.k),
                              static_cast<unsigned long long>(r.messages), r.err,
                              r.secs));
  out.details.push_back(fmt("strictly decreasing over n in {8,16,32}: %s",
                            decreasing ? "yes" : "NO"));
  for (const Run& r : high)
    out.details.push_back(fmt("target 0.9 (admissible 7/8): n=%2llu k=%2llu  error %.4f  "
                              "(%.1f s)",
                              static_cast<unsigned long long>(r.n),
                              static_cast<unsigned long long>(r.k), r.err, r.secs));
  out.details.push_back(fmt("non-decreasing above capacity over n in {8,16}: %s",
                            nondecreasing ? "yes" : "NO"));
  out.details.push_back(fmt("measured decoder throughput %.2e codeword-positions/s; "
                            "n=64 at rate 1/2 is 2^32 codewords x 64 positions x %llu "
                            "trials = %.1e operations",
                            ops_per_sec, static_cast<unsigned long long>(trials),
                            ops64));
  out.details.push_back("prefix behaviour matches the claim; the verdict is FAIL only "
                        "because the mandated n=64 point is computationally out of "
                        "reach on this host");
  return out;
}

// ---------------------------------------------------------------------------
// 8. Bracket sanity on 50 random channels: 0 <= lower <= upper <=
//    shannon + 1e-6, and relabeling the ring decomposition leaves all three
//    values unchanged to 1e-12.

Outcome criterion8() {
  Outcome out;
  std::mt19937_64 rng(424242);
  const std::vector<Group> pool = {Z(2), Z(3), Z(2, 2), make_group({{2, 1}, {3, 1}}),
                                   Z(2, 3)};

  int checked = 0;
  for (int iter = 0; iter < 50; ++iter) {
    const Group& g = pool[static_cast<std::size_t>(iter) % pool.size()];
    const std::size_t ny = 2 + static_cast<std::size_t>(rng() % 5);
    const Channel ch = random_channel(g, ny, rng);
    const BoundsReport rep = full_report(ch);

    bool ok = rep.lower >= -1e-12 && rep.lower <= rep.upper + 1e-9 &&
              rep.upper <= rep.shannon + 1e-6;

    // Reverse the ring order and permute the rows to match.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> rev;
    for (auto it = g.rings.rbegin(); it != g.rings.rend(); ++it)
      rev.emplace_back(it->prime, it->exponent);
    const Group gr = make_group(rev);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(g.order),
                                          std::vector<double>(ny));
    for (std::uint64_t x = 0; x < g.order; ++x) {
      GroupElement a = element_at(g, x);
      GroupElement b;
      b.coords.assign(a.coords.rbegin(), a.coords.rend());
      for (std::size_t y = 0; y < ny; ++y)
        rows[static_cast<std::size_t>(element_index(gr, b))][y] = ch.at(x, y);
    }
    const BoundsReport rrep = full_report(make_channel(gr, ny, rows));
    ok = ok && std::fabs(rep.lower - rrep.lower) <= 1e-12 &&
         std::fabs(rep.upper - rrep.upper) <= 1e-12 &&
         std::fabs(rep.shannon - rrep.shannon) <= 1e-12;

    if (!ok) {
      out.pass = false;
      if (out.details.size() < 4)
        out.details.push_back(fmt("%s |Y|=%zu: lower %.9f upper %.9f shannon %.9f "
                                  "(relabeled %.9f %.9f %.9f)",
                                  format_group(g).c_str(), ny, rep.lower, rep.upper,
                                  rep.shannon, rrep.lower, rrep.upper, rrep.shannon));
    }
    ++checked;
  }
  out.headline = fmt("bounds bracket 0 <= lower <= upper <= shannon and survive ring "
                     "relabeling on %d random channels",
                     checked);
  return out;
}

// ---------------------------------------------------------------------------
// 9. Exact coset-typical intersection counts never exceed the certified
//    bound, across 50 random instances with reported slack.

Outcome criterion9() {
  Outcome out;
  const SuiteResult suite = coset_typical_suite(50);
  out.pass = suite.passed;
  std::size_t executed = suite.checks.size();
  out.headline = fmt("coset-typical counts stay under the certified bound on %zu "
                     "random instances (zero violations)",
                     executed);
  for (const auto& c : suite.checks)
    if (!c.passed) out.details.push_back("violation " + c.name + ": " + c.detail);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > 9) {
    std::fprintf(stderr, "criterion number must be 1..9\n");
    return 2;
  }

  Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                             criterion6, criterion7, criterion8, criterion9};

  bool all = true;
  for (int n = 1; n <= 9; ++n) {
    if (only != 0 && n != only) continue;
    const Outcome o = criteria[n - 1]();
    std::printf("[%s] criterion %d: %s\n", o.pass ? "PASS" : "FAIL", n,
                o.headline.c_str());
    for (const std::string& d : o.details) std::printf("    %s\n", d.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
