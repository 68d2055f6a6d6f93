// groupcap: capacity bounds, mutual information, random-ensemble simulation
// and self-verification for Abelian group codes over discrete memoryless
// channels. Data goes to stdout, diagnostics and timing go to stderr, and
// the exit code is 0 exactly when nothing failed.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "groupcap/bounds.hpp"
#include "groupcap/channel.hpp"
#include "groupcap/ensemble.hpp"
#include "groupcap/group.hpp"
#include "groupcap/io.hpp"
#include "groupcap/oracles.hpp"
#include "groupcap/rational.hpp"
#include "groupcap/verify.hpp"
#include "groupcap/version.hpp"

namespace {

using groupcap::Json;

class Stopwatch {
 public:
  explicit Stopwatch(std::string label) : label_(std::move(label)), start_(clock::now()) {}
  ~Stopwatch() {
    const double ms =
        std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    std::fprintf(stderr, "%s: completed in %.1f ms\n", label_.c_str(), ms);
  }

 private:
  using clock = std::chrono::steady_clock;
  std::string label_;
  clock::time_point start_;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split(const std::string& csv, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t next = csv.find(sep, pos);
    if (next == std::string::npos) next = csv.size();
    out.push_back(csv.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

std::vector<groupcap::Rational> parse_weights(const std::string& csv, std::size_t arity) {
  if (csv.empty())
    return std::vector<groupcap::Rational>(
        arity, groupcap::make_rational(1, static_cast<std::int64_t>(arity)));
  std::vector<groupcap::Rational> w;
  for (const std::string& part : split(csv, ',')) {
    const auto r = groupcap::parse_rational(part);
    if (!r) throw std::invalid_argument("--weights: malformed rational \"" + part + "\"");
    w.push_back(*r);
  }
  return w;
}

std::vector<std::uint64_t> parse_uint_list(const std::string& csv, const std::string& flag) {
  std::vector<std::uint64_t> out;
  for (const std::string& part : split(csv, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": malformed integer \"" + part + "\"");
    }
  }
  return out;
}

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

int fail(const std::exception& e) {
  std::cerr << "groupcap: error: " << e.what() << "\n";
  return 1;
}

// ---------------------------------------------------------------- bounds --

void print_bounds_text(const groupcap::LoadedChannel& in, const groupcap::BoundsReport& rep) {
  const auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
    return s.empty() ? "-" : s;
  };
  std::cout << "channel: " << (in.name.empty() ? "(unnamed)" : in.name) << " over "
            << groupcap::format_group(in.channel.group) << ", " << in.channel.output_size
            << " outputs\n";
  std::cout << "lower bound   " << fixed6(rep.lower) << " bits  binding "
            << join(rep.binding_lower) << "\n";
  std::cout << "upper bound   " << fixed6(rep.upper) << " bits  binding "
            << join(rep.binding_upper) << "\n";
  std::cout << "shannon       " << fixed6(rep.shannon) << " bits\n";
  std::cout << "coset symmetric: " << (rep.coset_symmetric ? "yes" : "no") << "\n";
  std::cout << "subgroup      mean      best      maximal\n";
  for (const auto& d : rep.diagnostics)
    std::cout << "  " << groupcap::format_exponents(d.exponents) << "  "
              << fixed6(d.mean_value) << "  " << fixed6(d.best_value) << "  "
              << (d.maximal ? "yes" : "no") << "\n";
}

int cmd_bounds(const std::string& path, const std::string& format, double tol) {
  Stopwatch clock("groupcap bounds");
  try {
    const groupcap::LoadedChannel in = groupcap::load_channel_file(path);
    const groupcap::BoundsReport rep = groupcap::full_report(in.channel, tol);
    if (format == "json") {
      emit(groupcap::run_report_json("bounds", in.digest,
                                     groupcap::bounds_report_json(in.channel, rep)));
    } else {
      print_bounds_text(in, rep);
    }
    return 0;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

// -------------------------------------------------------------- simulate --

int cmd_simulate(const std::string& path, const std::string& n_csv, std::int64_t k_flag,
                 double rate_flag, const std::string& weights_csv, std::uint64_t trials,
                 std::uint64_t seed, const std::string& decoder, double eps,
                 const std::string& format) {
  Stopwatch clock("groupcap simulate");
  try {
    const groupcap::LoadedChannel in = groupcap::load_channel_file(path);
    const groupcap::Group& g = in.channel.group;
    const auto weights = parse_weights(weights_csv, g.arity());
    const auto ns = parse_uint_list(n_csv, "--n");
    if (ns.empty()) throw std::invalid_argument("--n: need at least one block length");
    if ((k_flag < 0) == (rate_flag < 0))
      throw std::invalid_argument("exactly one of --k and --rate is required");

    groupcap::DecoderSpec dec;
    dec.kind = decoder == "typicality" ? groupcap::DecoderKind::Typicality
                                       : groupcap::DecoderKind::MaximumLikelihood;
    dec.epsilon = eps;

    const groupcap::BoundValue lower = groupcap::capacity_lower_bound(in.channel);

    Json runs = Json::array();
    std::string text;
    for (const std::uint64_t n : ns) {
      const groupcap::EnsembleConfig cfg =
          k_flag >= 0
              ? groupcap::make_ensemble_config(g, weights,
                                               static_cast<std::uint64_t>(k_flag), n, dec)
              : groupcap::config_for_rate(g, weights, n, rate_flag, dec);
      const groupcap::TrialStats stats =
          groupcap::monte_carlo_error(in.channel, cfg, trials, seed);
      runs.push_back(Json{{"n", n},
                          {"k", cfg.k},
                          {"rate", cfg.rate},
                          {"message_count", cfg.message_count},
                          {"stats", groupcap::trial_stats_json(stats)}});
      text += "n=" + std::to_string(n) + " k=" + std::to_string(cfg.k) + " rate " +
              fixed6(cfg.rate) + "  error " + fixed6(stats.error_rate) + "  ci [" +
              fixed6(stats.ci_low) + ", " + fixed6(stats.ci_high) + "]  (" +
              std::to_string(stats.errors) + "/" + std::to_string(stats.trials) + ")\n";
    }

    if (format == "json") {
      Json weights_json = Json::array();
      for (const auto& w : weights) weights_json.push_back(groupcap::format_rational(w));
      Json result;
      result["group"] = groupcap::group_json(g);
      result["weights"] = std::move(weights_json);
      result["decoder"] = decoder;
      if (dec.kind == groupcap::DecoderKind::Typicality) result["eps"] = eps;
      result["trials"] = trials;
      result["seed"] = seed;
      result["analytic_lower_bound"] = lower.value;
      result["runs"] = std::move(runs);
      emit(groupcap::run_report_json("simulate", in.digest, std::move(result)));
    } else {
      std::cout << "ensemble over " << groupcap::format_group(g) << ", decoder " << decoder
                << ", trials " << trials << ", seed " << seed << "\n";
      std::cout << "analytic lower bound " << fixed6(lower.value) << " bits\n";
      std::cout << text;
    }
    return 0;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

// -------------------------------------------------------------------- mi --

int cmd_mi(const std::string& path, const std::string& coset_arg, const std::string& format) {
  Stopwatch clock("groupcap mi");
  try {
    const groupcap::LoadedChannel in = groupcap::load_channel_file(path);
    const groupcap::Group& g = in.channel.group;

    Json result;
    double value = 0.0;
    if (coset_arg.empty()) {
      std::vector<double> uniform(static_cast<std::size_t>(g.order),
                                  1.0 / static_cast<double>(g.order));
      value = groupcap::mutual_information(
          in.channel, groupcap::make_input_distribution(g, std::move(uniform)));
      result["input"] = "uniform";
    } else {
      const std::size_t colon = coset_arg.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("--coset: expected \"e1,e2,...:c1,c2,...\"");
      const auto exps = parse_uint_list(coset_arg.substr(0, colon), "--coset");
      const auto coords = parse_uint_list(coset_arg.substr(colon + 1), "--coset");
      groupcap::SubgroupExponents s{
          std::vector<std::uint32_t>(exps.begin(), exps.end())};
      groupcap::check_exponents(g, s);
      groupcap::GroupElement a{coords};
      groupcap::check_element(g, a);
      const groupcap::GroupElement rep = groupcap::coset_representative(g, s, a);
      groupcap::Coset coset{s, rep, {}};
      for (const auto& m : groupcap::subgroup_members(g, s))
        coset.members.push_back(groupcap::add(g, rep, m));
      value = groupcap::coset_capacity(in.channel, coset);
      result["input"] = Json{{"subgroup", groupcap::format_exponents(s)},
                             {"representative", groupcap::format_element(rep)}};
    }
    result["mutual_information"] = value;

    if (format == "json") {
      emit(groupcap::run_report_json("mi", in.digest, std::move(result)));
    } else {
      std::cout << "mutual information " << fixed6(value) << " bits\n";
    }
    return 0;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

// ---------------------------------------------------------------- verify --

int cmd_verify(const std::string& group_spec, std::uint64_t k, std::uint64_t n,
               bool inject_fault, const std::string& format) {
  Stopwatch clock("groupcap verify");
  try {
    std::vector<groupcap::SuiteResult> suites;
    if (group_spec.empty()) {
      suites = groupcap::run_verification(inject_fault);
    } else {
      const groupcap::Group g = groupcap::parse_group_spec(group_spec);
      const std::vector<groupcap::EnsembleConfig> grid = {groupcap::oracle_config(g, k, n)};
      suites.push_back(groupcap::collision_suite(grid, inject_fault));
      suites.push_back(groupcap::valuation_suite(grid, inject_fault));
    }

    bool passed = true;
    for (const auto& s : suites) passed = passed && s.passed;

    if (format == "json") {
      Json arr = Json::array();
      for (const auto& s : suites) arr.push_back(groupcap::suite_json(s));
      emit(groupcap::run_report_json("verify", "",
                                     Json{{"passed", passed}, {"suites", std::move(arr)}}));
    } else {
      for (const auto& s : suites) {
        std::cout << (s.passed ? "[PASS] " : "[FAIL] ") << s.suite << " ("
                  << s.checks.size() << " checks)\n";
        for (const auto& c : s.checks)
          if (!c.passed) std::cout << "  failed: " << c.name << ": " << c.detail << "\n";
      }
      std::cout << (passed ? "all suites passed" : "verification failed") << "\n";
    }
    return passed ? 0 : 1;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "capacity bounds and random-ensemble simulation for Abelian group codes "
      "over discrete memoryless channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string(groupcap::kToolName) + " " + groupcap::kToolVersion);

  std::string spec_path, format = "text";

  auto* bounds = app.add_subcommand("bounds", "capacity bounds from a channel spec file");
  double tol = 1e-9;
  bounds->add_option("spec", spec_path, "channel spec JSON file")->required();
  bounds->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  bounds->add_option("--tol", tol, "solver tolerance");

  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo block error rate of the random ensemble");
  std::string n_csv, weights_csv, decoder = "ml";
  std::int64_t k_flag = -1;
  double rate_flag = -1.0, eps = 0.1;
  std::uint64_t trials = 1000, seed = 0;
  simulate->add_option("spec", spec_path, "channel spec JSON file")->required();
  simulate->add_option("--n", n_csv, "block lengths, comma separated")->required();
  simulate->add_option("--k", k_flag, "message scale (digits = weight * k per ring)");
  simulate->add_option("--rate", rate_flag, "target rate; picks the nearest admissible k");
  simulate->add_option("--weights", weights_csv,
                       "per-ring rational weights, e.g. 1/2,1/2 (default uniform)");
  simulate->add_option("--trials", trials, "Monte Carlo trials per block length");
  simulate->add_option("--seed", seed, "base seed; trial t uses substream (seed, t)");
  simulate->add_option("--decoder", decoder, "decoder kind")
      ->check(CLI::IsMember({"ml", "typicality"}));
  simulate->add_option("--eps", eps, "typicality threshold");
  simulate->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  auto* mi = app.add_subcommand("mi", "mutual information under uniform (coset) input");
  std::string coset_arg;
  mi->add_option("spec", spec_path, "channel spec JSON file")->required();
  mi->add_option("--coset", coset_arg,
                 "restrict input to a subgroup coset, \"e1,e2,...:c1,c2,...\"");
  mi->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  auto* verify = app.add_subcommand("verify", "run the exhaustive self-verification suites");
  std::string group_spec;
  std::uint64_t vk = 1, vn = 1;
  bool inject_fault = false;
  verify->add_option("--group", group_spec,
                     "single-instance mode: group spec like 2^2 or 2x3");
  verify->add_option("--k", vk, "message scale for single-instance mode");
  verify->add_option("--n", vn, "block length for single-instance mode");
  verify->add_flag("--inject-fault", inject_fault,
                   "corrupt one instance per suite to exercise failure reporting");
  verify->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);

  if (bounds->parsed()) return cmd_bounds(spec_path, format, tol);
  if (simulate->parsed())
    return cmd_simulate(spec_path, n_csv, k_flag, rate_flag, weights_csv, trials, seed,
                        decoder, eps, format);
  if (mi->parsed()) return cmd_mi(spec_path, coset_arg, format);
  if (verify->parsed()) return cmd_verify(group_spec, vk, vn, inject_fault, format);
  return 0;
}
