#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "groupcap/bounds.hpp"
#include "groupcap/channel.hpp"
#include "groupcap/ensemble.hpp"
#include "groupcap/io.hpp"
#include "groupcap/verify.hpp"

#define GCTEST_WANT_CHANNEL
#include "support.hpp"

using namespace groupcap;

namespace {

const char* kBscSpec = R"({
  "name": "bsc example",
  "group": [[2, 1]],
  "outputs": 2,
  "matrix": [["9/10", "1/10"], ["1/10", "9/10"]]
})";

}  // namespace

TEST_CASE("group spec strings parse and round trip through format_group") {
  const Group a = parse_group_spec("2");
  REQUIRE(a.arity() == 1);
  REQUIRE(a.rings[0].prime == 2);
  REQUIRE(a.rings[0].exponent == 1);

  const Group b = parse_group_spec("2^2x3");
  REQUIRE(b.arity() == 2);
  REQUIRE(b.rings[0].prime == 2);
  REQUIRE(b.rings[0].exponent == 2);
  REQUIRE(b.rings[1].prime == 3);
  REQUIRE(b.rings[1].exponent == 1);
  REQUIRE(format_group(b) == "2^2x3");

  for (const std::string spec : {"2x2x5^3", "7", "3^4"}) {
    REQUIRE(format_group(parse_group_spec(spec)) == spec);
  }

  REQUIRE_THROWS_AS(parse_group_spec(""), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_group_spec("2x"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_group_spec("ab"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_group_spec("2^"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_group_spec("6"), std::invalid_argument);  // not prime
}

TEST_CASE("probabilities accept numbers and exact fraction strings") {
  REQUIRE(parse_probability(Json(0.25), "t") == 0.25);
  REQUIRE(parse_probability(Json("1/4"), "t") == 0.25);
  REQUIRE(parse_probability(Json("3/3"), "t") == 1.0);

  const auto ctx = [](const Json& v) {
    try {
      parse_probability(v, "matrix row 2 entry 1");
    } catch (const std::runtime_error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  REQUIRE(ctx(Json("x/y")).find("matrix row 2 entry 1") != std::string::npos);
  REQUIRE(ctx(Json(true)).find("matrix row 2 entry 1") != std::string::npos);
}

TEST_CASE("content digest is stable and input sensitive") {
  // FNV-1a 64 reference value for the empty string.
  REQUIRE(content_digest("") == "cbf29ce484222325");
  REQUIRE(content_digest("a") == "af63dc4c8601ec8c");
  REQUIRE(content_digest(kBscSpec) == content_digest(kBscSpec));
  REQUIRE(content_digest(kBscSpec) != content_digest(std::string(kBscSpec) + " "));
}

TEST_CASE("channel specs parse with exact rational entries") {
  const LoadedChannel in = parse_channel_spec(kBscSpec, "inline");
  REQUIRE(in.name == "bsc example");
  REQUIRE(in.digest == content_digest(kBscSpec));
  REQUIRE(in.channel.group.order == 2);
  REQUIRE(in.channel.output_size == 2);
  REQUIRE(in.channel.at(0, 0) == 0.9);
  REQUIRE(in.channel.at(0, 1) == 0.1);
  REQUIRE(in.channel.at(1, 1) == 0.9);
}

TEST_CASE("channel spec errors carry the origin and the offending row") {
  const auto message = [](const std::string& text) {
    try {
      parse_channel_spec(text, "spec.json");
    } catch (const std::exception& e) {
      return std::string(e.what());
    }
    return std::string();
  };

  const std::string bad_sum = R"({"group": [[2,1]], "outputs": 2,
    "matrix": [[0.9, 0.09], [0.1, 0.9]]})";
  const std::string m1 = message(bad_sum);
  REQUIRE(m1.find("spec.json") != std::string::npos);
  REQUIRE(m1.find("row 0") != std::string::npos);

  REQUIRE(message(R"({"group": [[6,1]], "outputs": 1, "matrix": [[1],[1],[1],[1],[1],[1]]})")
              .find("prime") != std::string::npos);
  REQUIRE(message(R"({"outputs": 2, "matrix": []})").find("group") != std::string::npos);
  REQUIRE(message(R"({"group": [[2,1]], "matrix": []})").find("outputs") !=
          std::string::npos);
  REQUIRE(message(R"({"group": [[2,1]], "outputs": 2})").find("matrix") !=
          std::string::npos);
  REQUIRE(message(R"({"group": [[2,1]], "outputs": 2, "matrix": [[1, 0]]})")
              .find("rows") != std::string::npos);
  REQUIRE(message(R"({"group": [[2,1]], "outputs": 2,
    "matrix": [[0.5, 0.5, 0.0], [0.5, 0.5]]})")
              .find("width") != std::string::npos);
  REQUIRE(message("not json").find("spec.json") != std::string::npos);
}

TEST_CASE("channel specs round trip through emission and parsing") {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 20; ++iter) {
    const Group g = gctest::group_pool()[iter % gctest::group_pool().size()];
    const Channel ch = gctest::random_channel(g, 2 + iter % 4, rng);
    const Json spec = channel_spec_json(ch, "case " + std::to_string(iter));
    const LoadedChannel back = parse_channel_spec(spec.dump(), "round-trip");
    REQUIRE(back.name == "case " + std::to_string(iter));
    REQUIRE(back.channel.group.rings.size() == g.rings.size());
    for (std::size_t i = 0; i < g.rings.size(); ++i) {
      REQUIRE(back.channel.group.rings[i].prime == g.rings[i].prime);
      REQUIRE(back.channel.group.rings[i].exponent == g.rings[i].exponent);
    }
    REQUIRE(back.channel.output_size == ch.output_size);
    for (std::uint64_t x = 0; x < g.order; ++x)
      for (std::size_t y = 0; y < ch.output_size; ++y)
        REQUIRE(back.channel.at(x, y) == Catch::Approx(ch.at(x, y)).margin(1e-15));
  }
}

TEST_CASE("channel files load from disk and report open failures") {
  const std::string path = "/tmp/groupcap_io_test_channel.json";
  {
    std::ofstream out(path, std::ios::binary);
    out << kBscSpec;
  }
  const LoadedChannel in = load_channel_file(path);
  REQUIRE(in.channel.group.order == 2);
  REQUIRE(in.digest == content_digest(kBscSpec));
  std::remove(path.c_str());

  try {
    load_channel_file("/tmp/groupcap_io_test_missing.json");
    FAIL("expected an exception");
  } catch (const std::exception& e) {
    REQUIRE(std::string(e.what()).find("cannot open") != std::string::npos);
  }
}

TEST_CASE("bounds reports serialise to JSON that survives a reparse") {
  const LoadedChannel in = parse_channel_spec(kBscSpec, "inline");
  const BoundsReport rep = full_report(in.channel);
  const Json j = run_report_json("bounds", in.digest, bounds_report_json(in.channel, rep));

  REQUIRE(j["tool"] == "groupcap");
  REQUIRE(j["command"] == "bounds");
  REQUIRE(j["input_digest"] == in.digest);
  const Json& r = j["result"];
  REQUIRE(r["lower"]["value"].get<double>() == Catch::Approx(rep.lower));
  REQUIRE(r["upper"]["value"].get<double>() == Catch::Approx(rep.upper));
  REQUIRE(r["shannon"].get<double>() == Catch::Approx(rep.shannon));
  REQUIRE(r["subgroups"].size() == rep.diagnostics.size());
  REQUIRE(r["subgroups"][0].contains("rate_coefficients"));

  // Byte-identical reports: dump, reparse, dump again.
  const std::string once = j.dump(2);
  REQUIRE(Json::parse(once) == j);
  REQUIRE(Json::parse(once).dump(2) == once);
}

TEST_CASE("trial statistics serialise losslessly") {
  const TrialStats s = make_trial_stats(31, 400, 99);
  const Json j = trial_stats_json(s);
  REQUIRE(j["trials"] == 400);
  REQUIRE(j["errors"] == 31);
  REQUIRE(j["seed"] == 99);
  REQUIRE(j["error_rate"].get<double>() == s.error_rate);
  REQUIRE(j["ci_low"].get<double>() == s.ci_low);
  REQUIRE(j["ci_high"].get<double>() == s.ci_high);
  REQUIRE(Json::parse(j.dump()) == j);
}

TEST_CASE("verification suites pass on healthy oracles") {
  for (const SuiteResult& s : run_verification()) {
    INFO(s.suite);
    REQUIRE(s.passed);
    REQUIRE(!s.checks.empty());
    for (const auto& c : s.checks) REQUIRE(c.passed);
  }
}

TEST_CASE("fault injection surfaces a counterexample in every suite") {
  for (const SuiteResult& s : run_verification(true)) {
    INFO(s.suite);
    REQUIRE(!s.passed);
    bool found = false;
    for (const auto& c : s.checks) {
      if (!c.passed) {
        found = true;
        REQUIRE(!c.detail.empty());
      }
    }
    REQUIRE(found);
    const Json j = suite_json(s);
    REQUIRE(j["suite"] == s.suite);
    REQUIRE(j["passed"] == false);
  }
}
