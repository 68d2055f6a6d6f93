#pragma once

// Channel specification files and run reports. Specs are JSON: a "group"
// list of [prime, exponent] pairs, an "outputs" count, and a "matrix" whose
// rows follow the lexicographic element order of the group coordinates.
// Probabilities may be JSON numbers or exact "a/b" strings. Reports are
// emitted as JSON with a stable key order so identical inputs produce
// byte-identical output.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "channel.hpp"
#include "ensemble.hpp"
#include "group.hpp"
#include "rational.hpp"
#include "verify.hpp"
#include "version.hpp"

namespace groupcap {

using Json = nlohmann::ordered_json;

// FNV-1a over the raw input bytes; stable across runs by construction.
inline std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (std::size_t i = 16; i-- > 0; h >>= 4) out[i] = hex[h & 0xf];
  return out;
}

inline double parse_probability(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto r = parse_rational(v.get<std::string>());
    if (r) return to_double(*r);
    throw std::runtime_error(where + ": malformed rational \"" + v.get<std::string>() + "\"");
  }
  throw std::runtime_error(where + ": expected a number or an \"a/b\" string");
}

// Group spec strings pair with format_group: "2^2x3" is Z_4 (+) Z_3.
inline Group parse_group_spec(const std::string& spec) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> rings;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t next = spec.find('x', pos);
    if (next == std::string::npos) next = spec.size();
    const std::string part = spec.substr(pos, next - pos);
    const std::size_t caret = part.find('^');
    try {
      const std::string base = part.substr(0, caret);
      std::size_t used = 0;
      const std::uint64_t p = std::stoull(base, &used);
      if (used != base.size()) throw std::invalid_argument(part);
      std::uint32_t r = 1;
      if (caret != std::string::npos) {
        const std::string exp = part.substr(caret + 1);
        r = static_cast<std::uint32_t>(std::stoul(exp, &used));
        if (used != exp.size()) throw std::invalid_argument(part);
      }
      rings.emplace_back(p, r);
    } catch (const std::exception&) {
      throw std::invalid_argument("group spec \"" + spec + "\": cannot parse \"" + part +
                                  "\"");
    }
    pos = next + 1;
    if (pos == spec.size())  // trailing separator, e.g. "2x"
      throw std::invalid_argument("group spec \"" + spec + "\" ends with a separator");
  }
  if (rings.empty()) throw std::invalid_argument("group spec is empty");
  return make_group(rings);
}

struct LoadedChannel {
  Channel channel;
  std::string name;
  std::string digest;  // of the raw spec bytes
};

inline LoadedChannel parse_channel_spec(const std::string& text, const std::string& origin) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error(origin + ": spec must be a JSON object");
  if (!j.contains("group") || !j["group"].is_array() || j["group"].empty())
    throw std::runtime_error(origin + ": field \"group\" must be a nonempty array");

  std::vector<std::pair<std::uint64_t, std::uint32_t>> rings;
  for (std::size_t i = 0; i < j["group"].size(); ++i) {
    const Json& e = j["group"][i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
        !e[1].is_number_unsigned())
      throw std::runtime_error(origin + ": group entry " + std::to_string(i) +
                               " must be [prime, exponent]");
    rings.emplace_back(e[0].get<std::uint64_t>(), e[1].get<std::uint32_t>());
  }
  Group g;
  try {
    g = make_group(rings);
  } catch (const std::exception& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }

  if (!j.contains("outputs") || !j["outputs"].is_number_unsigned() ||
      j["outputs"].get<std::uint64_t>() == 0)
    throw std::runtime_error(origin + ": field \"outputs\" must be a positive integer");
  const std::size_t ny = j["outputs"].get<std::size_t>();

  if (!j.contains("matrix") || !j["matrix"].is_array())
    throw std::runtime_error(origin + ": field \"matrix\" must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t x = 0; x < j["matrix"].size(); ++x) {
    const Json& row = j["matrix"][x];
    if (!row.is_array())
      throw std::runtime_error(origin + ": matrix row " + std::to_string(x) +
                               " must be an array");
    std::vector<double> r;
    for (std::size_t y = 0; y < row.size(); ++y)
      r.push_back(parse_probability(
          row[y], origin + ": matrix row " + std::to_string(x) + " entry " +
                      std::to_string(y)));
    rows.push_back(std::move(r));
  }

  LoadedChannel out;
  try {
    out.channel = make_channel(g, ny, rows);
  } catch (const std::exception& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
  if (j.contains("name") && j["name"].is_string()) out.name = j["name"].get<std::string>();
  out.digest = content_digest(text);
  return out;
}

inline LoadedChannel load_channel_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_spec(buf.str(), path);
}

inline Json group_json(const Group& g) {
  Json arr = Json::array();
  for (const Ring& r : g.rings) arr.push_back({r.prime, r.exponent});
  return arr;
}

inline Json channel_spec_json(const Channel& ch, const std::string& name = "") {
  Json j;
  if (!name.empty()) j["name"] = name;
  j["comment"] =
      "matrix rows follow the lexicographic element order of the group coordinates";
  j["group"] = group_json(ch.group);
  j["outputs"] = ch.output_size;
  Json matrix = Json::array();
  for (std::size_t x = 0; x < ch.group.order; ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < ch.output_size; ++y) row.push_back(ch.at(x, y));
    matrix.push_back(std::move(row));
  }
  j["matrix"] = std::move(matrix);
  return j;
}

inline Json bound_value_json(const BoundValue& b) {
  return Json{{"value", b.value}, {"weights", b.weights}, {"binding", b.binding}};
}

inline Json bounds_report_json(const Channel& ch, const BoundsReport& rep) {
  Json j;
  j["group"] = group_json(ch.group);
  j["lower"] = bound_value_json(
      BoundValue{rep.lower, rep.lower_weights, rep.binding_lower});
  j["upper"] = bound_value_json(
      BoundValue{rep.upper, rep.upper_weights, rep.binding_upper});
  j["shannon"] = rep.shannon;
  j["coset_symmetric"] = rep.coset_symmetric;
  Json table = Json::array();
  for (const SubgroupDiagnostics& d : rep.diagnostics) {
    double best = d.best_value;
    std::string best_rep;
    for (const CosetCapacity& c : d.coset_values)
      if (c.value == best && best_rep.empty())
        best_rep = format_element(c.coset.representative);
    table.push_back(Json{{"subgroup", format_exponents(d.exponents)},
                         {"mean_value", d.mean_value},
                         {"best_value", d.best_value},
                         {"best_coset", best_rep},
                         {"rate_coefficients", d.rate_coeffs},
                         {"maximal", d.maximal}});
  }
  j["subgroups"] = std::move(table);
  return j;
}

inline Json trial_stats_json(const TrialStats& s) {
  return Json{{"trials", s.trials},   {"errors", s.errors},
              {"error_rate", s.error_rate}, {"ci_low", s.ci_low},
              {"ci_high", s.ci_high}, {"seed", s.seed}};
}

inline Json suite_json(const SuiteResult& s) {
  Json checks = Json::array();
  for (const CheckResult& c : s.checks)
    checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"suite", s.suite}, {"passed", s.passed}, {"checks", std::move(checks)}};
}

// Envelope shared by every subcommand. Wall-clock duration deliberately
// stays out of the payload: reports must be byte-identical across runs, so
// timing goes to the diagnostic stream instead.
inline Json run_report_json(const std::string& command, const std::string& digest,
                            Json result) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["input_digest"] = digest;
  j["result"] = std::move(result);
  return j;
}

}  // namespace groupcap
