#pragma once

// Exact rational arithmetic on 64-bit parts. Used where a probability or a
// weight must be compared exactly: ensemble weights, collision laws, and
// "a/b" strings in input files. All operations are overflow-checked and
// results are kept in lowest terms with a positive denominator.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace groupcap {

namespace detail {

inline std::int64_t checked_i64(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(what);
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;  // always > 0, gcd(|num|, den) = 1

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  if (den < 0) {
    if (num == INT64_MIN || den == INT64_MIN)
      throw std::overflow_error("rational: normalisation overflow");
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

inline Rational add(const Rational& a, const Rational& b) {
  // Reduce in 128 bits before narrowing so intermediate growth cannot spill.
  __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
  __int128 d = static_cast<__int128>(a.den) * b.den;
  __int128 g = n < 0 ? -n : n;
  __int128 h = d;
  while (h != 0) {
    const __int128 t = g % h;
    g = h;
    h = t;
  }
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational{detail::checked_i64(n, "rational: addition overflow"),
                  detail::checked_i64(d, "rational: addition overflow")};
}

inline Rational mul(const Rational& a, const Rational& b) {
  // Cross-cancel before multiplying to keep parts small.
  const std::int64_t g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
  const std::int64_t g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
  const __int128 n = static_cast<__int128>(a.num / g1) * (b.num / g2);
  const __int128 d = static_cast<__int128>(a.den / g2) * (b.den / g1);
  return Rational{detail::checked_i64(n, "rational: multiplication overflow"),
                  detail::checked_i64(d, "rational: multiplication overflow")};
}

inline double to_double(const Rational& a) {
  return static_cast<double>(a.num) / static_cast<double>(a.den);
}

inline std::string format_rational(const Rational& a) {
  if (a.den == 1) return std::to_string(a.num);
  return std::to_string(a.num) + "/" + std::to_string(a.den);
}

// Parses "a" or "a/b" with optional sign; no whitespace. Returns nothing on
// malformed input rather than guessing.
inline std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const std::size_t slash = s.find('/');
  const auto parse_int = [](const std::string& t, std::int64_t& out) -> bool {
    if (t.empty()) return false;
    std::size_t pos = 0;
    try {
      out = std::stoll(t, &pos);
    } catch (const std::exception&) {
      return false;
    }
    return pos == t.size();
  };
  std::int64_t num = 0, den = 1;
  if (slash == std::string::npos) {
    if (!parse_int(s, num)) return std::nullopt;
  } else {
    if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return make_rational(num, den);
}

}  // namespace groupcap
