#pragma once

// Exact arithmetic primitives. Everything in the library is computed over
// arbitrary-precision rationals; square roots only ever appear as surds whose
// sign is decided exactly (see sign_of_surd).

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <compare>
#include <string>
#include <string_view>

#include "chainstab/errors.hpp"

namespace chainstab {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(const Integer& p, const Integer& q) {
  if (q == 0) throw UsageError("rational with zero denominator");
  return Rational(p, q);
}

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

inline int sign(const Rational& q) { return q.sign(); }

inline Integer floor_of(const Rational& q) {
  Integer n = numerator_of(q);
  Integer d = denominator_of(q);
  Integer t = n / d;  // truncates toward zero
  if (n < 0 && t * d != n) t -= 1;
  return t;
}

inline Integer ceil_of(const Rational& q) {
  Integer n = numerator_of(q);
  Integer d = denominator_of(q);
  Integer t = n / d;
  if (n > 0 && t * d != n) t += 1;
  return t;
}

/// Fractional part in [0, 1).
inline Rational frac_of(const Rational& q) { return q - Rational(floor_of(q)); }

inline Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Smallest n >= 0 with n^2 >= q (q >= 0).
inline Integer ceil_sqrt(const Rational& q) {
  if (q < 0) throw UsageError("ceil_sqrt of a negative rational");
  Integer c = ceil_of(q);
  Integer n = boost::multiprecision::sqrt(c);
  while (Rational(n * n) < q) n += 1;
  while (n > 0 && Rational((n - 1) * (n - 1)) >= q) n -= 1;
  return n;
}

/// Largest n >= 0 with n^2 <= q (q >= 0).
inline Integer floor_sqrt(const Rational& q) {
  if (q < 0) throw UsageError("floor_sqrt of a negative rational");
  Integer f = floor_of(q);
  Integer n = boost::multiprecision::sqrt(f);
  while (Rational((n + 1) * (n + 1)) <= q) n += 1;
  while (n > 0 && Rational(n * n) > q) n -= 1;
  return n;
}

/// Exact sign of u + v*sqrt(radicand), radicand >= 0.
inline int sign_of_surd(const Rational& u, const Rational& v, const Rational& radicand) {
  if (radicand < 0) throw UsageError("negative radicand");
  const int su = sign(u);
  const int sv = radicand == 0 ? 0 : sign(v);
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  // opposite signs: compare u^2 with v^2 * radicand
  const Rational lhs = u * u;
  const Rational rhs = v * v * radicand;
  if (lhs == rhs) return 0;
  return lhs > rhs ? su : sv;
}

/// Canonical text form "p/q" (always with a denominator, q > 0).
inline std::string to_string(const Rational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string to_string(const Integer& n) { return n.str(); }

/// Parses "p", "p/q", "-p/q" (surrounding whitespace ignored).
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) -> Integer {
    s = trim(s);
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      negative = s[i] == '-';
      ++i;
    }
    if (i == s.size()) throw ConfigurationError("malformed rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(s[j])))
        throw ConfigurationError("malformed rational '" + std::string(text) + "'");
    }
    Integer value(std::string(s.substr(i)));
    return negative ? Integer(-value) : value;
  };
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer p = parse_int(text.substr(0, slash));
  Integer q = parse_int(text.substr(slash + 1));
  if (q == 0) throw ConfigurationError("rational with zero denominator '" + std::string(text) + "'");
  return Rational(p, q);
}

}  // namespace chainstab
