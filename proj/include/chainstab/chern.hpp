#pragma once

// Numerical Chern characters (ch0, ch1, ch2), twisting by exp(-beta), and the
// closed-form classes of the sheaves supported on exceptional curves.

#include <string>
#include <utility>
#include <vector>

#include "chainstab/errors.hpp"
#include "chainstab/ns_model.hpp"
#include "chainstab/rational.hpp"

namespace chainstab {

struct ChernCharacter {
  Integer r = 0;   // ch0
  DivisorClass d;  // ch1
  Rational c = 0;  // ch2

  ChernCharacter() = default;
  ChernCharacter(Integer rank, DivisorClass ch1, Rational ch2)
      : r(std::move(rank)), d(std::move(ch1)), c(std::move(ch2)) {}

  bool is_zero() const { return r == 0 && d.is_zero() && c == 0; }

  ChernCharacter& operator+=(const ChernCharacter& o) {
    r += o.r;
    d += o.d;
    c += o.c;
    return *this;
  }
  ChernCharacter& operator-=(const ChernCharacter& o) {
    r -= o.r;
    d -= o.d;
    c -= o.c;
    return *this;
  }
  friend ChernCharacter operator+(ChernCharacter a, const ChernCharacter& b) { return a += b; }
  friend ChernCharacter operator-(ChernCharacter a, const ChernCharacter& b) { return a -= b; }
  friend ChernCharacter operator-(const ChernCharacter& a) { return ChernCharacter(-a.r, -a.d, -a.c); }
  friend ChernCharacter operator*(const Integer& k, const ChernCharacter& a) {
    return ChernCharacter(k * a.r, Rational(k) * a.d, Rational(k) * a.c);
  }

  bool operator==(const ChernCharacter&) const = default;
};

/// ch^beta = ch . exp(-beta) = (r, d - r beta, c - beta.d + beta^2/2 r).
inline ChernCharacter twist(const ChernCharacter& v, const DivisorClass& beta, const SurfaceModel& m) {
  const Rational r(v.r);
  ChernCharacter t;
  t.r = v.r;
  t.d = v.d - r * beta;
  t.c = v.c - intersect(beta, v.d, m) + self_intersection(beta, m) / 2 * r;
  return t;
}

inline ChernCharacter class_of_point() { return ChernCharacter(0, DivisorClass{}, 1); }

/// i_* of a rank-r' sheaf of degree d' on a smooth rational curve C:
/// (0, r'[C], d' - C^2 r'/2).
inline ChernCharacter class_of_curve_sheaf(CurveId curve, const Integer& rank, const Integer& degree,
                                           const SurfaceModel& m) {
  const Rational c2 = -Rational(m.n(curve));  // throws on unknown curve
  return ChernCharacter(0, DivisorClass::curve(curve, Rational(rank)), Rational(degree) - c2 * Rational(rank) / 2);
}

/// i_* O_C(d) for a smooth rational curve C: (0, C, d - C^2/2).
inline ChernCharacter class_of_curve_bundle(CurveId curve, const Integer& degree, const SurfaceModel& m) {
  return class_of_curve_sheaf(curve, 1, degree, m);
}

namespace detail {

inline void require_subchain(const SurfaceModel& m, int component, int first, int last) {
  const auto& comp = m.component(component);
  if (first < 0 || last >= comp.size() || first > last)
    throw UsageError("curve range " + std::to_string(first + 1) + ".." + std::to_string(last + 1) +
                     " is outside component " + std::to_string(component + 1));
  for (int a = first; a < last; ++a)
    if (!comp.adjacent(a, a + 1))
      throw UsageError("curves " + std::to_string(a + 1) + " and " + std::to_string(a + 2) + " of component " +
                       std::to_string(component + 1) + " do not meet: range is not a connected chain");
}

}  // namespace detail

/// Fractional offset of the ch2 coset of line bundles on C_j u ... u C_j':
/// ch2 in Z + (1 - l + sum n_a / 2).
inline Rational chain_ch2_offset(const SurfaceModel& m, int component, int first, int last) {
  detail::require_subchain(m, component, first, last);
  Rational sum_n = 0;
  for (int a = first; a <= last; ++a) sum_n += m.n(CurveId{component, a});
  return Rational(1 - (last - first + 1)) + sum_n / 2;
}

/// Line bundle O(s_j, ..., s_j') on the chain C_j u ... u C_j' of one
/// component: (0, sum C_a, sum s_a + 1 - l - sum C_a^2 / 2).
inline ChernCharacter class_of_chain_bundle(int component, int first, int last, const std::vector<Integer>& degrees,
                                            const SurfaceModel& m) {
  detail::require_subchain(m, component, first, last);
  if (static_cast<int>(degrees.size()) != last - first + 1)
    throw UsageError("expected " + std::to_string(last - first + 1) + " degrees, got " +
                     std::to_string(degrees.size()));
  Integer total = 0;
  for (const auto& s : degrees) total += s;
  return ChernCharacter(0, m.subchain(component, first, last),
                        Rational(total) + chain_ch2_offset(m, component, first, last));
}

/// chi(O_{C_j..j'}(k_j, ..., k_j'), E) by Hirzebruch-Riemann-Roch:
/// -(C_j + ... + C_j').ch1(E) + (sum (k_a + n_a) - (2j' - 2j + 1)) ch0(E).
inline Rational hrr_chain_pairing(int component, int first, int last, const std::vector<Integer>& k,
                                  const ChernCharacter& e, const SurfaceModel& m) {
  detail::require_subchain(m, component, first, last);
  if (static_cast<int>(k.size()) != last - first + 1)
    throw UsageError("expected " + std::to_string(last - first + 1) + " k-values, got " + std::to_string(k.size()));
  Integer weight = 0;
  for (int a = first; a <= last; ++a) weight += k[a - first] + m.n(CurveId{component, a});
  weight -= 2 * (last - first) + 1;
  return -intersect(m.subchain(component, first, last), e.d, m) + Rational(weight * e.r);
}

/// "(r;D;c)" with D in divisor text form; no commas so it embeds in CSV.
inline std::string to_string(const ChernCharacter& v) {
  return "(" + v.r.str() + ";" + to_string(v.d) + ";" + to_string(v.c) + ")";
}

inline ChernCharacter parse_chern(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ConfigurationError("Chern character must look like (r;D;c), got '" + text + "'");
  t = t.substr(1, t.size() - 2);
  const auto p1 = t.find(';');
  const auto p2 = t.find(';', p1 == std::string::npos ? 0 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos || t.find(';', p2 + 1) != std::string::npos)
    throw ConfigurationError("Chern character must have three ';'-separated parts, got '" + text + "'");
  const Rational r = parse_rational(t.substr(0, p1));
  if (!is_integer(r)) throw ConfigurationError("ch0 must be an integer in '" + text + "'");
  return ChernCharacter(numerator_of(r), parse_divisor(t.substr(p1 + 1, p2 - p1 - 1)), parse_rational(t.substr(p2 + 1)));
}

}  // namespace chainstab
