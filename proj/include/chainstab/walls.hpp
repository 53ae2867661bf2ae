#pragma once

// Potential walls along the ray omega = s f*eta: enumeration of destabilizing
// classes in a finite box, exact wall solving, and the geometric-chamber
// quadratic form.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chainstab/charge.hpp"
#include "chainstab/chern.hpp"
#include "chainstab/errors.hpp"
#include "chainstab/ns_model.hpp"
#include "chainstab/rational.hpp"

namespace chainstab {

/// |ch0| <= rank_bound; every ch1 coefficient is p / ch1_denominator with
/// |p / ch1_denominator| <= ch1_bound; ch2 in (1/2)Z with |ch2| <= ch2_bound.
struct SearchBox {
  Integer rank_bound = 2;
  Integer ch1_bound = 2;
  Integer ch1_denominator = 1;
  Rational ch2_bound = 2;

  void check() const {
    if (rank_bound < 0 || ch1_bound < 0 || ch2_bound < 0) throw UsageError("search box bounds must be non-negative");
    if (ch1_denominator <= 0) throw UsageError("search box ch1 denominator must be positive");
    if (rank_bound == 0 && ch1_bound == 0 && ch2_bound < Rational(1, 2))
      throw UsageError("search box contains no nonzero class");
  }

  std::string describe() const {
    return "|ch0|<=" + rank_bound.str() + " |ch1 coeff|<=" + ch1_bound.str() + " (step 1/" +
           ch1_denominator.str() + ") |ch2|<=" + to_string(ch2_bound) + " (step 1/2)";
  }
};

/// Calls f on every class in the box, in a fixed order.
template <class F>
void for_each_in_box(const SearchBox& box, const SurfaceModel& m, F&& f) {
  box.check();
  const std::size_t dims = m.curve_count() + 1;  // f*eta coefficient, then curves
  const Integer span = box.ch1_bound * box.ch1_denominator;
  const Integer half_steps = floor_of(2 * box.ch2_bound);
  std::vector<Integer> num(dims, -span);
  for (Integer r = -box.rank_bound; r <= box.rank_bound; ++r) {
    std::fill(num.begin(), num.end(), -span);
    for (;;) {
      DivisorClass d = DivisorClass::pullback(make_rational(num[0], box.ch1_denominator));
      for (std::size_t k = 1; k < dims; ++k) d.set(m.curves()[k - 1], make_rational(num[k], box.ch1_denominator));
      for (Integer h = -half_steps; h <= half_steps; ++h) f(ChernCharacter(r, d, make_rational(h, 2)));
      std::size_t k = dims;
      while (k > 0 && num[k - 1] == span) num[--k] = -span;
      if (k == 0) break;
      num[k - 1] += 1;
    }
  }
}

/// Classes w in the box with w != 0, v, weak BG for w, and
/// 0 <= f*eta.ch1^beta(w) <= f*eta.ch1^beta(v). Strict mode also asks
/// weak BG for v - w.
inline std::vector<ChernCharacter> enumerate_destabilizers(const ChernCharacter& v, const DivisorClass& beta,
                                                           const SurfaceModel& m, const SearchBox& box,
                                                           bool strict = false) {
  const Rational mv = eta_degree(v, beta, m);
  if (mv < 0) throw PreconditionError("destabilizer search needs Im Z(v) >= 0");
  std::vector<ChernCharacter> out;
  for_each_in_box(box, m, [&](const ChernCharacter& w) {
    if (w.is_zero() || w == v) return;
    const Rational mw = eta_degree(w, beta, m);
    if (mw < 0 || mw > mv) return;
    if (!weak_bg_holds(w, beta, m)) return;
    if (strict && !weak_bg_holds(v - w, beta, m)) return;
    out.push_back(w);
  });
  return out;
}

enum class WallStatus { Proper, Always, Never };

inline const char* to_string(WallStatus s) {
  switch (s) {
    case WallStatus::Proper: return "proper";
    case WallStatus::Always: return "always";
    case WallStatus::Never: return "never";
  }
  return "?";
}

struct Wall {
  ChernCharacter w;
  WallStatus status = WallStatus::Never;
  Rational s_sq = 0;  // meaningful when status == Proper
};

/// Phase equality Re_s(w) Im_s(v) = Re_s(v) Im_s(w) along Z_{beta, s f*eta}:
/// s^2 = 2(c_w m_v - c_v m_w) / (V(r_w m_v - r_v m_w)).
inline Wall solve_wall(const ChernCharacter& v, const ChernCharacter& w, const DivisorClass& beta,
                       const SurfaceModel& m) {
  const auto tv = twist(v, beta, m);
  const auto tw = twist(w, beta, m);
  const Rational mv = eta_degree(v, beta, m);
  const Rational mw = eta_degree(w, beta, m);
  const Rational num = 2 * (tw.c * mv - tv.c * mw);
  const Rational den = m.volume() * (Rational(tw.r) * mv - Rational(tv.r) * mw);
  Wall wall{w, WallStatus::Never, 0};
  if (den == 0) {
    if (num == 0) wall.status = WallStatus::Always;
    return wall;
  }
  const Rational s_sq = num / den;
  if (s_sq > 0) {
    wall.status = WallStatus::Proper;
    wall.s_sq = s_sq;
  }
  return wall;
}

/// lo < s <= hi.
struct SRange {
  Rational lo = 0;
  Rational hi = 4;

  bool empty() const { return lo >= hi; }
  bool contains_sq(const Rational& s_sq) const { return lo * lo < s_sq && s_sq <= hi * hi; }
};

/// Parses "a/b..c/d".
inline SRange parse_s_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("s-range must look like a/b..c/d, got '" + text + "'");
  SRange r;
  try {
    r.lo = parse_rational(text.substr(0, dots));
    r.hi = parse_rational(text.substr(dots + 2));
  } catch (const ConfigurationError& e) {
    throw UsageError(e.what());
  }
  if (r.lo < 0) throw UsageError("s-range must be positive");
  return r;
}

struct WallEntry {
  Rational s_sq;
  ChernCharacter representative;
  std::size_t multiplicity = 0;
};

struct WallScan {
  bool degenerate = false;  // Im Z(v) = 0: phase 1 along the whole ray
  std::vector<WallEntry> walls;
};

/// Canonical order for the representative of a wall: small |ch0| first,
/// positive ch0 before negative, small L1 norm of ch1, then lexicographic.
inline bool representative_before(const ChernCharacter& x, const ChernCharacter& y) {
  const Integer ax = abs(x.r), ay = abs(y.r);
  if (ax != ay) return ax < ay;
  if (x.r != y.r) return x.r > y.r;
  auto coeffs = [](const ChernCharacter& v) {
    std::vector<Rational> c{v.d.pullback_coefficient()};
    for (const auto& [id, a] : v.d.exceptional_coefficients()) c.push_back(a);
    return c;
  };
  auto l1 = [&](const ChernCharacter& v) {
    Rational s = 0;
    for (const auto& a : coeffs(v)) s += abs_of(a);
    return s;
  };
  const Rational lx = l1(x), ly = l1(y);
  if (lx != ly) return lx < ly;
  if (x.d.pullback_coefficient() != y.d.pullback_coefficient())
    return x.d.pullback_coefficient() < y.d.pullback_coefficient();
  std::set<CurveId> keys;
  for (const auto& [id, a] : x.d.exceptional_coefficients()) keys.insert(id);
  for (const auto& [id, a] : y.d.exceptional_coefficients()) keys.insert(id);
  for (const auto& id : keys)
    if (x.d.coefficient(id) != y.d.coefficient(id)) return x.d.coefficient(id) < y.d.coefficient(id);
  return x.c < y.c;
}

inline WallScan wall_scan(const ChernCharacter& v, const DivisorClass& beta, const SurfaceModel& m,
                          const SearchBox& box, const SRange& range, bool strict = false) {
  WallScan scan;
  const Rational mv = eta_degree(v, beta, m);
  if (mv < 0) throw PreconditionError("wall scan needs Im Z(v) >= 0");
  box.check();
  if (mv == 0) {
    scan.degenerate = true;
    return scan;
  }
  if (range.empty()) return scan;
  std::map<Rational, WallEntry> by_s;
  for (const auto& w : enumerate_destabilizers(v, beta, m, box, strict)) {
    const Wall wall = solve_wall(v, w, beta, m);
    if (wall.status != WallStatus::Proper || !range.contains_sq(wall.s_sq)) continue;
    auto [it, fresh] = by_s.try_emplace(wall.s_sq, WallEntry{wall.s_sq, w, 0});
    if (!fresh && representative_before(w, it->second.representative)) it->second.representative = w;
    it->second.multiplicity += 1;
  }
  for (auto& [s, entry] : by_s) scan.walls.push_back(std::move(entry));
  return scan;
}

/// ch1^beta^2 - 2 ch0 ch2 + (C_omega / omega^2)(ch1^beta . omega)^2, with the
/// untwisted ch2 as written in the geometric-chamber form.
inline Rational geometric_chamber_q(const ChernCharacter& v, const DivisorClass& beta, const DivisorClass& omega,
                                    const Rational& c_omega, const SurfaceModel& m) {
  const Rational w2 = self_intersection(omega, m);
  if (w2 <= 0) throw UsageError("geometric chamber form needs omega^2 > 0");
  if (c_omega <= 0) throw UsageError("C_omega must be positive");
  const DivisorClass x = v.d - Rational(v.r) * beta;
  const Rational deg = intersect(x, omega, m);
  return self_intersection(x, m) - 2 * Rational(v.r) * v.c + c_omega / w2 * deg * deg;
}

/// Test classes D with (C_omega / omega^2)(omega.D)^2 + D^2 < 0.
inline std::vector<DivisorClass> c_omega_violations(const DivisorClass& omega, const Rational& c_omega,
                                                    const std::vector<DivisorClass>& effective,
                                                    const SurfaceModel& m) {
  const Rational w2 = self_intersection(omega, m);
  if (w2 <= 0) throw UsageError("geometric chamber form needs omega^2 > 0");
  std::vector<DivisorClass> bad;
  for (const auto& d : effective) {
    const Rational deg = intersect(omega, d, m);
    if (c_omega / w2 * deg * deg + self_intersection(d, m) < 0) bad.push_back(d);
  }
  return bad;
}

}  // namespace chainstab
