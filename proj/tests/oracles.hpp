#pragma once

// Reference computations used to cross-check the library. None of them call
// the routine they check; they work from raw self-intersections and edges.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "chainstab/chainstab.hpp"

namespace oracle {

using chainstab::ChernCharacter;
using chainstab::CurveId;
using chainstab::DivisorClass;
using chainstab::Integer;
using chainstab::Rational;
using chainstab::SurfaceModel;

/// Integer Cartan-style matrix -G of a component, rebuilt from its data.
inline std::vector<std::vector<int>> negative_gram(const chainstab::ExcComponent& c) {
  const int n = c.size();
  std::vector<std::vector<int>> h(n, std::vector<int>(n, 0));
  for (int j = 0; j < n; ++j) h[j][j] = -c.self_intersection(j);
  for (const auto& [a, b] : c.edges()) h[a][b] = h[b][a] = -1;
  return h;
}

/// All roots reachable from the simple roots by the reflections
/// s_i(x) = x - (x, a_i) a_i with (x, y) = x^T (-G) y.
inline std::set<std::vector<int>> reflection_closure(const chainstab::ExcComponent& c) {
  const auto h = negative_gram(c);
  const int n = c.size();
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    seen.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& x : frontier)
      for (int i = 0; i < n; ++i) {
        int pair = 0;
        for (int j = 0; j < n; ++j) pair += x[j] * h[j][i];
        std::vector<int> y = x;
        y[i] -= pair;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline std::set<std::vector<int>> positive_roots_by_reflection(const chainstab::ExcComponent& c) {
  std::set<std::vector<int>> pos;
  for (const auto& r : reflection_closure(c))
    if (std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; })) pos.insert(r);
  return pos;
}

/// Highest root: the positive root of maximal height.
inline std::vector<int> highest_root(const chainstab::ExcComponent& c) {
  std::vector<int> best;
  int best_h = -1;
  for (const auto& r : positive_roots_by_reflection(c)) {
    int h = 0;
    for (int x : r) h += x;
    if (h > best_h) {
      best_h = h;
      best = r;
    }
  }
  return best;
}

/// Dense Gram matrix over all curves, in model curve order, from raw data.
inline std::vector<std::vector<Rational>> dense_gram(const SurfaceModel& m) {
  std::vector<std::vector<Rational>> g(m.curve_count(), std::vector<Rational>(m.curve_count()));
  std::size_t off = 0;
  for (const auto& c : m.components()) {
    for (int j = 0; j < c.size(); ++j) g[off + j][off + j] = c.self_intersection(j);
    for (const auto& [a, b] : c.edges()) g[off + a][off + b] = g[off + b][off + a] = 1;
    off += c.size();
  }
  return g;
}

/// x.y computed from dense coefficient vectors.
inline Rational dot(const SurfaceModel& m, const DivisorClass& x, const DivisorClass& y) {
  const auto g = dense_gram(m);
  Rational s = x.pullback_coefficient() * y.pullback_coefficient() * m.volume();
  for (std::size_t p = 0; p < m.curve_count(); ++p)
    for (std::size_t q = 0; q < m.curve_count(); ++q)
      s += x.coefficient(m.curves()[p]) * y.coefficient(m.curves()[q]) * g[p][q];
  return s;
}

/// K.C_a = n_a - 2 for a smooth rational curve (adjunction).
inline Rational canonical_degree(const SurfaceModel& m, const DivisorClass& gamma) {
  Rational s = 0;
  for (const auto& [id, a] : gamma.exceptional_coefficients()) s += a * Rational(m.n(id) - 2);
  return s;
}

/// ch2 of a line bundle with total degree d on a reduced chain gamma of
/// rational curves: chi = d + 1 and chi = ch2 - K.gamma/2.
inline Rational chain_bundle_ch2(const SurfaceModel& m, const DivisorClass& gamma, const Integer& total_degree) {
  return Rational(total_degree + 1) + canonical_degree(m, gamma) / 2;
}

/// chi(F, E) = integral of ch(F)^dual ch(E) td(S) with td = (1, -K/2, chi(O)).
/// F is a rank-0 class (0, gamma, c_F) with gamma exceptional.
inline Rational euler_pairing_torsion(const SurfaceModel& m, const DivisorClass& gamma, const Rational& c_f,
                                      const ChernCharacter& e) {
  // ch(F)^dual = (0, -gamma, c_F); degree-2 part of ch(F)^dual ch(E) td:
  //   c_F r_E + (-gamma).D_E + (-gamma r_E).(-K/2)
  return c_f * Rational(e.r) - dot(m, gamma, e.d) + Rational(e.r) * canonical_degree(m, gamma) / 2;
}

/// h(t) = (Re_s(w) Im_s(v) - Re_s(v) Im_s(w)) / s at t = s^2, evaluated
/// through central_charge with omega = s f*eta.
inline Rational phase_gap(const ChernCharacter& v, const ChernCharacter& w, const DivisorClass& beta,
                          const SurfaceModel& m, const Rational& s) {
  const DivisorClass omega = DivisorClass::pullback(s);
  const auto zv = chainstab::central_charge(v, beta, omega, m);
  const auto zw = chainstab::central_charge(w, beta, omega, m);
  return (zw.re * zv.im - zv.re * zw.im) / s;
}

/// Roots in t = s^2 of the phase gap on the dyadic grid s = k/2^bits in
/// (0, hi], located by sign changes and refined exactly (h is affine in t).
/// An identically vanishing gap yields no roots.
inline std::vector<Rational> grid_walls(const ChernCharacter& v, const ChernCharacter& w, const DivisorClass& beta,
                                        const SurfaceModel& m, const Rational& hi, int bits = 10) {
  const Rational step = Rational(1) / Rational(Integer(1) << bits);
  std::vector<std::pair<Rational, Rational>> samples;  // (t, h)
  for (Rational s = step; s <= hi; s += step) samples.push_back({s * s, phase_gap(v, w, beta, m, s)});
  std::vector<Rational> roots;
  if (samples.size() < 2) return roots;
  const auto& [t1, h1] = samples[0];
  const auto& [t2, h2] = samples[1];
  const Rational slope = (h2 - h1) / (t2 - t1);
  const Rational h0 = h1 - slope * t1;
  if (slope == 0 && h0 == 0) return roots;
  // below the first grid point
  if (h0 != 0 && h1 != 0 && (h0 > 0) != (h1 > 0)) roots.push_back(t1 - h1 / slope);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [t, h] = samples[i];
    if (h == 0) {
      roots.push_back(t);
      continue;
    }
    if (i + 1 < samples.size()) {
      const auto& [tn, hn] = samples[i + 1];
      if (hn != 0 && (h > 0) != (hn > 0)) roots.push_back(t - h * (tn - t) / (hn - h));
    }
  }
  return roots;
}

inline Rational random_rational(std::mt19937_64& rng, int num_bound, int den_bound) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  return Rational(num(rng)) / Rational(den(rng));
}

inline DivisorClass random_divisor(std::mt19937_64& rng, const SurfaceModel& m, int num_bound = 6,
                                   int den_bound = 8) {
  DivisorClass d = DivisorClass::pullback(random_rational(rng, num_bound, den_bound));
  for (const auto& id : m.curves()) d.set(id, random_rational(rng, num_bound, den_bound));
  return d;
}

inline ChernCharacter random_class(std::mt19937_64& rng, const SurfaceModel& m) {
  std::uniform_int_distribution<int> rank(-3, 3);
  return ChernCharacter(rank(rng), random_divisor(rng, m), random_rational(rng, 12, 4));
}

}  // namespace oracle
