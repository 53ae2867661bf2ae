#pragma once

// Support-property constants for chain configurations, the quadratic forms
// Q0 and Q, negativity on the kernel of the central charge, and the explicit
// Chern-class bounds they rest on. Norms are sqrt(-x^2) on the exceptional
// span; every comparison involving a norm is done on squares or via the exact
// sign of a + b*sqrt(c).

#include <optional>
#include <string>
#include <vector>

#include "chainstab/charge.hpp"
#include "chainstab/chern.hpp"
#include "chainstab/errors.hpp"
#include "chainstab/genericity.hpp"
#include "chainstab/linalg.hpp"
#include "chainstab/ns_model.hpp"
#include "chainstab/rational.hpp"

namespace chainstab {

/// ||e f*eta + x||^2 = e^2 V - x^2 for x exceptional.
inline Rational exc_norm_sq(const DivisorClass& x, const SurfaceModel& m) {
  const Rational& e = x.pullback_coefficient();
  return e * e * m.volume() - self_intersection(exceptional_part(x), m);
}

struct SupportConstants {
  Integer M = 1;
  Rational A = 1;
  Rational delta_sq = 1;
  Rational N1 = 0;
  Rational N5 = 0;
  Rational P = 0;
  Rational L = 0;
  Integer N = 3;
  Rational eps = Rational(1, 27);
  Rational B = 1;
};

/// f*eta, and f*eta + theta_ij with theta_ij exceptional and
/// theta_ij . C_kl = 1 if (k,l) = (i,j), else 0.
inline std::vector<DivisorClass> default_cone_generators(const SurfaceModel& m) {
  std::vector<DivisorClass> gens{DivisorClass::pullback(1)};
  for (std::size_t k = 0; k < m.curve_count(); ++k) {
    std::vector<Rational> unit(m.curve_count());
    unit[k] = 1;
    gens.push_back(m.from_exceptional_vector(solve(m.gram(), unit), 1));
  }
  return gens;
}

namespace detail {

inline Integer gershgorin_m(const SurfaceModel& m) {
  const auto& g = m.gram();
  Rational worst = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) row += abs_of(g(i, j));
    worst = std::max(worst, row);
  }
  return std::max(Integer(1), ceil_sqrt(worst));
}

inline Rational cone_constant(const SurfaceModel& m, const std::vector<DivisorClass>& generators) {
  if (generators.empty()) throw UsageError("at least one cone generator is needed");
  const DivisorClass eta = DivisorClass::pullback(1);
  Rational worst = 0;
  for (const auto& g : generators) {
    const Rational deg = intersect(g, eta, m);
    if (deg <= 0) throw UsageError("cone generator " + to_string(g) + " has non-positive degree against f*eta");
    const DivisorClass h = (Rational(1) / deg) * g;
    worst = std::max(worst, exc_norm_sq(h, m));
    worst = std::max(worst, -self_intersection(h, m));
    for (const auto& id : m.curves()) {
      const Rational p = intersect(h, DivisorClass::curve(id), m);
      worst = std::max(worst, p * p);
    }
  }
  return std::max(Rational(1), m.volume() * worst);
}

/// Smallest squared gap, over subchains gamma, between beta.gamma and the
/// ch2 coset of line bundles on gamma, divided by -gamma^2.
inline Rational delta_squared(const DivisorClass& beta, const SurfaceModel& m) {
  std::optional<Rational> best;
  for (int i = 0; i < static_cast<int>(m.components().size()); ++i) {
    const int r = m.component(i).size();
    for (int j = 0; j < r; ++j)
      for (int jj = j; jj < r; ++jj) {
        const DivisorClass gamma = m.subchain(i, j, jj);
        const Rational up = frac_of(chain_ch2_offset(m, i, j, jj) - intersect(beta, gamma, m));
        if (up == 0) throw PreconditionError("beta.gamma lies in the ch2 coset of a subchain");
        const Rational gap = std::min(up, 1 - up);
        const Rational value = gap * gap / -self_intersection(gamma, m);
        if (!best || value < *best) best = value;
      }
  }
  if (!best) throw UsageError("configuration has no curves");
  return *best;
}

inline Rational pow(const Rational& x, int k) {
  Rational r = 1;
  for (int a = 0; a < k; ++a) r *= x;
  return r;
}

}  // namespace detail

/// N1, P, L, N5 of a chain configuration.
inline void fill_chain_sums(SupportConstants& c, const SurfaceModel& m) {
  c.N1 = c.N5 = c.L = 0;
  DivisorClass big;
  for (int i = 0; i < static_cast<int>(m.components().size()); ++i) {
    const int r = m.component(i).size();
    auto n = [&](int a) { return Rational(m.n(CurveId{i, a})); };
    for (int j = 0; j < r; ++j) {
      for (int a = j; a < r; ++a) {
        c.N1 += n(a) / 2;
        big += m.subchain(i, 0, a);
      }
      c.L += Rational((j + 1) * (j + 1));
      for (int jj = j; jj < r; ++jj) {
        Rational term = -Rational(jj + 1) + 1;
        for (int a = 0; a <= jj; ++a) term += n(a) / 2;
        c.N5 += term;
      }
    }
  }
  c.P = -self_intersection(big, m);
}

/// Smallest integer N with N >= 3, N1, N5, (delta P)^5 and (M / (2 delta))^5.
inline Integer choose_n(const SupportConstants& c) {
  Integer n = 3;
  n = std::max(n, ceil_of(c.N1));
  n = std::max(n, ceil_of(c.N5));
  n = std::max(n, ceil_sqrt(detail::pow(c.delta_sq, 5) * detail::pow(c.P, 10)));
  n = std::max(n, ceil_sqrt(detail::pow(Rational(c.M), 10) / (1024 * detail::pow(c.delta_sq, 5))));
  return n;
}

/// eps = 1/N^3 and B = A(1 + eps L^2 M^2) for the stored N.
inline void set_n(SupportConstants& c, const Integer& n) {
  if (n <= 0) throw UsageError("N must be positive");
  c.N = n;
  c.eps = Rational(1) / Rational(n * n * n);
  c.B = c.A * (1 + c.eps * c.L * c.L * Rational(c.M * c.M));
}

inline SupportConstants compute_constants(const DivisorClass& beta, const SurfaceModel& m,
                                          const std::vector<DivisorClass>& cone_generators) {
  require_chain_like(m, "support constants");
  if (m.curve_count() == 0) throw UsageError("configuration has no curves");
  const auto window = check_condition_5_2(beta, m);
  if (!window.passed)
    throw PreconditionError("beta violates the subchain window condition on component " +
                            std::to_string(window.violations.front().component + 1) + ", range " +
                            window.violations.front().range_text());
  SupportConstants c;
  c.M = detail::gershgorin_m(m);
  c.A = detail::cone_constant(m, cone_generators);
  c.delta_sq = detail::delta_squared(beta, m);
  fill_chain_sums(c, m);
  set_n(c, choose_n(c));
  return c;
}

inline SupportConstants compute_constants(const DivisorClass& beta, const SurfaceModel& m) {
  return compute_constants(beta, m, default_cone_generators(m));
}

/// Positivity of (1-eps)x^2 - (2 delta P/N + 2 eps)xy + (2 delta/(MN) - eps)y^2.
struct ClaimReport {
  bool passed = false;
  bool leading_positive = false;  // 1 - eps > 0
  int discriminant_sign = 0;      // sign of b^2 - 4ac
  int trailing_sign = 0;          // sign of 2 delta/(MN) - eps
  // discriminant = u + v * delta
  Rational u;
  Rational v;
};

inline ClaimReport verify_claim(const SupportConstants& c) {
  ClaimReport r;
  const Rational n(c.N);
  const Rational mn = Rational(c.M) * n;
  const Rational& e = c.eps;
  r.leading_positive = 1 - e > 0;
  r.u = 4 * c.delta_sq * c.P * c.P / (n * n) + 4 * e * e + 4 * e * (1 - e);
  r.v = 8 * c.P * e / n - 8 * (1 - e) / mn;
  r.discriminant_sign = sign_of_surd(r.u, r.v, c.delta_sq);
  r.trailing_sign = sign_of_surd(-e, 2 / mn, c.delta_sq);
  r.passed = r.leading_positive && r.discriminant_sign < 0;
  return r;
}

/// Which certificate factors differ between two claim reports.
inline std::vector<std::string> moved_factors(const ClaimReport& before, const ClaimReport& after) {
  std::vector<std::string> moved;
  if (before.leading_positive != after.leading_positive) moved.push_back("leading");
  if (before.discriminant_sign != after.discriminant_sign) moved.push_back("discriminant");
  if (before.trailing_sign != after.trailing_sign) moved.push_back("trailing");
  return moved;
}

/// (f_* x)^2 + eps (x - f^* f_* x)^2 - 2 ch0 ch2^beta + (B/V)(f*eta . x)^2,
/// x = ch1^beta.
inline Rational q0(const ChernCharacter& v, const DivisorClass& beta, const SupportConstants& c,
                   const SurfaceModel& m) {
  const auto t = twist(v, beta, m);
  const Rational& e = t.d.pullback_coefficient();
  const Rational pushed = e * e * m.volume();
  const Rational deg = e * m.volume();
  return pushed + c.eps * self_intersection(exceptional_part(t.d), m) - 2 * Rational(t.r) * t.c +
         c.B / m.volume() * deg * deg;
}

/// Q0 + (eps / delta^2) (Re Z_{beta, f*eta})^2.
inline Rational q_full(const ChernCharacter& v, const DivisorClass& beta, const SupportConstants& c,
                       const SurfaceModel& m) {
  const Rational re = central_charge(v, beta, DivisorClass::pullback(1), m).re;
  return q0(v, beta, c, m) + c.eps / c.delta_sq * re * re;
}

struct QuadraticFormReport {
  std::vector<ChernCharacter> basis;
  RationalMatrix gram;
  std::vector<Rational> minors;
  bool negative_definite = false;
};

enum class FormChoice { Q0, Q };

/// Restricts Q0 or Q to ker Z_{beta, s f*eta} and certifies negativity by
/// alternating leading minors. The kernel is spanned, in twisted
/// coordinates, by (1, 0, s^2 V/2) and (0, C_ij, 0).
inline QuadraticFormReport kernel_negdef(const DivisorClass& beta, const SupportConstants& c, const SurfaceModel& m,
                                         const Rational& s, FormChoice form = FormChoice::Q) {
  if (s <= 0) throw PreconditionError("kernel check needs s > 0, got " + to_string(s));
  const DivisorClass minus_beta = -beta;
  QuadraticFormReport rep;
  rep.basis.push_back(twist(ChernCharacter(1, DivisorClass{}, s * s * m.volume() / 2), minus_beta, m));
  for (const auto& id : m.curves()) rep.basis.push_back(twist(ChernCharacter(0, DivisorClass::curve(id), 0), minus_beta, m));

  const RayParams ray(beta, s);
  for (const auto& b : rep.basis)
    if (!ray_charge(b, ray, m).is_zero()) throw InternalError("kernel basis vector has nonzero charge");

  auto q = [&](const ChernCharacter& v) { return form == FormChoice::Q ? q_full(v, beta, c, m) : q0(v, beta, c, m); };
  const std::size_t n = rep.basis.size();
  rep.gram = RationalMatrix(n, n);
  for (std::size_t a = 0; a < n; ++a) rep.gram(a, a) = q(rep.basis[a]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Rational x = (q(rep.basis[a] + rep.basis[b]) - rep.gram(a, a) - rep.gram(b, b)) / 2;
      rep.gram(a, b) = rep.gram(b, a) = x;
    }
  rep.minors = leading_principal_minors(rep.gram);
  rep.negative_definite = minors_certify_negative_definite(rep.minors);
  return rep;
}

enum class TorsionSide { Ttors, Ftors, Unknown };

inline const char* to_string(TorsionSide t) {
  switch (t) {
    case TorsionSide::Ttors: return "Ttors";
    case TorsionSide::Ftors: return "Ftors";
    case TorsionSide::Unknown: return "Unknown";
  }
  return "?";
}

/// Side of O_{C_j..j'}(s_j, ..., s_j'): Ftors if s <= k with one strict
/// inequality, Ttors if s = k; a single curve also splits at
/// d = beta.C + C^2/2.
inline TorsionSide classify_chain_line_bundle(int component, int first, int last, const std::vector<Integer>& degrees,
                                              const DivisorClass& beta, const SurfaceModel& m) {
  detail::require_subchain(m, component, first, last);
  if (static_cast<int>(degrees.size()) != last - first + 1)
    throw UsageError("expected " + std::to_string(last - first + 1) + " degrees, got " +
                     std::to_string(degrees.size()));
  const auto window = check_condition_5_2(beta, m);
  if (!window.passed) throw PreconditionError("beta violates the subchain window condition");
  bool all_le = true, all_eq = true;
  for (int a = first; a <= last; ++a) {
    const Integer& k = window.k.at(CurveId{component, a});
    const Integer& s = degrees[a - first];
    all_le = all_le && s <= k;
    all_eq = all_eq && s == k;
  }
  if (all_eq) return TorsionSide::Ttors;
  if (all_le) return TorsionSide::Ftors;
  if (first == last) {
    const CurveId id{component, first};
    const Rational threshold = intersect(beta, DivisorClass::curve(id), m) - Rational(m.n(id)) / 2;
    const Rational d(degrees.front());
    if (d > threshold) return TorsionSide::Ttors;
    if (d < threshold) return TorsionSide::Ftors;
  }
  return TorsionSide::Unknown;
}

/// Data of the bounded objects: ch0 r, the exceptional ch1 parts b (torsion)
/// and a (twisted torsion-free part), and Gamma . f*eta.
struct Decomposition {
  Integer r = 0;
  DivisorClass b;
  DivisorClass a;
  Rational gamma_eta = 0;
};

enum class BoundCase { F1, F2, F5 };

struct BoundCheck {
  bool holds = false;
  Rational lhs_sq;  // ||b||^2
  std::string rhs;  // right-hand side in text form
};

/// ||b|| <= PM||a|| + rMN1 (F1), <= LM sqrt(A/V) (f*eta.ch1) (F2),
/// <= PM||a|| + rMN5 (F5).
inline BoundCheck check_bound(BoundCase which, const Decomposition& d, const SupportConstants& c,
                              const SurfaceModel& m) {
  if (d.b.pullback_coefficient() != 0 || d.a.pullback_coefficient() != 0)
    throw UsageError("bound check: b and a must be exceptional classes");
  BoundCheck out;
  out.lhs_sq = exc_norm_sq(d.b, m);
  const Rational mm(c.M);
  if (which == BoundCase::F2) {
    if (d.r != 0) throw UsageError("bound check (F2): ch0 must be 0");
    if (d.gamma_eta < 0) throw UsageError("bound check (F2): Gamma . f*eta must be non-negative");
    const Rational rhs_sq = c.L * c.L * mm * mm * c.A / m.volume() * d.gamma_eta * d.gamma_eta;
    out.holds = out.lhs_sq <= rhs_sq;
    out.rhs = "sqrt(" + to_string(rhs_sq) + ")";
    return out;
  }
  if (d.r <= 0) throw UsageError("bound check: ch0 must be positive");
  const Rational k = Rational(d.r) * mm * (which == BoundCase::F1 ? c.N1 : c.N5);
  const Rational a_sq = exc_norm_sq(d.a, m);
  const Rational pm = c.P * mm;
  // (pm sqrt(a_sq) + k)^2 - lhs_sq >= 0
  out.holds = sign_of_surd(pm * pm * a_sq + k * k - out.lhs_sq, 2 * pm * k, a_sq) >= 0;
  out.rhs = to_string(pm) + "*sqrt(" + to_string(a_sq) + ")+" + to_string(k);
  return out;
}

/// The Hom-bound inequality on C_j..C_j' evaluated for a class E:
/// HRR pairing <= h0 + b_j + sum (n_a - 2)(h0 + b_a), and with b_j' in place
/// of b_j.
struct HomBound {
  Rational lhs;
  Rational rhs_first;
  Rational rhs_last;
  bool holds = false;
};

inline HomBound hom_bound(int component, int first, int last, const ChernCharacter& e, const Integer& h0_rank,
                          const DivisorClass& b, const DivisorClass& beta, const SurfaceModel& m) {
  const auto window = check_condition_5_2(beta, m);
  if (!window.passed) throw PreconditionError("beta violates the subchain window condition");
  std::vector<Integer> k;
  detail::require_subchain(m, component, first, last);
  for (int a = first; a <= last; ++a) k.push_back(window.k.at(CurveId{component, a}));
  HomBound out;
  out.lhs = hrr_chain_pairing(component, first, last, k, e, m);
  const Rational h0(h0_rank);
  Rational tail = 0;
  for (int a = first; a <= last; ++a) {
    const CurveId id{component, a};
    tail += Rational(m.n(id) - 2) * (h0 + b.coefficient(id));
  }
  out.rhs_first = h0 + b.coefficient(CurveId{component, first}) + tail;
  out.rhs_last = h0 + b.coefficient(CurveId{component, last}) + tail;
  out.holds = out.lhs <= out.rhs_first && out.lhs <= out.rhs_last;
  return out;
}

}  // namespace chainstab
