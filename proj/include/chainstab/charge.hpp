#pragma once

// Central charges Z_{beta,omega}, the ray Z_{beta, s f*eta}, slopes and the
// weak Bogomolov-Gieseker filter. Phases are never computed as angles; they
// are compared by cross-multiplication.

#include <compare>
#include <optional>
#include <string>

#include "chainstab/chern.hpp"
#include "chainstab/errors.hpp"
#include "chainstab/ns_model.hpp"
#include "chainstab/rational.hpp"

namespace chainstab {

enum class Quadrant { Origin, PositiveReal, UpperHalf, NegativeReal, LowerHalf };

inline const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::Origin: return "origin";
    case Quadrant::PositiveReal: return "positive-real";
    case Quadrant::UpperHalf: return "upper-half";
    case Quadrant::NegativeReal: return "negative-real";
    case Quadrant::LowerHalf: return "lower-half";
  }
  return "?";
}

struct ChargeValue {
  Rational re = 0;
  Rational im = 0;

  bool operator==(const ChargeValue&) const = default;
  bool is_zero() const { return re == 0 && im == 0; }

  Quadrant quadrant() const {
    if (im > 0) return Quadrant::UpperHalf;
    if (im < 0) return Quadrant::LowerHalf;
    if (re > 0) return Quadrant::PositiveReal;
    if (re < 0) return Quadrant::NegativeReal;
    return Quadrant::Origin;
  }

  /// Phase in (0, 1]: upper half plane or the negative real axis.
  bool in_semi_closed_upper_half() const { return im > 0 || (im == 0 && re < 0); }
};

/// Compares phases of two charges in the semi-closed upper half plane.
inline std::strong_ordering compare_phase(const ChargeValue& a, const ChargeValue& b) {
  if (!a.in_semi_closed_upper_half() || !b.in_semi_closed_upper_half())
    throw UsageError("compare_phase: charge outside the semi-closed upper half plane");
  // b is counter-clockwise from a (larger phase) iff a x b > 0
  const Rational cross = a.re * b.im - a.im * b.re;
  if (cross > 0) return std::strong_ordering::less;
  if (cross < 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

/// Point on the ray omega = s f*eta.
struct RayParams {
  DivisorClass beta;
  Rational s;

  RayParams(DivisorClass b, Rational scale) : beta(std::move(b)), s(std::move(scale)) {
    if (s <= 0) throw UsageError("ray parameter s must be positive, got " + to_string(s));
  }
};

/// Z = -ch2^beta + omega^2/2 ch0 + i omega.ch1^beta.
inline ChargeValue central_charge(const ChernCharacter& v, const DivisorClass& beta, const DivisorClass& omega,
                                  const SurfaceModel& m) {
  const auto t = twist(v, beta, m);
  return ChargeValue{-t.c + self_intersection(omega, m) / 2 * Rational(t.r), intersect(omega, t.d, m)};
}

/// f*eta . ch1^beta(v), the imaginary part at s = 1.
inline Rational eta_degree(const ChernCharacter& v, const DivisorClass& beta, const SurfaceModel& m) {
  return intersect(DivisorClass::pullback(1), v.d - Rational(v.r) * beta, m);
}

/// Z_{beta, s f*eta}: re = -ch2^beta + s^2 V/2 ch0, im = s (f*eta . ch1^beta).
inline ChargeValue ray_charge(const ChernCharacter& v, const RayParams& p, const SurfaceModel& m) {
  const auto t = twist(v, p.beta, m);
  return ChargeValue{-t.c + p.s * p.s * m.volume() / 2 * Rational(t.r),
                     p.s * intersect(DivisorClass::pullback(1), t.d, m)};
}

/// (ch1^beta . f*eta)^2 >= 2 eta^2 ch0 ch2^beta.
inline bool weak_bg_holds(const ChernCharacter& v, const DivisorClass& beta, const SurfaceModel& m) {
  const auto t = twist(v, beta, m);
  const Rational deg = intersect(DivisorClass::pullback(1), t.d, m);
  return deg * deg >= 2 * m.volume() * Rational(t.r) * t.c;
}

/// Slopes of a class; nullopt stands for +infinity.
struct Slopes {
  std::optional<Rational> mu;      // omega.ch1 / ch0
  std::optional<Rational> lambda;  // (ch2 - beta.ch1) / (omega.ch1)
  std::optional<Rational> psi;     // -Re Z / Im Z
};

inline Slopes slopes(const ChernCharacter& v, const DivisorClass& beta, const DivisorClass& omega,
                     const SurfaceModel& m) {
  Slopes s;
  const Rational omega_d = intersect(omega, v.d, m);
  if (v.r != 0) s.mu = omega_d / Rational(v.r);
  if (omega_d != 0) s.lambda = (v.c - intersect(beta, v.d, m)) / omega_d;
  const auto z = central_charge(v, beta, omega, m);
  if (z.im != 0) s.psi = -z.re / z.im;
  return s;
}

/// Slopes with omega = s f*eta (psi is then the psi_s of the ray).
inline Slopes slopes(const ChernCharacter& v, const RayParams& p, const SurfaceModel& m) {
  return slopes(v, p.beta, DivisorClass::pullback(p.s), m);
}

/// Leading term -(s eta^2 / 2)(mu_{f*eta} - beta.f*eta)^{-1} of psi_s as
/// s -> infinity; nullopt when ch0 = 0 or the bracket vanishes.
inline std::optional<Rational> psi_leading_term(const ChernCharacter& v, const RayParams& p, const SurfaceModel& m) {
  if (v.r == 0) return std::nullopt;
  const DivisorClass eta = DivisorClass::pullback(1);
  const Rational bracket = intersect(eta, v.d, m) / Rational(v.r) - intersect(p.beta, eta, m);
  if (bracket == 0) return std::nullopt;
  return -(p.s * m.volume() / 2) / bracket;
}

inline std::string to_string(const ChargeValue& z) { return to_string(z.re) + (z.im < 0 ? "" : "+") + to_string(z.im) + "i"; }

}  // namespace chainstab
