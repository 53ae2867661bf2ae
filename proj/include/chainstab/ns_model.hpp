#pragma once

// Numerical model of NS(S)_Q as Q f*eta (+) span{C_ij}, where eta is the
// chosen ample class on T (eta^2 = V) and C_ij are the contracted curves.
// f*eta is orthogonal to every C_ij.

#include <cctype>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chainstab/errors.hpp"
#include "chainstab/exc_config.hpp"
#include "chainstab/linalg.hpp"
#include "chainstab/rational.hpp"

namespace chainstab {

/// Curve j of component i (both zero-based).
struct CurveId {
  int component = 0;
  int curve = 0;
  auto operator<=>(const CurveId&) const = default;
};

/// e * f*eta + sum a_ij C_ij with rational coefficients. Zero coefficients are
/// never stored, so structural equality is numerical equality of coefficients.
class DivisorClass {
 public:
  DivisorClass() = default;

  static DivisorClass pullback(Rational e) {
    DivisorClass d;
    d.e_ = std::move(e);
    return d;
  }
  static DivisorClass curve(CurveId id, Rational coefficient = 1) {
    DivisorClass d;
    d.set(id, std::move(coefficient));
    return d;
  }
  static DivisorClass from(Rational e, const std::map<CurveId, Rational>& a) {
    DivisorClass d = pullback(std::move(e));
    for (const auto& [id, x] : a) d.set(id, x);
    return d;
  }

  const Rational& pullback_coefficient() const { return e_; }
  const std::map<CurveId, Rational>& exceptional_coefficients() const { return a_; }

  Rational coefficient(CurveId id) const {
    auto it = a_.find(id);
    return it == a_.end() ? Rational(0) : it->second;
  }

  void set(CurveId id, Rational x) {
    if (x == 0)
      a_.erase(id);
    else
      a_[id] = std::move(x);
  }

  bool is_zero() const { return e_ == 0 && a_.empty(); }

  DivisorClass& operator+=(const DivisorClass& o) {
    e_ += o.e_;
    for (const auto& [id, x] : o.a_) set(id, coefficient(id) + x);
    return *this;
  }
  DivisorClass& operator-=(const DivisorClass& o) {
    e_ -= o.e_;
    for (const auto& [id, x] : o.a_) set(id, coefficient(id) - x);
    return *this;
  }
  DivisorClass& operator*=(const Rational& k) {
    if (k == 0) {
      e_ = 0;
      a_.clear();
      return *this;
    }
    e_ *= k;
    for (auto& [id, x] : a_) x *= k;
    return *this;
  }

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator-(DivisorClass a) { return a *= Rational(-1); }
  friend DivisorClass operator*(const Rational& k, DivisorClass a) { return a *= k; }
  friend DivisorClass operator*(DivisorClass a, const Rational& k) { return a *= k; }

  bool operator==(const DivisorClass&) const = default;

 private:
  Rational e_ = 0;
  std::map<CurveId, Rational> a_;
};

/// eta^2 together with the exceptional configuration. Immutable.
class SurfaceModel {
 public:
  SurfaceModel(Rational volume, std::vector<ExcComponent> components)
      : volume_(std::move(volume)), components_(std::move(components)) {
    if (volume_ <= 0) throw ConfigurationError("eta^2 must be positive, got " + to_string(volume_));
    for (std::size_t i = 0; i < components_.size(); ++i) {
      auto report = validate(components_[i]);
      if (!report.valid)
        throw ConfigurationError("component " + std::to_string(i + 1) + ": " + report.violation);
      for (int j = 0; j < components_[i].size(); ++j) {
        index_[CurveId{static_cast<int>(i), j}] = static_cast<int>(curves_.size());
        curves_.push_back(CurveId{static_cast<int>(i), j});
      }
    }
    gram_ = RationalMatrix(curves_.size(), curves_.size());
    std::size_t offset = 0;
    for (const auto& c : components_) {
      const auto g = c.gram();
      for (int a = 0; a < c.size(); ++a)
        for (int b = 0; b < c.size(); ++b) gram_(offset + a, offset + b) = g(a, b);
      offset += c.size();
    }
  }

  const Rational& volume() const { return volume_; }
  const std::vector<ExcComponent>& components() const { return components_; }
  const ExcComponent& component(int i) const {
    if (i < 0 || i >= static_cast<int>(components_.size()))
      throw ConfigurationError("unknown component " + std::to_string(i + 1));
    return components_[i];
  }
  const std::vector<CurveId>& curves() const { return curves_; }
  std::size_t curve_count() const { return curves_.size(); }
  const RationalMatrix& gram() const { return gram_; }

  bool contains(CurveId id) const { return index_.count(id) > 0; }

  int index(CurveId id) const {
    auto it = index_.find(id);
    if (it == index_.end())
      throw ConfigurationError("unknown curve (" + std::to_string(id.component + 1) + "," +
                               std::to_string(id.curve + 1) + ")");
    return it->second;
  }

  /// n_ij = -C_ij^2
  int n(CurveId id) const {
    index(id);
    return -components_[id.component].self_intersection(id.curve);
  }

  /// Coefficient vector of the exceptional part, indexed like curves().
  std::vector<Rational> exceptional_vector(const DivisorClass& x) const {
    std::vector<Rational> v(curves_.size());
    for (const auto& [id, a] : x.exceptional_coefficients()) v[index(id)] = a;
    return v;
  }

  DivisorClass from_exceptional_vector(const std::vector<Rational>& v, Rational e = 0) const {
    DivisorClass d = DivisorClass::pullback(std::move(e));
    for (std::size_t k = 0; k < v.size(); ++k) d.set(curves_[k], v[k]);
    return d;
  }

  /// Sum C_ij + ... + C_ij' of a subrange of component i.
  DivisorClass subchain(int component, int first, int last) const {
    DivisorClass d;
    for (int a = first; a <= last; ++a) d.set(CurveId{component, a}, 1);
    return d;
  }

 private:
  Rational volume_;
  std::vector<ExcComponent> components_;
  std::vector<CurveId> curves_;
  std::map<CurveId, int> index_;
  RationalMatrix gram_;
};

/// Mumford intersection product in the model: e_x e_y V + a_x^T G a_y.
inline Rational intersect(const DivisorClass& x, const DivisorClass& y, const SurfaceModel& m) {
  Rational s = x.pullback_coefficient() * y.pullback_coefficient() * m.volume();
  const auto& g = m.gram();
  for (const auto& [ix, ax] : x.exceptional_coefficients()) {
    const int p = m.index(ix);
    for (const auto& [iy, ay] : y.exceptional_coefficients()) {
      const int q = m.index(iy);
      if (g(p, q) != 0) s += ax * ay * g(p, q);
    }
  }
  return s;
}

inline Rational self_intersection(const DivisorClass& x, const SurfaceModel& m) { return intersect(x, x, m); }

/// x - f*f_* x: the part of x in the span of the contracted curves.
inline DivisorClass exceptional_part(const DivisorClass& x) {
  return DivisorClass::from(0, x.exceptional_coefficients());
}

/// f*f_* x: the pullback part of x.
inline DivisorClass pushforward_part(const DivisorClass& x) { return DivisorClass::pullback(x.pullback_coefficient()); }

/// Text form used in reports and CSV: "<e>*f*eta" followed by signed
/// "<|a|>*C<i>.<j>" terms (1-based), or "+0C" when the exceptional part is 0.
inline std::string to_string(const DivisorClass& d) {
  std::string s = to_string(d.pullback_coefficient()) + "*f*eta";
  if (d.exceptional_coefficients().empty()) return s + "+0C";
  for (const auto& [id, a] : d.exceptional_coefficients()) {
    s += a < 0 ? "-" : "+";
    s += to_string(abs_of(a)) + "*C" + std::to_string(id.component + 1) + "." + std::to_string(id.curve + 1);
  }
  return s;
}

/// Inverse of to_string(DivisorClass); also accepts a bare "f*eta" and
/// coefficients without "/q".
inline DivisorClass parse_divisor(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw ConfigurationError("empty divisor class");
  // split into signed terms
  std::vector<std::string> terms;
  std::string cur;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char ch = t[i];
    const bool sign_starts_term = (ch == '+' || ch == '-') && i > 0 && t[i - 1] != '*' && t[i - 1] != '/';
    if (sign_starts_term) {
      terms.push_back(cur);
      cur.clear();
    }
    cur += ch;
  }
  terms.push_back(cur);
  DivisorClass d;
  for (std::string term : terms) {
    Rational sgn = 1;
    if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
      if (term[0] == '-') sgn = -1;
      term.erase(0, 1);
    }
    if (term == "0C" || term == "0") continue;
    const auto eta_pos = term.find("f*eta");
    if (eta_pos != std::string::npos && eta_pos + 5 == term.size()) {
      std::string coef = term.substr(0, eta_pos);
      if (!coef.empty() && coef.back() == '*') coef.pop_back();
      const Rational e = coef.empty() ? Rational(1) : parse_rational(coef);
      d += DivisorClass::pullback(sgn * e);
      continue;
    }
    const auto c_pos = term.rfind('C');
    if (c_pos == std::string::npos) throw ConfigurationError("malformed divisor term '" + term + "' in '" + text + "'");
    std::string coef = term.substr(0, c_pos);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    const std::string idx = term.substr(c_pos + 1);
    const auto dot = idx.find('.');
    if (dot == std::string::npos) throw ConfigurationError("curve index must be <component>.<curve> in '" + text + "'");
    int comp = 0, curve = 0;
    try {
      comp = std::stoi(idx.substr(0, dot));
      curve = std::stoi(idx.substr(dot + 1));
    } catch (const std::logic_error&) {
      throw ConfigurationError("malformed curve index in '" + text + "'");
    }
    if (comp < 1 || curve < 1) throw ConfigurationError("curve indices are 1-based in '" + text + "'");
    const Rational a = coef.empty() ? Rational(1) : parse_rational(coef);
    d += DivisorClass::curve(CurveId{comp - 1, curve - 1}, sgn * a);
  }
  return d;
}

}  // namespace chainstab
