#pragma once

// Genericity of the twist beta: the non-integrality condition over connected
// curve subsets, the integer windows k_ij, the stronger chain condition used
// for the support property, a witness beta satisfying both, and the
// brute-force search for classes of vanishing central charge.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chainstab/charge.hpp"
#include "chainstab/chern.hpp"
#include "chainstab/errors.hpp"
#include "chainstab/exc_config.hpp"
#include "chainstab/linalg.hpp"
#include "chainstab/ns_model.hpp"
#include "chainstab/rational.hpp"

namespace chainstab {

using KTable = std::map<CurveId, Integer>;

struct GenericityViolation {
  int component = 0;        // zero-based
  std::vector<int> curves;  // zero-based, sorted
  Rational value;

  /// "j..j'" (1-based) for an interval, otherwise a comma list.
  std::string range_text() const {
    bool interval = !curves.empty();
    for (std::size_t a = 1; a < curves.size(); ++a) interval = interval && curves[a] == curves[a - 1] + 1;
    if (interval) return std::to_string(curves.front() + 1) + ".." + std::to_string(curves.back() + 1);
    std::string s;
    for (std::size_t a = 0; a < curves.size(); ++a) s += (a ? "," : "") + std::to_string(curves[a] + 1);
    return s;
  }
};

struct GenericityReport {
  bool passed = true;
  KTable k;
  std::vector<GenericityViolation> violations;
};

/// A chain component, or an A_n component (a chain of (-2)-curves).
inline bool is_chain_like(const ExcComponent& c) {
  return c.kind() == ComponentKind::Chain || is_path_in_order(c);
}

/// True when the induced subgraph on `subset` is a path.
inline bool is_chain_shaped(const ExcComponent& c, const std::vector<int>& subset) {
  for (int v : subset) {
    int deg = 0;
    for (int w : subset)
      if (w != v && c.adjacent(v, w)) ++deg;
    if (deg > 2) return false;
  }
  return true;
}

/// Multiplicities delta used by the non-integrality condition on a connected
/// subset: all 1 on chain-shaped subsets, the subset's fundamental cycle
/// otherwise.
inline std::vector<int> subset_multiplicities(const ExcComponent& c, const std::vector<int>& subset) {
  if (is_chain_shaped(c, subset)) return std::vector<int>(subset.size(), 1);
  return fundamental_cycle_of_subset(c, subset);
}

inline DivisorClass subset_class(int component, const std::vector<int>& subset, const std::vector<int>& mult) {
  DivisorClass d;
  for (std::size_t a = 0; a < subset.size(); ++a) d.set(CurveId{component, subset[a]}, Rational(mult[a]));
  return d;
}

/// beta.(sum delta C) + (sum C^2)/2 must avoid Z on every connected subset.
inline GenericityReport check_condition_4_2(const DivisorClass& beta, const SurfaceModel& m) {
  GenericityReport report;
  for (int i = 0; i < static_cast<int>(m.components().size()); ++i) {
    const auto& c = m.component(i);
    for (const auto& subset : connected_subsets(c)) {
      const auto mult = subset_multiplicities(c, subset);
      Rational value = intersect(beta, subset_class(i, subset, mult), m);
      for (int a : subset) value += Rational(c.self_intersection(a)) / 2;
      if (is_integer(value)) {
        report.passed = false;
        report.violations.push_back({i, subset, value});
      }
    }
  }
  return report;
}

/// k_ij = ceil(beta.C_ij - n_ij/2), so k - 1 < beta.C - n/2 < k.
inline KTable compute_k(const DivisorClass& beta, const SurfaceModel& m) {
  KTable k;
  for (const auto& id : m.curves()) {
    const Rational x = intersect(beta, DivisorClass::curve(id), m) - Rational(m.n(id)) / 2;
    if (is_integer(x))
      throw PreconditionError("beta.C - n/2 = " + to_string(x) + " is an integer on curve " +
                              std::to_string(id.curve + 1) + " of component " + std::to_string(id.component + 1));
    k[id] = ceil_of(x);
  }
  return k;
}

inline void require_chain_like(const SurfaceModel& m, const std::string& what) {
  for (int i = 0; i < static_cast<int>(m.components().size()); ++i)
    if (!is_chain_like(m.component(i)))
      throw UnsupportedConfiguration(what + " needs chain components; component " + std::to_string(i + 1) + " is " +
                                     m.component(i).describe());
}

/// For every subchain C_j..C_j':
///   sum k - (j'-j+1) < beta.(C_j+...+C_j') - sum n/2 < sum k - (j'-j).
inline GenericityReport check_condition_5_2(const DivisorClass& beta, const SurfaceModel& m) {
  require_chain_like(m, "the subchain window condition");
  GenericityReport report;
  report.k = compute_k(beta, m);
  for (int i = 0; i < static_cast<int>(m.components().size()); ++i) {
    const int r = m.component(i).size();
    for (int j = 0; j < r; ++j)
      for (int jj = j; jj < r; ++jj) {
        Rational value = intersect(beta, m.subchain(i, j, jj), m);
        Integer ksum = 0;
        for (int a = j; a <= jj; ++a) {
          value -= Rational(m.n(CurveId{i, a})) / 2;
          ksum += report.k.at(CurveId{i, a});
        }
        const Rational upper(ksum - (jj - j));
        const Rational lower(ksum - (jj - j + 1));
        if (!(lower < value && value < upper)) {
          report.passed = false;
          std::vector<int> curves;
          for (int a = j; a <= jj; ++a) curves.push_back(a);
          report.violations.push_back({i, curves, value});
        }
      }
  }
  return report;
}

/// The class with prescribed products beta.C_ij (indexed like m.curves()),
/// purely exceptional.
inline DivisorClass beta_from_products(const SurfaceModel& m, const std::vector<Rational>& products) {
  if (products.size() != m.curve_count())
    throw UsageError("expected " + std::to_string(m.curve_count()) + " products, got " +
                     std::to_string(products.size()));
  return m.from_exceptional_vector(solve(m.gram(), products));
}

inline int longest_chain(const SurfaceModel& m) {
  int l = 0;
  for (const auto& c : m.components()) l = std::max(l, c.size());
  return l;
}

/// beta with beta.C_ij = k_ij + n_ij/2 - 1 + eps, for 0 < eps < 1/(longest chain).
inline DivisorClass witness_beta(const SurfaceModel& m, const KTable& k, const Rational& eps) {
  require_chain_like(m, "witness_beta");
  const int l = longest_chain(m);
  if (eps <= 0 || eps * l >= 1)
    throw PreconditionError("witness_beta needs 0 < eps < 1/" + std::to_string(l) + ", got " + to_string(eps));
  std::vector<Rational> targets;
  for (const auto& id : m.curves()) {
    auto it = k.find(id);
    if (it == k.end())
      throw UsageError("witness_beta: no k value for curve " + std::to_string(id.curve + 1) + " of component " +
                       std::to_string(id.component + 1));
    targets.push_back(Rational(it->second) + Rational(m.n(id)) / 2 - 1 + eps);
  }
  const DivisorClass beta = beta_from_products(m, targets);
  if (!check_condition_4_2(beta, m).passed || !check_condition_5_2(beta, m).passed)
    throw InternalError("witness beta fails the genericity conditions");
  return beta;
}

/// A torsion class with ch1 supported on the exceptional curves, and the
/// fractional offset of the ch2 values it can take.
struct VanishingCandidate {
  int component = 0;
  std::vector<int> coefficients;  // per curve of the component
  Rational ch2_offset;
};

/// Subchain line bundles (every chain-shaped connected subset) and, on ADE
/// components, every positive root; duplicates removed.
inline std::vector<VanishingCandidate> vanishing_candidates(const SurfaceModel& m) {
  std::vector<VanishingCandidate> out;
  for (int i = 0; i < static_cast<int>(m.components().size()); ++i) {
    const auto& c = m.component(i);
    std::set<std::vector<int>> seen;
    for (const auto& subset : connected_subsets(c)) {
      if (!is_chain_shaped(c, subset)) continue;
      std::vector<int> coeff(c.size(), 0);
      Rational offset = 1 - static_cast<int>(subset.size());
      for (int a : subset) {
        coeff[a] = 1;
        offset -= Rational(c.self_intersection(a)) / 2;
      }
      seen.insert(coeff);
      out.push_back({i, coeff, offset});
    }
    if (c.is_ade())
      for (const auto& root : enumerate_roots(c, true))
        if (seen.insert(root).second) out.push_back({i, root, 0});
  }
  return out;
}

struct VanishingResult {
  bool passed = true;
  std::optional<ChernCharacter> witness;
  std::size_t classes_checked = 0;
};

/// Searches ch2 over each candidate's coset within |ch2| <= window for a class
/// with Z_{beta, f*eta} = 0.
inline VanishingResult verify_no_vanishing(const DivisorClass& beta, const SurfaceModel& m, const Integer& window) {
  if (window < 0) throw UsageError("ch2 window must be non-negative");
  VanishingResult result;
  const DivisorClass omega = DivisorClass::pullback(1);
  const Rational w(window);
  for (const auto& cand : vanishing_candidates(m)) {
    DivisorClass ch1;
    for (int a = 0; a < static_cast<int>(cand.coefficients.size()); ++a)
      ch1.set(CurveId{cand.component, a}, Rational(cand.coefficients[a]));
    const Rational base = frac_of(cand.ch2_offset);
    for (Rational c2 = base - Rational(floor_of(w + base)); c2 <= w; c2 += 1) {
      if (c2 < -w) continue;
      ++result.classes_checked;
      const ChernCharacter v(0, ch1, c2);
      if (central_charge(v, beta, omega, m).is_zero()) {
        result.passed = false;
        result.witness = v;
        return result;
      }
    }
  }
  return result;
}

}  // namespace chainstab
