#pragma once

// Exceptional configurations: chains of rational curves and ADE Dynkin
// graphs of (-2)-curves, their Gram matrices, fundamental cycles and roots.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chainstab/errors.hpp"
#include "chainstab/linalg.hpp"
#include "chainstab/rational.hpp"

namespace chainstab {

enum class ComponentKind { Chain, ADE };
enum class AdeFamily { A, D, E };

struct AdeLabel {
  AdeFamily family;
  int rank;

  bool operator==(const AdeLabel&) const = default;

  std::string name() const {
    const char letter = family == AdeFamily::A ? 'A' : family == AdeFamily::D ? 'D' : 'E';
    return std::string(1, letter) + std::to_string(rank);
  }
};

/// Parses "A3", "D4", "E6", ...; rank ranges are not checked here.
inline AdeLabel parse_ade_label(const std::string& text) {
  if (text.size() < 2) throw ConfigurationError("malformed ADE type '" + text + "'");
  AdeLabel label{};
  switch (text[0]) {
    case 'A': case 'a': label.family = AdeFamily::A; break;
    case 'D': case 'd': label.family = AdeFamily::D; break;
    case 'E': case 'e': label.family = AdeFamily::E; break;
    default: throw ConfigurationError("unknown ADE family in '" + text + "'");
  }
  try {
    std::size_t used = 0;
    label.rank = std::stoi(text.substr(1), &used);
    if (used != text.size() - 1) throw ConfigurationError("malformed ADE type '" + text + "'");
  } catch (const std::logic_error&) {
    throw ConfigurationError("malformed ADE type '" + text + "'");
  }
  return label;
}

using Edge = std::pair<int, int>;

/// One connected component of the exceptional locus.
class ExcComponent {
 public:
  ExcComponent() = default;

  /// Chain C_0 - C_1 - ... in list order.
  static ExcComponent chain(std::vector<int> self_intersections) {
    ExcComponent c;
    c.kind_ = ComponentKind::Chain;
    c.self_ = std::move(self_intersections);
    for (int i = 0; i + 1 < static_cast<int>(c.self_.size()); ++i) c.edges_.emplace_back(i, i + 1);
    return c;
  }

  /// Named ADE type in canonical ordering: A_n in chain order; D_n and E_n
  /// list the fork node first, then the legs from shortest to longest, each
  /// leg ordered outward from the fork.
  static ExcComponent ade(AdeLabel label) {
    std::vector<int> legs;
    int n = label.rank;
    switch (label.family) {
      case AdeFamily::A:
        if (n < 1) throw ConfigurationError("A_n needs n >= 1");
        break;
      case AdeFamily::D:
        if (n < 4) throw ConfigurationError("D_n needs n >= 4");
        legs = {1, 1, n - 3};
        break;
      case AdeFamily::E:
        if (n < 6 || n > 8) throw ConfigurationError("E_n needs 6 <= n <= 8");
        legs = {1, 2, n - 4};
        break;
    }
    ExcComponent c;
    c.kind_ = ComponentKind::ADE;
    c.label_ = label;
    c.self_.assign(n, -2);
    if (label.family == AdeFamily::A) {
      for (int i = 0; i + 1 < n; ++i) c.edges_.emplace_back(i, i + 1);
      return c;
    }
    int next = 1;
    for (int len : legs) {
      int prev = 0;
      for (int t = 0; t < len; ++t) {
        c.edges_.emplace_back(prev, next);
        prev = next++;
      }
    }
    c.normalize_edges();
    return c;
  }

  /// ADE component given as an explicit graph on (-2)-curves.
  static ExcComponent ade_graph(int curves, std::vector<Edge> edges) {
    ExcComponent c;
    c.kind_ = ComponentKind::ADE;
    c.self_.assign(curves, -2);
    c.edges_ = std::move(edges);
    c.normalize_edges();
    return c;
  }

  /// Arbitrary data, used for validation tests and config round trips.
  static ExcComponent raw(ComponentKind kind, std::vector<int> self_intersections, std::vector<Edge> edges,
                          std::optional<AdeLabel> label = std::nullopt) {
    ExcComponent c;
    c.kind_ = kind;
    c.self_ = std::move(self_intersections);
    c.edges_ = std::move(edges);
    c.label_ = label;
    c.normalize_edges();
    return c;
  }

  ComponentKind kind() const { return kind_; }
  bool is_ade() const { return kind_ == ComponentKind::ADE; }
  const std::optional<AdeLabel>& label() const { return label_; }
  int size() const { return static_cast<int>(self_.size()); }
  int self_intersection(int j) const { return self_.at(j); }
  const std::vector<int>& self_intersections() const { return self_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool adjacent(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
  }

  int degree(int j) const {
    int d = 0;
    for (const auto& [a, b] : edges_) d += (a == j) + (b == j);
    return d;
  }

  std::vector<std::vector<int>> neighbours() const {
    std::vector<std::vector<int>> nb(self_.size());
    for (const auto& [a, b] : edges_) {
      if (a < 0 || b < 0 || a >= size() || b >= size()) continue;
      nb[a].push_back(b);
      nb[b].push_back(a);
    }
    return nb;
  }

  /// Intersection matrix of the component's curves.
  RationalMatrix gram() const {
    const int n = size();
    RationalMatrix g(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = self_[i];
    for (const auto& [a, b] : edges_) {
      if (a < 0 || b < 0 || a >= n || b >= n || a == b) continue;
      g(a, b) = 1;
      g(b, a) = 1;
    }
    return g;
  }

  /// Integer version of gram(), used by the combinatorial routines.
  std::vector<std::vector<int>> int_gram() const {
    const int n = size();
    std::vector<std::vector<int>> g(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) g[i][i] = self_[i];
    for (const auto& [a, b] : edges_) {
      if (a < 0 || b < 0 || a >= n || b >= n || a == b) continue;
      g[a][b] = g[b][a] = 1;
    }
    return g;
  }

  std::string describe() const {
    std::ostringstream os;
    if (kind_ == ComponentKind::Chain) {
      os << "chain(";
      for (int i = 0; i < size(); ++i) os << (i ? "," : "") << self_[i];
      os << ")";
    } else if (label_) {
      os << label_->name();
    } else {
      os << "ade_graph(" << size() << ")";
    }
    return os.str();
  }

 private:
  void normalize_edges() {
    for (auto& e : edges_)
      if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges_.begin(), edges_.end());
  }

  ComponentKind kind_ = ComponentKind::Chain;
  std::optional<AdeLabel> label_;
  std::vector<int> self_;
  std::vector<Edge> edges_;
};

namespace detail {

inline bool is_connected(int n, const std::vector<std::vector<int>>& nb, const std::vector<int>& subset) {
  if (subset.empty()) return false;
  std::set<int> members(subset.begin(), subset.end());
  std::set<int> seen{subset.front()};
  std::vector<int> stack{subset.front()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : nb[v])
      if (members.count(w) && seen.insert(w).second) stack.push_back(w);
  }
  (void)n;
  return seen.size() == members.size();
}

/// Lengths of the legs hanging off a degree-3 node of a tree, sorted.
inline std::vector<int> leg_lengths(const std::vector<std::vector<int>>& nb, int fork) {
  std::vector<int> legs;
  for (int start : nb[fork]) {
    int len = 1, prev = fork, cur = start;
    while (nb[cur].size() == 2) {
      int nxt = nb[cur][0] == prev ? nb[cur][1] : nb[cur][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  return legs;
}

}  // namespace detail

/// Identifies the Dynkin type of a simple graph, or nullopt if it is not one
/// of A_n, D_n, E_6, E_7, E_8.
inline std::optional<AdeLabel> classify_dynkin(int n, const std::vector<Edge>& edges) {
  if (n < 1 || static_cast<int>(edges.size()) != n - 1) return std::nullopt;
  std::vector<std::vector<int>> nb(n);
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) return std::nullopt;
    nb[a].push_back(b);
    nb[b].push_back(a);
  }
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  if (!detail::is_connected(n, nb, all)) return std::nullopt;  // n-1 edges + connected = tree
  std::vector<int> forks;
  for (int i = 0; i < n; ++i) {
    if (nb[i].size() > 3) return std::nullopt;
    if (nb[i].size() == 3) forks.push_back(i);
  }
  if (forks.empty()) return AdeLabel{AdeFamily::A, n};
  if (forks.size() > 1) return std::nullopt;
  auto legs = detail::leg_lengths(nb, forks.front());
  if (legs[0] == 1 && legs[1] == 1) return AdeLabel{AdeFamily::D, n};
  if (legs[0] == 1 && legs[1] == 2 && legs[2] >= 2 && legs[2] <= 4) return AdeLabel{AdeFamily::E, n};
  return std::nullopt;
}

/// Outcome of validate(): either a certificate (valid == true, minors and
/// shape filled in) or the first violated rule.
struct ValidationReport {
  bool valid = false;
  std::string shape;
  std::vector<Rational> leading_minors;
  std::string violation;
};

inline ValidationReport validate(const ExcComponent& c) {
  ValidationReport r;
  const int n = c.size();
  auto fail = [&](std::string why) {
    r.valid = false;
    r.violation = std::move(why);
    return r;
  };
  if (n == 0) return fail("component has no curves");
  for (int j = 0; j < n; ++j)
    if (c.self_intersection(j) >= 0)
      return fail("curve " + std::to_string(j + 1) + " has non-negative self-intersection " +
                  std::to_string(c.self_intersection(j)));
  for (std::size_t e = 0; e < c.edges().size(); ++e) {
    const auto& [a, b] = c.edges()[e];
    if (a < 0 || b >= n) return fail("edge refers to an unknown curve");
    if (a == b) return fail("edge joins curve " + std::to_string(a + 1) + " to itself");
    if (e > 0 && c.edges()[e - 1] == c.edges()[e]) return fail("duplicate edge");
  }
  if (c.kind() == ComponentKind::Chain) {
    if (static_cast<int>(c.edges().size()) != n - 1) return fail("chain adjacency is not a path graph");
    for (int i = 0; i + 1 < n; ++i)
      if (!c.adjacent(i, i + 1)) return fail("chain adjacency is not the path in curve order");
    for (int j = 0; j < n; ++j) {
      const int k = c.degree(j);
      if (c.self_intersection(j) + k >= 0)
        return fail("curve " + std::to_string(j + 1) + ": C^2 + k = " + std::to_string(c.self_intersection(j)) +
                    " + " + std::to_string(k) + " is not negative");
    }
    r.shape = "chain of length " + std::to_string(n);
  } else {
    for (int j = 0; j < n; ++j)
      if (c.self_intersection(j) != -2) return fail("curve " + std::to_string(j + 1) + " is not a (-2)-curve");
    auto type = classify_dynkin(n, c.edges());
    if (!type) return fail("adjacency is not an ADE Dynkin diagram");
    if (c.label() && !(*c.label() == *type))
      return fail("declared type " + c.label()->name() + " but graph is " + type->name());
    r.shape = type->name();
  }
  r.leading_minors = leading_principal_minors(c.gram());
  if (!minors_certify_negative_definite(r.leading_minors)) return fail("Gram matrix is not negative definite");
  r.valid = true;
  return r;
}

/// Dynkin type of a validated ADE component.
inline AdeLabel ade_type(const ExcComponent& c) {
  if (!c.is_ade()) throw UsageError("component is not ADE");
  auto t = classify_dynkin(c.size(), c.edges());
  if (!t) throw UsageError("component graph is not a Dynkin diagram");
  return *t;
}

/// True when the component is a path in index order (chains and A_n).
inline bool is_path_in_order(const ExcComponent& c) {
  if (static_cast<int>(c.edges().size()) != c.size() - 1) return false;
  for (int i = 0; i + 1 < c.size(); ++i)
    if (!c.adjacent(i, i + 1)) return false;
  return true;
}

struct FundamentalCycle {
  std::vector<int> coefficients;
  bool operator==(const FundamentalCycle&) const = default;
};

namespace detail {

inline int pair_with(const std::vector<std::vector<int>>& g, const std::vector<int>& z, int k) {
  int s = 0;
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * g[j][k];
  return s;
}

inline int self_pairing(const std::vector<std::vector<int>>& g, const std::vector<int>& z) {
  int s = 0;
  for (std::size_t k = 0; k < z.size(); ++k) s += z[k] * pair_with(g, z, static_cast<int>(k));
  return s;
}

/// Laufer's iteration on an integer Gram matrix. `pick` chooses among the
/// curves with Z.C_k > 0.
inline std::vector<int> laufer(const std::vector<std::vector<int>>& g,
                               const std::function<int(const std::vector<int>&)>& pick) {
  std::vector<int> z(g.size(), 1);
  for (;;) {
    std::vector<int> positive;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (pair_with(g, z, static_cast<int>(k)) > 0) positive.push_back(static_cast<int>(k));
    if (positive.empty()) return z;
    z[pick(positive)] += 1;
  }
}

inline std::vector<std::vector<int>> restrict_gram(const std::vector<std::vector<int>>& g,
                                                   const std::vector<int>& subset) {
  std::vector<std::vector<int>> r(subset.size(), std::vector<int>(subset.size()));
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = 0; b < subset.size(); ++b) r[a][b] = g[subset[a]][subset[b]];
  return r;
}

}  // namespace detail

/// Fundamental cycle of an ADE component by Laufer's iteration, adding the
/// smallest-index curve with Z.C_k > 0 at each step.
inline FundamentalCycle fundamental_cycle(const ExcComponent& c) {
  if (!c.is_ade()) throw UsageError("fundamental_cycle: component is not ADE");
  if (!validate(c).valid) throw UsageError("fundamental_cycle: component is not a valid ADE configuration");
  const auto g = c.int_gram();
  FundamentalCycle fc{detail::laufer(g, [](const std::vector<int>& cand) { return cand.front(); })};
  const int sq = detail::self_pairing(g, fc.coefficients);
  for (int k = 0; k < c.size(); ++k)
    if (detail::pair_with(g, fc.coefficients, k) > 0) throw InternalError("fundamental cycle is not anti-nef");
  if (sq != -2) throw InternalError("fundamental cycle has self-intersection " + std::to_string(sq));
  return fc;
}

/// Fundamental cycle of a connected subset of (-2)-curves of an ADE
/// component (indices into the component), in subset order.
inline std::vector<int> fundamental_cycle_of_subset(const ExcComponent& c, const std::vector<int>& subset) {
  const auto g = detail::restrict_gram(c.int_gram(), subset);
  return detail::laufer(g, [](const std::vector<int>& cand) { return cand.front(); });
}

/// All connected subsets of the component's dual graph, each sorted, in a
/// deterministic order (by smallest element, then size, then lexicographic).
inline std::vector<std::vector<int>> connected_subsets(const ExcComponent& c) {
  const int n = c.size();
  std::vector<std::vector<int>> out;
  if (is_path_in_order(c)) {
    for (int j = 0; j < n; ++j)
      for (int jj = j; jj < n; ++jj) {
        std::vector<int> s;
        for (int a = j; a <= jj; ++a) s.push_back(a);
        out.push_back(std::move(s));
      }
    return out;
  }
  const auto nb = c.neighbours();
  std::set<std::vector<int>> found;
  // grow connected sets whose minimum is `root`
  std::function<void(std::set<int>&, int)> grow = [&](std::set<int>& current, int root) {
    std::vector<int> as_vec(current.begin(), current.end());
    if (!found.insert(as_vec).second) return;
    for (int v : as_vec)
      for (int w : nb[v])
        if (w > root && !current.count(w)) {
          current.insert(w);
          grow(current, root);
          current.erase(w);
        }
  };
  for (int root = 0; root < n; ++root) {
    std::set<int> s{root};
    grow(s, root);
  }
  out.assign(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.front() != b.front()) return a.front() < b.front();
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

/// Integer vectors a with (sum a_j C_j)^2 = -2, by exact Fincke-Pohst
/// enumeration of {a : a^T (-G) a <= 2}. Sorted by height, then
/// lexicographically.
inline std::vector<std::vector<int>> enumerate_roots(const ExcComponent& c, bool positive_only) {
  if (!c.is_ade()) throw UsageError("enumerate_roots: component is not ADE");
  const int n = c.size();
  const RationalMatrix h = -c.gram();
  const SquareDecomposition d = square_decomposition(h);
  const Rational budget = 2;

  std::vector<std::vector<int>> roots;
  std::vector<int> a(n, 0);
  std::function<void(int, const Rational&)> descend = [&](int i, const Rational& remaining) {
    if (i < 0) {
      if (remaining == 0) roots.push_back(a);
      return;
    }
    Rational center = 0;
    for (int j = i + 1; j < n; ++j) center -= d.upper(i, j) * a[j];
    const Integer reach = floor_sqrt(remaining / d.diag[i]) + 1;
    const Integer lo = floor_of(center) - reach;
    const Integer hi = ceil_of(center) + reach;
    for (Integer x = lo; x <= hi; ++x) {
      const Rational offset = Rational(x) - center;
      const Rational used = d.diag[i] * offset * offset;
      if (used > remaining) continue;
      a[i] = static_cast<int>(x);
      descend(i - 1, remaining - used);
    }
    a[i] = 0;
  };
  descend(n - 1, budget);

  if (positive_only) {
    std::erase_if(roots, [](const std::vector<int>& r) {
      return std::any_of(r.begin(), r.end(), [](int x) { return x < 0; });
    });
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    int hx = 0, hy = 0;
    for (int v : x) hx += v;
    for (int v : y) hy += v;
    if (hx != hy) return hx < hy;
    return x < y;
  });
  return roots;
}

/// Result of perturbed_ample_certificate: the exact values of
/// omega = f~*eta~ - eps * sum C_j against each contracted curve.
struct AmpleCertificate {
  bool valid = false;
  std::vector<std::vector<Rational>> omega_dot_curve;  // per component, per curve (from the Gram matrix)
  std::vector<std::vector<Rational>> closed_form;      // eps * (-C^2 - k)
  Rational omega_sq;
  std::string violation;
};

inline AmpleCertificate perturbed_ample_certificate(const std::vector<ExcComponent>& components,
                                                    const Rational& pullback_weight, const Rational& eps) {
  if (eps <= 0) throw UsageError("perturbed_ample_certificate: epsilon must be positive");
  if (pullback_weight <= 0) throw UsageError("perturbed_ample_certificate: pullback weight must be positive");
  AmpleCertificate cert;
  Rational exc_sq = 0;
  for (const auto& c : components) {
    const auto g = c.gram();
    std::vector<Rational> dots, closed;
    for (int j = 0; j < c.size(); ++j) {
      Rational row = 0;
      for (int k = 0; k < c.size(); ++k) row += g(j, k);
      dots.push_back(-eps * row);
      closed.push_back(eps * Rational(-c.self_intersection(j) - c.degree(j)));
      exc_sq += row;
    }
    cert.omega_dot_curve.push_back(std::move(dots));
    cert.closed_form.push_back(std::move(closed));
  }
  cert.omega_sq = pullback_weight + eps * eps * exc_sq;
  cert.valid = true;
  for (std::size_t i = 0; i < components.size() && cert.valid; ++i)
    for (std::size_t j = 0; j < cert.omega_dot_curve[i].size(); ++j) {
      if (cert.omega_dot_curve[i][j] != cert.closed_form[i][j])
        throw InternalError("omega.C disagrees with eps(-C^2 - k)");
      if (cert.omega_dot_curve[i][j] <= 0) {
        cert.valid = false;
        cert.violation = "omega.C = " + to_string(cert.omega_dot_curve[i][j]) + " is not positive on component " +
                         std::to_string(i + 1) + ", curve " + std::to_string(j + 1);
        break;
      }
    }
  if (cert.valid && cert.omega_sq <= 0) {
    cert.valid = false;
    cert.violation = "omega^2 = " + to_string(cert.omega_sq) + " is not positive";
  }
  return cert;
}

}  // namespace chainstab
