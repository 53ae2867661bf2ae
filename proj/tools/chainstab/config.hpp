#pragma once

// YAML configuration files for the chainstab tool. Grammar:
//
//   surface:
//     volume: 2                      # eta^2
//     components:
//       - chain: [-3, -3]            # self-intersections in chain order
//       - ade: D4                    # named type, canonical ordering
//       - graph: {curves: 4, edges: [[1, 2], [1, 3], [1, 4]]}
//   beta:                            # optional, default 0; one of
//     products: [1/4, -1/8]          #   beta.C_ij in curve order
//     coefficients: [1/8, 0]         #   beta = sum b_ij C_ij
//     witness: {k: [0, 0], eps: 1/8} #   witness construction
//     pullback: 0                    # optional f*eta coefficient
//   constants:
//     generators: ["f*eta", "f*eta-1/2*C1.1"]
//     N: 100                         # optional override of the integer N
//   task:
//     class: "(0;1*f*eta;0)"         # Chern character (r;D;c)
//     s: 1                           # ray parameter
//     omega: "f*eta"                 # ample class for charge/slopes
//     window: 4                      # ch2 window for vanishing
//     box: {rank: 2, ch1: 2, ch1_denominator: 1, ch2: 2}
//     s_range: "0..4"
//     s_values: [1/2, 1, 3]          # kernel-check samples
//     curves: {component: 1, first: 1, last: 2, degrees: [0, -1]}
//     k: [0, 0]                      # witness-beta windows
//     eps: 1/8
//     all_roots: false
//
// Curves are 1-based everywhere in files and reports.

#include <yaml-cpp/yaml.h>

#include <optional>
#include <string>
#include <vector>

#include "chainstab/chainstab.hpp"

namespace chainstab::cli {

class Config {
 public:
  static Config load(const std::string& path) {
    YAML::Node root;
    try {
      root = YAML::LoadFile(path);
    } catch (const YAML::BadFile&) {
      throw ConfigurationError(path + ": cannot read file");
    } catch (const YAML::Exception& e) {
      throw ConfigurationError(path + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    return Config(root, path);
  }

  static Config parse(const std::string& text, const std::string& origin) {
    YAML::Node root;
    try {
      root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
      throw ConfigurationError(origin + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    return Config(root, origin);
  }

  const Rational& volume() const { return volume_; }
  const std::vector<ExcComponent>& components() const { return components_; }

  /// Validated model; invalid components are configuration errors.
  SurfaceModel model() const { return SurfaceModel(volume_, components_); }

  DivisorClass beta(const SurfaceModel& m) const {
    const YAML::Node b = root_["beta"];
    if (!b) return DivisorClass{};
    require_map(b, "beta");
    int modes = 0;
    for (const char* key : {"products", "coefficients", "witness"})
      if (b[key]) ++modes;
    if (modes > 1) fail(b, "beta", "give only one of products, coefficients, witness");
    DivisorClass out;
    if (b["products"]) {
      const auto p = rationals(b["products"], "beta.products");
      if (p.size() != m.curve_count())
        fail(b["products"], "beta.products", "expected " + std::to_string(m.curve_count()) + " values");
      out = beta_from_products(m, p);
    } else if (b["coefficients"]) {
      const auto c = rationals(b["coefficients"], "beta.coefficients");
      if (c.size() != m.curve_count())
        fail(b["coefficients"], "beta.coefficients", "expected " + std::to_string(m.curve_count()) + " values");
      out = m.from_exceptional_vector(c);
    } else if (b["witness"]) {
      const YAML::Node w = b["witness"];
      require_map(w, "beta.witness");
      if (!w["eps"]) fail(w, "beta.witness", "missing eps");
      out = witness_beta(m, k_table(w["k"], "beta.witness.k", m), rational(w["eps"], "beta.witness.eps"));
    }
    if (b["pullback"]) out += DivisorClass::pullback(rational(b["pullback"], "beta.pullback"));
    return out;
  }

  std::vector<DivisorClass> generators(const SurfaceModel& m) const {
    const YAML::Node c = root_["constants"];
    if (!c || !c["generators"]) return default_cone_generators(m);
    const YAML::Node g = c["generators"];
    if (!g.IsSequence() || g.size() == 0) fail(g, "constants.generators", "expected a non-empty list");
    std::vector<DivisorClass> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::string field = "constants.generators[" + std::to_string(i) + "]";
      out.push_back(divisor(g[i], field, m));
    }
    return out;
  }

  std::optional<Integer> n_override() const {
    const YAML::Node c = root_["constants"];
    if (!c || !c["N"]) return std::nullopt;
    return integer(c["N"], "constants.N");
  }

  bool has_task(const std::string& key) const { return task()[key].IsDefined() && !task()[key].IsNull(); }

  Rational task_rational(const std::string& key) const { return rational(need_task(key), "task." + key); }
  Integer task_integer(const std::string& key) const { return integer(need_task(key), "task." + key); }
  std::string task_string(const std::string& key) const { return scalar(need_task(key), "task." + key); }
  bool task_bool(const std::string& key, bool fallback) const {
    if (!has_task(key)) return fallback;
    try {
      return task()[key].as<bool>();
    } catch (const YAML::Exception&) {
      fail(task()[key], "task." + key, "expected true or false");
    }
  }
  std::vector<Rational> task_rationals(const std::string& key) const {
    return rationals(need_task(key), "task." + key);
  }

  ChernCharacter task_class(const SurfaceModel& m) const {
    const std::string field = "task.class";
    const YAML::Node n = need_task("class");
    ChernCharacter v;
    try {
      v = parse_chern(scalar(n, field));
    } catch (const ConfigurationError& e) {
      fail(n, field, e.what());
    }
    check_curves(v.d, n, field, m);
    return v;
  }

  DivisorClass task_divisor(const std::string& key, const SurfaceModel& m) const {
    return divisor(need_task(key), "task." + key, m);
  }

  KTable task_k(const SurfaceModel& m) const { return k_table(task()["k"], "task.k", m); }

  SearchBox task_box() const {
    SearchBox box;
    if (!has_task("box")) return box;
    const YAML::Node b = task()["box"];
    require_map(b, "task.box");
    if (b["rank"]) box.rank_bound = integer(b["rank"], "task.box.rank");
    if (b["ch1"]) box.ch1_bound = integer(b["ch1"], "task.box.ch1");
    if (b["ch1_denominator"]) box.ch1_denominator = integer(b["ch1_denominator"], "task.box.ch1_denominator");
    if (b["ch2"]) box.ch2_bound = rational(b["ch2"], "task.box.ch2");
    return box;
  }

  /// Curve range of a chain-bundle task: zero-based component and curves.
  struct CurveRange {
    int component = 0;
    int first = 0;
    int last = 0;
    std::vector<Integer> degrees;
  };

  CurveRange task_curves() const {
    const YAML::Node c = need_task("curves");
    require_map(c, "task.curves");
    CurveRange r;
    for (const char* key : {"component", "first", "last"})
      if (!c[key]) fail(c, "task.curves", std::string("missing ") + key);
    r.component = small_int(c["component"], "task.curves.component") - 1;
    r.first = small_int(c["first"], "task.curves.first") - 1;
    r.last = small_int(c["last"], "task.curves.last") - 1;
    if (c["degrees"]) {
      if (!c["degrees"].IsSequence()) fail(c["degrees"], "task.curves.degrees", "expected a list");
      for (std::size_t i = 0; i < c["degrees"].size(); ++i)
        r.degrees.push_back(integer(c["degrees"][i], "task.curves.degrees[" + std::to_string(i) + "]"));
    }
    return r;
  }

 private:
  Config(YAML::Node root, std::string origin) : root_(std::move(root)), origin_(std::move(origin)) {
    if (!root_.IsMap()) fail(root_, "(top level)", "expected a mapping");
    const YAML::Node s = root_["surface"];
    if (!s) fail(root_, "surface", "missing section");
    require_map(s, "surface");
    if (!s["volume"]) fail(s, "surface.volume", "missing");
    volume_ = rational(s["volume"], "surface.volume");
    const YAML::Node comps = s["components"];
    if (!comps || !comps.IsSequence()) fail(s, "surface.components", "expected a list of components");
    for (std::size_t i = 0; i < comps.size(); ++i) components_.push_back(component(comps[i], i));
  }

  [[noreturn]] void fail(const YAML::Node& n, const std::string& field, const std::string& msg) const {
    std::string where = origin_;
    if (n.IsDefined() && n.Mark().line >= 0) where += ":" + std::to_string(n.Mark().line + 1);
    throw ConfigurationError(where + ": " + field + ": " + msg);
  }

  void require_map(const YAML::Node& n, const std::string& field) const {
    if (!n.IsMap()) fail(n, field, "expected a mapping");
  }

  YAML::Node task() const { return root_["task"] ? root_["task"] : YAML::Node(YAML::NodeType::Map); }

  YAML::Node need_task(const std::string& key) const {
    const YAML::Node t = task();
    if (!t.IsMap()) fail(t, "task", "expected a mapping");
    if (!t[key] || t[key].IsNull()) fail(t, "task." + key, "missing");
    return t[key];
  }

  std::string scalar(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected a scalar");
    return n.Scalar();
  }

  Rational rational(const YAML::Node& n, const std::string& field) const {
    const std::string text = scalar(n, field);
    try {
      return parse_rational(text);
    } catch (const ConfigurationError&) {
      fail(n, field, "expected a rational p or p/q, got '" + text + "'");
    }
  }

  Integer integer(const YAML::Node& n, const std::string& field) const {
    const Rational q = rational(n, field);
    if (!is_integer(q)) fail(n, field, "expected an integer, got " + to_string(q));
    return numerator_of(q);
  }

  int small_int(const YAML::Node& n, const std::string& field) const {
    const Integer v = integer(n, field);
    if (v < -1000000 || v > 1000000) fail(n, field, "value out of range");
    return static_cast<int>(v);
  }

  std::vector<Rational> rationals(const YAML::Node& n, const std::string& field) const {
    if (!n.IsSequence()) fail(n, field, "expected a list");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(rational(n[i], field + "[" + std::to_string(i) + "]"));
    return out;
  }

  void check_curves(const DivisorClass& d, const YAML::Node& n, const std::string& field,
                    const SurfaceModel& m) const {
    for (const auto& [id, a] : d.exceptional_coefficients())
      if (!m.contains(id))
        fail(n, field, "unknown curve C" + std::to_string(id.component + 1) + "." + std::to_string(id.curve + 1));
  }

  DivisorClass divisor(const YAML::Node& n, const std::string& field, const SurfaceModel& m) const {
    DivisorClass d;
    try {
      d = parse_divisor(scalar(n, field));
    } catch (const ConfigurationError& e) {
      fail(n, field, e.what());
    }
    check_curves(d, n, field, m);
    return d;
  }

  KTable k_table(const YAML::Node& n, const std::string& field, const SurfaceModel& m) const {
    KTable k;
    if (!n || n.IsNull()) {
      for (const auto& id : m.curves()) k[id] = 0;
      return k;
    }
    if (!n.IsSequence() || n.size() != m.curve_count())
      fail(n, field, "expected a list of " + std::to_string(m.curve_count()) + " integers");
    for (std::size_t i = 0; i < n.size(); ++i) k[m.curves()[i]] = integer(n[i], field + "[" + std::to_string(i) + "]");
    return k;
  }

  ExcComponent component(const YAML::Node& n, std::size_t i) const {
    const std::string field = "surface.components[" + std::to_string(i) + "]";
    require_map(n, field);
    if (n.size() != 1) fail(n, field, "expected exactly one of chain, ade, graph");
    if (n["chain"]) {
      const YAML::Node c = n["chain"];
      if (!c.IsSequence() || c.size() == 0) fail(c, field + ".chain", "expected a non-empty list");
      std::vector<int> self;
      for (std::size_t j = 0; j < c.size(); ++j)
        self.push_back(small_int(c[j], field + ".chain[" + std::to_string(j) + "]"));
      return ExcComponent::chain(std::move(self));
    }
    if (n["ade"]) {
      try {
        return ExcComponent::ade(parse_ade_label(scalar(n["ade"], field + ".ade")));
      } catch (const ConfigurationError& e) {
        fail(n["ade"], field + ".ade", e.what());
      }
    }
    if (n["graph"]) {
      const YAML::Node g = n["graph"];
      require_map(g, field + ".graph");
      if (!g["curves"]) fail(g, field + ".graph", "missing curves");
      const int count = small_int(g["curves"], field + ".graph.curves");
      if (count <= 0) fail(g["curves"], field + ".graph.curves", "must be positive");
      std::vector<Edge> edges;
      const YAML::Node e = g["edges"];
      if (e) {
        if (!e.IsSequence()) fail(e, field + ".graph.edges", "expected a list of pairs");
        for (std::size_t j = 0; j < e.size(); ++j) {
          const std::string ef = field + ".graph.edges[" + std::to_string(j) + "]";
          if (!e[j].IsSequence() || e[j].size() != 2) fail(e[j], ef, "expected a pair [a, b]");
          const int a = small_int(e[j][0], ef), b = small_int(e[j][1], ef);
          if (a < 1 || b < 1 || a > count || b > count) fail(e[j], ef, "curve index out of range");
          edges.emplace_back(a - 1, b - 1);
        }
      }
      return ExcComponent::ade_graph(count, std::move(edges));
    }
    fail(n, field, "expected exactly one of chain, ade, graph");
  }

  YAML::Node root_;
  std::string origin_;
  Rational volume_;
  std::vector<ExcComponent> components_;
};

}  // namespace chainstab::cli
