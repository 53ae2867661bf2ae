#pragma once

// Command dispatch for the chainstab tool. Every command produces one table;
// stdout gets an aligned rendering, --csv PATH gets the same rows as CSV.
// Exit status: 0 pass, 1 violation found, 2 usage error, 3 configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "chainstab/chainstab.hpp"
#include "config.hpp"

namespace chainstab::cli {

enum ExitCode { kPass = 0, kViolation = 1, kUsage = 2, kConfig = 3 };

struct Report {
  std::vector<std::string> notes;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int status = kPass;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline void write_csv(const Report& r, std::ostream& os) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
    os << "\n";
  };
  line(r.header);
  for (const auto& row : r.rows) line(row);
}

inline void write_table(const std::string& command, const Report& r, std::ostream& os) {
  os << "chainstab " << command << "\n";
  for (const auto& n : r.notes) os << n << "\n";
  std::vector<std::size_t> width(r.header.size());
  for (std::size_t i = 0; i < r.header.size(); ++i) width[i] = r.header[i].size();
  for (const auto& row : r.rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    os << s << "\n";
  };
  line(r.header);
  for (const auto& row : r.rows) line(row);
  os << "result: " << (r.status == kPass ? "pass" : "violation") << "\n";
}

inline std::string curve_name(CurveId id) {
  return "C" + std::to_string(id.component + 1) + "." + std::to_string(id.curve + 1);
}

inline std::string opt_text(const std::optional<Rational>& q) { return q ? to_string(*q) : "inf"; }

inline std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline std::string join_rationals(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

/// Options that may override the config's task section.
struct Flags {
  std::string box;
  std::string s_range;
  bool strict = false;
};

inline SearchBox parse_box(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3 && parts.size() != 4)
    throw UsageError("--box expects RANK,CH1,CH2[,CH1_DENOMINATOR], got '" + text + "'");
  SearchBox box;
  try {
    auto integer = [](const std::string& s) {
      const Rational q = parse_rational(s);
      if (!is_integer(q)) throw ConfigurationError("not an integer");
      return numerator_of(q);
    };
    box.rank_bound = integer(parts[0]);
    box.ch1_bound = integer(parts[1]);
    box.ch2_bound = parse_rational(parts[2]);
    if (parts.size() == 4) box.ch1_denominator = integer(parts[3]);
  } catch (const ConfigurationError&) {
    throw UsageError("--box expects RANK,CH1,CH2[,CH1_DENOMINATOR], got '" + text + "'");
  }
  box.check();
  return box;
}

namespace commands {

inline Report validate_cmd(const Config& cfg, const Flags&) {
  Report r;
  r.header = {"component", "kind", "shape", "valid", "detail"};
  for (std::size_t i = 0; i < cfg.components().size(); ++i) {
    const auto& c = cfg.components()[i];
    const auto v = validate(c);
    r.rows.push_back({std::to_string(i + 1), c.kind() == ComponentKind::Chain ? "chain" : "ade",
                      v.valid ? v.shape : "-", v.valid ? "yes" : "no",
                      v.valid ? "minors " + join_rationals(v.leading_minors) : v.violation});
    if (!v.valid) r.status = kViolation;
  }
  if (cfg.volume() <= 0) {
    r.rows.push_back({"-", "surface", "-", "no", "eta^2 = " + to_string(cfg.volume()) + " is not positive"});
    r.status = kViolation;
  }
  return r;
}

inline Report fundcycle_cmd(const Config& cfg, const Flags&) {
  const SurfaceModel m = cfg.model();
  Report r;
  r.header = {"component", "type", "delta", "Z^2", "max Z.C"};
  for (int i = 0; i < static_cast<int>(m.components().size()); ++i) {
    const auto& c = m.component(i);
    if (!c.is_ade()) continue;
    const auto fc = fundamental_cycle(c);
    const auto g = c.int_gram();
    int worst = std::numeric_limits<int>::min();
    for (int k = 0; k < c.size(); ++k) worst = std::max(worst, detail::pair_with(g, fc.coefficients, k));
    r.notes.push_back("component " + std::to_string(i + 1) + " (" + ade_type(c).name() +
                      "): delta = " + join_ints(fc.coefficients));
    r.rows.push_back({std::to_string(i + 1), ade_type(c).name(), join_ints(fc.coefficients),
                      std::to_string(detail::self_pairing(g, fc.coefficients)), std::to_string(worst)});
  }
  if (r.rows.empty()) throw UsageError("fundcycle needs an ADE component");
  return r;
}

inline Report roots_cmd(const Config& cfg, const Flags&) {
  const SurfaceModel m = cfg.model();
  const bool all = cfg.task_bool("all_roots", false);
  Report r;
  r.header = {"component", "type", "root", "height"};
  bool any = false;
  for (int i = 0; i < static_cast<int>(m.components().size()); ++i) {
    const auto& c = m.component(i);
    if (!c.is_ade()) continue;
    any = true;
    const auto roots = enumerate_roots(c, !all);
    r.notes.push_back("component " + std::to_string(i + 1) + " (" + ade_type(c).name() + "): " +
                      std::to_string(roots.size()) + (all ? " roots" : " positive roots"));
    for (const auto& root : roots) {
      int h = 0;
      for (int x : root) h += x;
      r.rows.push_back({std::to_string(i + 1), ade_type(c).name(), join_ints(root), std::to_string(h)});
    }
  }
  if (!any) throw UsageError("roots needs an ADE component");
  return r;
}

inline Report beta_check_cmd(const Config& cfg, const Flags&) {
  const SurfaceModel m = cfg.model();
  const DivisorClass beta = cfg.beta(m);
  Report r;
  r.notes.push_back("beta = " + to_string(beta));
  r.header = {"quantity", "component", "range", "value", "status"};
  const auto c42 = check_condition_4_2(beta, m);
  for (const auto& v : c42.violations) {
    r.rows.push_back({"subset-integrality", std::to_string(v.component + 1), v.range_text(), to_string(v.value),
                      "violation"});
    r.notes.push_back("violation: component " + std::to_string(v.component + 1) + ", range " + v.range_text() +
                      ", value " + to_string(v.value));
  }
  r.rows.push_back({"subset-integrality", "-", "-", "-", c42.passed ? "pass" : "fail"});
  if (!c42.passed) r.status = kViolation;

  std::optional<KTable> k;
  try {
    k = compute_k(beta, m);
  } catch (const PreconditionError& e) {
    r.rows.push_back({"k", "-", "-", "-", "undefined"});
  }
  if (k)
    for (const auto& [id, value] : *k)
      r.rows.push_back({"k", std::to_string(id.component + 1), std::to_string(id.curve + 1), value.str(), "ok"});

  bool chains = true;
  for (const auto& c : m.components()) chains = chains && is_chain_like(c);
  if (!chains) {
    r.rows.push_back({"subchain-window", "-", "-", "-", "not-applicable"});
  } else if (!k) {
    r.rows.push_back({"subchain-window", "-", "-", "-", "fail"});
    r.status = kViolation;
  } else {
    const auto c52 = check_condition_5_2(beta, m);
    for (const auto& v : c52.violations) {
      r.rows.push_back(
          {"subchain-window", std::to_string(v.component + 1), v.range_text(), to_string(v.value), "violation"});
      r.notes.push_back("window violation: component " + std::to_string(v.component + 1) + ", range " +
                        v.range_text() + ", value " + to_string(v.value));
    }
    r.rows.push_back({"subchain-window", "-", "-", "-", c52.passed ? "pass" : "fail"});
    if (!c52.passed) r.status = kViolation;
  }
  return r;
}

inline Report witness_beta_cmd(const Config& cfg, const Flags&) {
  const SurfaceModel m = cfg.model();
  const KTable k = cfg.task_k(m);
  const Rational eps = cfg.has_task("eps") ? cfg.task_rational("eps") : Rational(1, 8);
  const DivisorClass beta = witness_beta(m, k, eps);
  Report r;
  r.notes.push_back("eps = " + to_string(eps));
  r.notes.push_back("beta = " + to_string(beta));
  r.header = {"curve", "k", "beta.C", "coefficient"};
  for (const auto& id : m.curves())
    r.rows.push_back({curve_name(id), k.at(id).str(), to_string(intersect(beta, DivisorClass::curve(id), m)),
                      to_string(beta.coefficient(id))});
  return r;
}

inline Report vanishing_cmd(const Config& cfg, const Flags&) {
  const SurfaceModel m = cfg.model();
  const DivisorClass beta = cfg.beta(m);
  const Integer window = cfg.has_task("window") ? cfg.task_integer("window") : Integer(4);
  const auto res = verify_no_vanishing(beta, m, window);
  Report r;
  r.notes.push_back("beta = " + to_string(beta));
  r.header = {"quantity", "value"};
  r.rows.push_back({"window", window.str()});
  r.rows.push_back({"classes-checked", std::to_string(res.classes_checked)});
  if (res.witness) {
    r.rows.push_back({"witness", to_string(*res.witness)});
    r.status = kViolation;
  }
  return r;
}

inline Report charge_cmd(const Config& cfg, const Flags&) {
  const SurfaceModel m = cfg.model();
  const DivisorClass beta = cfg.beta(m);
  const ChernCharacter v = cfg.task_class(m);
  Report r;
  r.header = {"quantity", "value"};
  r.rows.push_back({"class", to_string(v)});
  r.rows.push_back({"beta", to_string(beta)});
  ChargeValue z;
  Slopes sl;
  std::optional<Rational> lead;
  if (cfg.has_task("s")) {
    const RayParams ray(beta, cfg.task_rational("s"));
    z = ray_charge(v, ray, m);
    sl = slopes(v, ray, m);
    lead = psi_leading_term(v, ray, m);
    r.rows.push_back({"omega", to_string(DivisorClass::pullback(ray.s))});
  } else {
    const DivisorClass omega = cfg.has_task("omega") ? cfg.task_divisor("omega", m) : DivisorClass::pullback(1);
    z = central_charge(v, beta, omega, m);
    sl = slopes(v, beta, omega, m);
    r.rows.push_back({"omega", to_string(omega)});
  }
  r.rows.push_back({"re", to_string(z.re)});
  r.rows.push_back({"im", to_string(z.im)});
  r.rows.push_back({"quadrant", to_string(z.quadrant())});
  r.rows.push_back({"mu", opt_text(sl.mu)});
  r.rows.push_back({"lambda", opt_text(sl.lambda)});
  r.rows.push_back({"psi", opt_text(sl.psi)});
  if (cfg.has_task("s")) r.rows.push_back({"psi-leading", opt_text(lead)});
  r.rows.push_back({"weak-bg", weak_bg_holds(v, beta, m) ? "holds" : "fails"});
  return r;
}

inline SupportConstants constants_for(const Config& cfg, const SurfaceModel& m, const DivisorClass& beta,
                                      std::vector<std::string>* notes) {
  SupportConstants c = compute_constants(beta, m, cfg.generators(m));
  if (auto n = cfg.n_override()) {
    if (notes) notes->push_back("N overridden: computed " + c.N.str() + ", using " + n->str());
    set_n(c, *n);
  }
  return c;
}

inline void constant_rows(Report& r, const SupportConstants& c) {
  r.rows.push_back({"M", to_string(Rational(c.M))});
  r.rows.push_back({"A", to_string(c.A)});
  r.rows.push_back({"delta^2", to_string(c.delta_sq)});
  r.rows.push_back({"N1", to_string(c.N1)});
  r.rows.push_back({"N5", to_string(c.N5)});
  r.rows.push_back({"P", to_string(c.P)});
  r.rows.push_back({"L", to_string(c.L)});
  r.rows.push_back({"N", to_string(Rational(c.N))});
  r.rows.push_back({"eps", to_string(c.eps)});
  r.rows.push_back({"B", to_string(c.B)});
}

inline Report constants_cmd(const Config& cfg, const Flags&) {
  const SurfaceModel m = cfg.model();
  const DivisorClass beta = cfg.beta(m);
  Report r;
  r.notes.push_back("beta = " + to_string(beta));
  const auto c = constants_for(cfg, m, beta, &r.notes);
  r.header = {"constant", "value"};
  constant_rows(r, c);
  return r;
}

inline Report claim_cmd(const Config& cfg, const Flags&) {
  const SurfaceModel m = cfg.model();
  const DivisorClass beta = cfg.beta(m);
  Report r;
  const auto c = constants_for(cfg, m, beta, &r.notes);
  const auto claim = verify_claim(c);
  r.notes.push_back("form (1-eps)x^2 - (2 delta P/N + 2 eps)xy + (2 delta/(MN) - eps)y^2");
  r.notes.push_back("discriminant = u + v*delta");
  r.header = {"quantity", "value"};
  r.rows.push_back({"N", c.N.str()});
  r.rows.push_back({"eps", to_string(c.eps)});
  r.rows.push_back({"delta^2", to_string(c.delta_sq)});
  r.rows.push_back({"u", to_string(claim.u)});
  r.rows.push_back({"v", to_string(claim.v)});
  r.rows.push_back({"leading", claim.leading_positive ? "positive" : "non-positive"});
  r.rows.push_back({"discriminant-sign", std::to_string(claim.discriminant_sign)});
  r.rows.push_back({"trailing-sign", std::to_string(claim.trailing_sign)});
  r.rows.push_back({"positive-definite", claim.passed ? "yes" : "no"});
  if (!claim.passed) r.status = kViolation;
  return r;
}

inline Report quadratic_cmd(const Config& cfg, bool full) {
  const SurfaceModel m = cfg.model();
  const DivisorClass beta = cfg.beta(m);
  const ChernCharacter v = cfg.task_class(m);
  Report r;
  const auto c = constants_for(cfg, m, beta, &r.notes);
  r.header = {"quantity", "value"};
  r.rows.push_back({"class", to_string(v)});
  r.rows.push_back({"Q0", to_string(q0(v, beta, c, m))});
  if (full) {
    r.rows.push_back({"Re Z", to_string(central_charge(v, beta, DivisorClass::pullback(1), m).re)});
    r.rows.push_back({"Q", to_string(q_full(v, beta, c, m))});
  }
  return r;
}

inline Report kernel_check_cmd(const Config& cfg, const Flags&) {
  const SurfaceModel m = cfg.model();
  const DivisorClass beta = cfg.beta(m);
  Report r;
  const auto c = constants_for(cfg, m, beta, &r.notes);
  std::vector<Rational> samples{1};
  if (cfg.has_task("s_values"))
    samples = cfg.task_rationals("s_values");
  else if (cfg.has_task("s"))
    samples = {cfg.task_rational("s")};
  FormChoice form = FormChoice::Q;
  if (cfg.has_task("form")) {
    const std::string f = cfg.task_string("form");
    if (f == "q0")
      form = FormChoice::Q0;
    else if (f != "q")
      throw UsageError("task.form must be q or q0");
  }
  r.notes.push_back(std::string("form ") + (form == FormChoice::Q ? "Q" : "Q0") + " on ker Z_{beta, s f*eta}");
  r.header = {"s", "leading-minors", "negative-definite"};
  for (const auto& s : samples) {
    const auto rep = kernel_negdef(beta, c, m, s, form);
    r.rows.push_back({to_string(s), join_rationals(rep.minors), rep.negative_definite ? "yes" : "no"});
    if (!rep.negative_definite) r.status = kViolation;
  }
  return r;
}

inline Report classify_cmd(const Config& cfg, const Flags&) {
  const SurfaceModel m = cfg.model();
  const DivisorClass beta = cfg.beta(m);
  const auto range = cfg.task_curves();
  if (range.component < 0 || range.component >= static_cast<int>(m.components().size()))
    throw ConfigurationError("task.curves.component: unknown component " + std::to_string(range.component + 1));
  const TorsionSide side = classify_chain_line_bundle(range.component, range.first, range.last, range.degrees, beta, m);
  const ChernCharacter v = class_of_chain_bundle(range.component, range.first, range.last, range.degrees, m);
  Report r;
  r.header = {"quantity", "value"};
  std::string degs;
  for (std::size_t i = 0; i < range.degrees.size(); ++i) degs += (i ? " " : "") + range.degrees[i].str();
  r.rows.push_back({"degrees", degs});
  r.rows.push_back({"class", to_string(v)});
  r.rows.push_back({"ch2^beta", to_string(twist(v, beta, m).c)});
  r.rows.push_back({"side", to_string(side)});
  return r;
}

inline Report walls_cmd(const Config& cfg, const Flags& flags) {
  const SurfaceModel m = cfg.model();
  const DivisorClass beta = cfg.beta(m);
  const ChernCharacter v = cfg.task_class(m);
  const SearchBox box = flags.box.empty() ? cfg.task_box() : parse_box(flags.box);
  SRange range;
  if (!flags.s_range.empty())
    range = parse_s_range(flags.s_range);
  else if (cfg.has_task("s_range"))
    range = parse_s_range(cfg.task_string("s_range"));
  const bool strict = flags.strict || cfg.task_bool("strict", false);
  const auto scan = wall_scan(v, beta, m, box, range, strict);
  Report r;
  r.notes.push_back("v = " + to_string(v));
  r.notes.push_back("beta = " + to_string(beta));
  r.notes.push_back("box " + box.describe());
  r.notes.push_back("s in (" + to_string(range.lo) + ", " + to_string(range.hi) + "]" +
                    (strict ? ", strict filter" : ""));
  r.header = {"quantity", "value", "role", "class", "count"};
  if (scan.degenerate) {
    r.rows.push_back({"degenerate", "phase-one", "v", to_string(v), "0"});
    return r;
  }
  for (const auto& w : scan.walls)
    r.rows.push_back({"s^2", to_string(w.s_sq), "w", to_string(w.representative), std::to_string(w.multiplicity)});
  return r;
}

}  // namespace commands

inline const std::map<std::string, std::function<Report(const Config&, const Flags&)>>& command_table() {
  static const std::map<std::string, std::function<Report(const Config&, const Flags&)>> table{
      {"validate", commands::validate_cmd},
      {"fundcycle", commands::fundcycle_cmd},
      {"roots", commands::roots_cmd},
      {"beta-check", commands::beta_check_cmd},
      {"witness-beta", commands::witness_beta_cmd},
      {"vanishing", commands::vanishing_cmd},
      {"charge", commands::charge_cmd},
      {"constants", commands::constants_cmd},
      {"claim", commands::claim_cmd},
      {"q0", [](const Config& c, const Flags&) { return commands::quadratic_cmd(c, false); }},
      {"q", [](const Config& c, const Flags&) { return commands::quadratic_cmd(c, true); }},
      {"kernel-check", commands::kernel_check_cmd},
      {"classify", commands::classify_cmd},
      {"walls", commands::walls_cmd},
  };
  return table;
}

/// Runs one command; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact numerics for stability conditions on surfaces with contracted curves", "chainstab"};
  std::string command, config_path, csv_path;
  Flags flags;
  std::vector<std::string> names;
  for (const auto& [name, fn] : command_table()) names.push_back(name);
  app.add_option("command", command, "one of: validate fundcycle roots beta-check witness-beta vanishing charge "
                                     "constants claim q0 q kernel-check classify walls")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("config", config_path, "YAML configuration file")->required();
  app.add_option("--csv", csv_path, "also write the result table as CSV");
  app.add_option("--box", flags.box, "search box RANK,CH1,CH2[,CH1_DENOMINATOR] for walls");
  app.add_option("--s-range", flags.s_range, "ray interval a/b..c/d (lower end excluded) for walls");
  app.add_flag("--strict-mode", flags.strict, "walls: also require weak BG for the quotient class");

  std::vector<std::string> argv_store{"chainstab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const Config cfg = Config::load(config_path);
    const Report report = command_table().at(command)(cfg, flags);
    write_table(command, report, out);
    if (!csv_path.empty()) {
      std::ofstream f(csv_path, std::ios::binary);
      if (!f) throw UsageError("cannot write CSV file " + csv_path);
      write_csv(report, f);
    }
    return report.status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigurationError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const UnsupportedConfiguration& e) {
    err << "unsupported configuration: " << e.what() << "\n";
    return kConfig;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kViolation;
  }
}

}  // namespace chainstab::cli
