#include "cybelab/suites.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <sstream>

#include "cybelab/completed.hpp"
#include "cybelab/cybe.hpp"
#include "cybelab/dsl.hpp"
#include "cybelab/errors.hpp"
#include "cybelab/manin.hpp"

namespace cybelab {

// ---------------------------------------------------------------- config

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cybe",  "compat",    "shift",  "stolin",    "lemma3",
                                              "gram",  "calibrate", "manin",  "decompose", "explore-z"};
  return names;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Scalar parse_scalar(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty rational");
  std::size_t i = t[0] == '-' || t[0] == '+' ? 1 : 0;
  bool slash = false;
  if (i == t.size()) throw ConfigError("malformed rational '" + t + "'");
  for (; i < t.size(); ++i) {
    if (t[i] == '/' && !slash && i + 1 < t.size()) {
      slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw ConfigError("malformed rational '" + t + "'");
  }
  const auto slash_at = t.find('/');
  if (slash_at != std::string::npos && t.find_first_not_of('0', slash_at + 1) == std::string::npos)
    throw ConfigError("zero denominator in '" + t + "'");
  Scalar s(t[0] == '+' ? t.substr(1) : t);
  s.canonicalize();
  return s;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string pencil_label(const PencilCoeffs& a) {
  if (!a.is_numeric()) return "symbolic";
  return a.a1.constant_term().get_str() + "_" + a.a2.constant_term().get_str() + "_" + a.a3.constant_term().get_str();
}

}  // namespace

PencilCoeffs parse_pencil(const std::string& text) {
  if (trim(text) == "symbolic") return PencilCoeffs::symbolic();
  const auto parts = split_commas(text);
  if (parts.size() != 3) throw ConfigError("pencil needs three comma-separated rationals, got '" + text + "'");
  PencilCoeffs a = PencilCoeffs::of(parse_scalar(parts[0]), parse_scalar(parts[1]), parse_scalar(parts[2]));
  if (a.is_zero()) throw ConfigError("pencil coefficients are all zero");
  return a;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_config(SuiteConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "window") {
    try {
      std::size_t used = 0;
      const int n = std::stoi(value, &used);
      if (used != value.size() || n < 1 || n > 40) throw ConfigError("");
      cfg.window = n;
    } catch (const std::exception&) {
      throw ConfigError("window must be an integer in [1, 40], got '" + value + "'");
    }
  } else if (key == "pencil") {
    cfg.pencil = parse_pencil(value);
  } else if (key == "seed") {
    try {
      std::size_t used = 0;
      const unsigned long long s = std::stoull(value, &used);
      if (used != value.size() || value.empty() || value[0] == '-') throw ConfigError("");
      cfg.seed = s;
    } catch (const std::exception&) {
      throw ConfigError("seed must be a non-negative integer, got '" + value + "'");
    }
  } else if (key == "format") {
    if (value != "text" && value != "machine") throw ConfigError("format must be text or machine");
    cfg.format = value;
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "expr") {
    cfg.expr = value;
  } else if (key == "z") {
    const auto parts = split_commas(value);
    if (parts.size() != 2) throw ConfigError("z needs two comma-separated rationals");
    Scalar z1 = parse_scalar(parts[0]), z2 = parse_scalar(parts[1]);
    if (z1 == z2 || sgn(z1) == 0 || sgn(z2) == 0) throw ConfigError("z points must be distinct and nonzero");
    cfg.z = {z1, z2};
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

std::map<std::string, std::string> SuiteConfig::echo() const {
  std::map<std::string, std::string> m;
  m["window"] = window ? std::to_string(*window) : "default";
  m["pencil"] = pencil ? pencil->to_string() : "default";
  m["seed"] = std::to_string(seed);
  if (!expr.empty()) m["expr"] = expr;
  if (z) m["z"] = z->first.get_str() + "," + z->second.get_str();
  return m;
}

// ---------------------------------------------------------------- helpers

namespace {

using Checks = std::vector<CheckRecord>;

struct Task {
  std::string id;
  std::function<Checks()> fn;
};

// Runs tasks concurrently; an exception becomes a failing record of that task.
Checks run_tasks(std::vector<Task> tasks) {
  std::vector<std::future<Checks>> futures;
  futures.reserve(tasks.size());
  for (auto& t : tasks)
    futures.push_back(std::async(std::launch::async, [t]() -> Checks {
      try {
        return t.fn();
      } catch (const std::exception& e) {
        return {CheckRecord::fail(t.id + ".error", std::string("exception: ") + e.what())};
      }
    }));
  Checks out;
  for (auto& f : futures) {
    Checks c = f.get();
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

CheckRecord verdict(const std::string& id, bool ok, const std::string& witness, const std::string& detail = {}) {
  return ok ? CheckRecord::pass(id, detail) : CheckRecord::fail(id, witness.empty() ? "unspecified" : witness, detail);
}

std::string bracket_witness(const Bracket3Result& b) { return b.witness ? b.witness->to_string() : "zero"; }

const PencilCoeffs kAnchor = PencilCoeffs::of(1, 0, -1);

R2Variant resolved_r2() { return resolve_r2_variant().value_or(R2Variant::Minus); }

ConventionProfile best_profile() { return calibrate_conventions(kAnchor).chosen; }

// ---------------------------------------------------------------- cybe

Checks suite_cybe(const SuiteConfig& cfg) {
  std::vector<Task> tasks;
  const std::array<std::array<Scalar, 3>, 3> points{{{2, 5, -3}, {Scalar(1, 2), 7, 3}, {-4, Scalar(1, 3), 2}}};
  for (const auto& name : catalog_names()) {
    tasks.push_back({"cybe." + name, [name, points]() -> Checks {
                       const RMatrixDef r = make(name);
                       const Bracket3Result b = cybe_bracket(r);
                       // Second route: evaluate r first and bracket over Q.
                       bool routes = true;
                       std::string route_witness;
                       for (const auto& p : points) {
                         const Tensor3<Scalar> lhs = evaluate_at(b.tensor, p[0], p[1], p[2]);
                         const Tensor3<Scalar> rhs = cybe_at_point(r, p[0], p[1], p[2]);
                         if (!(lhs == rhs) && routes) {
                           routes = false;
                           route_witness = "at (" + p[0].get_str() + "," + p[1].get_str() + "," + p[2].get_str() +
                                           "): symbolic " + lhs.to_string() + " vs pointwise " + rhs.to_string();
                         }
                       }
                       Checks c;
                       c.push_back(verdict("cybe." + name + ".routes", routes, route_witness));
                       const bool r2 = name == "r2_plus" || name == "r2_minus";
                       if (r2 && !b.zero)
                         c.push_back(CheckRecord::note("cybe." + name + ".zero",
                                                       "non-solution, CYBE witness " + bracket_witness(b)));
                       else
                         c.push_back(verdict("cybe." + name + ".zero", b.zero, bracket_witness(b)));
                       return c;
                     }});
  }
  tasks.push_back({"cybe.r2_exactly_one", []() -> Checks {
                     const bool p = cybe_bracket(make("r2_plus")).zero, m = cybe_bracket(make("r2_minus")).zero;
                     return {verdict("cybe.r2_exactly_one", p != m,
                                     std::string("r2_plus ") + (p ? "zero" : "nonzero") + ", r2_minus " +
                                         (m ? "zero" : "nonzero"),
                                     p != m ? "solution: " + std::string(p ? "r2_plus" : "r2_minus") : "")};
                   }});
  if (!cfg.expr.empty()) {
    const std::string expr = cfg.expr;
    tasks.push_back({"cybe.expr", [expr]() -> Checks {
                       const RMatrixDef r{"expr", parse_tensor(expr), expr};
                       const Bracket3Result b = cybe_bracket(r);
                       return {verdict("cybe.expr", b.zero, bracket_witness(b), print_tensor(r.tensor))};
                     }});
  }
  return run_tasks(std::move(tasks));
}

// ---------------------------------------------------------------- compat

Checks compat_pairs(const std::string& prefix, const std::vector<RMatrixDef>& rs) {
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      const std::string id = prefix + "." + rs[i].name + "." + rs[j].name;
      const RMatrixDef a = rs[i], b = rs[j];
      tasks.push_back({id, [id, a, b]() -> Checks {
                         const Bracket3Result m = mixed_schouten(a, b);
                         return {verdict(id, m.zero, bracket_witness(m))};
                       }});
    }
  return run_tasks(std::move(tasks));
}

Checks suite_compat(const SuiteConfig&) {
  Checks out = compat_pairs("compat.pencil", {make("r1"), make(r2_name(resolved_r2())), make("r3")});
  auto triple = stolin_triple(true);
  triple[1].name = "r2_stolin";
  Checks st = compat_pairs("compat.stolin", triple);
  out.insert(out.end(), st.begin(), st.end());
  // control: h(x)h/(l-m) solves CYBE but is not compatible with r1
  const RMatrixDef hh{"hh", elementary<RatFn>(Basis::H, Basis::H,
                                              RatFn::fraction(MPoly(1), MPoly::var(Var::L) - MPoly::var(Var::M))),
                      ""};
  const Bracket3Result m = mixed_schouten(hh, make("r1"));
  out.push_back(verdict("compat.control.hh_r1_incompatible", !m.zero, "mixed bracket vanishes"));
  return out;
}

// ---------------------------------------------------------------- shift

Checks suite_shift(const SuiteConfig& cfg) {
  Checks out;
  const RMatrixDef r1 = make("r1"), r2 = make(r2_name(resolved_r2())), r3 = make("r3");
  const int s = weyl_sign(r1, r3);
  out.push_back(verdict("shift.invert_weyl_r1", s == -1,
                        "invert_weyl(r1) sign " + std::to_string(s) + ", expected -1 relative to r3"));
  const RatFn E = RatFn::var(Var::E);
  const Tensor2<RatFn> want = r3.tensor + E * r2.tensor + (E * E) * r1.tensor;
  const Tensor2<RatFn> got = tau_shift(r3).tensor;
  out.push_back(verdict("shift.tau_r3", got == want, "difference " + (got - want).to_string()));
  const PencilCoeffs a = PencilCoeffs::symbolic();
  const PencilCoeffs sa = pencil_shift_action(a);
  out.push_back(verdict("shift.discriminant", sa.discriminant() == a.discriminant(),
                        "shifted " + sa.discriminant().to_string() + " vs " + a.discriminant().to_string()));
  const R2Variant v = resolved_r2();
  const Tensor2<RatFn> lhs = tau_shift(pencil(a, v)).tensor, rhs = pencil(sa, v).tensor;
  out.push_back(verdict("shift.pencil_action", lhs == rhs, "difference " + (lhs - rhs).to_string()));
  const int n = cfg.window.value_or(5);
  const Rect src = Rect::square(n + 2), win = Rect::square(n);
  const MPoly Ep = MPoly::var(Var::E);
  for (const bool rbar : {false, true}) {
    auto build = [&](int i, const Rect& w) { return rbar ? build_rbar(i, w) : build_t(i, w); };
    const CompletedTensor2 shifted = shift_series(build(3, src), win);
    const CompletedTensor2 expect = build(3, win) + Ep * build(2, win) + (Ep * Ep) * build(1, win);
    std::string witness;
    for (int i = win.lo1; i <= win.hi1 && witness.empty(); ++i)
      for (int j = win.lo2; j <= win.hi2 && witness.empty(); ++j)
        if (!(shifted.at(i, j) == expect.at(i, j)))
          witness = "(" + std::to_string(i) + "," + std::to_string(j) + "): " + shifted.at(i, j).to_string() +
                    " vs " + expect.at(i, j).to_string();
    out.push_back(verdict(rbar ? "shift.series_rbar3" : "shift.series_t3", witness.empty(), witness));
  }
  return out;
}

// ---------------------------------------------------------------- stolin

Checks suite_stolin(const SuiteConfig&) {
  std::vector<Task> tasks;
  for (const auto& name : {"r1_stolin_const", "r1_stolin_lin", "r3_stolin_const", "r3_stolin_lin"}) {
    const std::string id = std::string("stolin.") + name + ".cybe";
    tasks.push_back({id, [id, name]() -> Checks {
                       const Bracket3Result b = cybe_bracket(make(name));
                       return {verdict(id, b.zero, bracket_witness(b))};
                     }});
  }
  for (const auto& name : {"r3_stolin_const", "r3_stolin_lin"}) {
    const std::string id = std::string("stolin.") + name + ".printed_form";
    tasks.push_back({id, [id, name]() -> Checks {
                       const RMatrixDef printed = make_printed(name);
                       const Bracket3Result b = cybe_bracket(printed);
                       const bool same = printed.tensor == make(name).tensor;
                       return {CheckRecord::note(id, std::string(same ? "matches" : "differs from") +
                                                         " the derived form; printed CYBE " +
                                                         (b.zero ? "zero" : "nonzero: " + bracket_witness(b)))};
                     }});
  }
  tasks.push_back({"stolin.derivation", []() -> Checks {
                     const int s1 = weyl_sign(make("r1_stolin_const"), make("r3_stolin_lin"));
                     const int s2 = weyl_sign(make("r1_stolin_lin"), make("r3_stolin_const"));
                     return {verdict("stolin.derivation", s1 == -1 && s2 == -1,
                                     "signs " + std::to_string(s1) + ", " + std::to_string(s2))};
                   }});
  Checks out = run_tasks(std::move(tasks));
  auto triple = stolin_triple(true);
  triple[1].name = "r2_stolin";
  Checks tc = compat_pairs("stolin.triple", triple);
  out.insert(out.end(), tc.begin(), tc.end());
  return out;
}

// ---------------------------------------------------------------- lemma3

Checks suite_lemma3(const SuiteConfig& cfg) {
  std::vector<std::pair<PencilCoeffs, int>> runs;
  const int n = cfg.window.value_or(8);
  if (cfg.pencil) {
    runs.emplace_back(*cfg.pencil, n);
  } else {
    runs.emplace_back(PencilCoeffs::symbolic(), std::min(n, 5));
    for (const auto& a : {kAnchor, PencilCoeffs::of(0, 0, 1), PencilCoeffs::of(1, 1, 1)}) runs.emplace_back(a, n);
  }
  std::vector<Task> tasks;
  for (const auto& [a, w] : runs) {
    const std::string id = "lemma3." + pencil_label(a) + ".N" + std::to_string(w);
    tasks.push_back({id, [id, a = a, w = w]() -> Checks {
                       const Lemma3Report rep = lemma3_check(a, w);
                       std::string witness;
                       if (!rep.diffs.empty()) {
                         const auto& d = rep.diffs.front();
                         witness = "(" + std::to_string(d.degree[0]) + "," + std::to_string(d.degree[1]) + "," +
                                   std::to_string(d.degree[2]) + "): lhs " + d.lhs + ", rhs " + d.rhs + "; " +
                                   std::to_string(rep.diff_count) + " of " + std::to_string(rep.checked) +
                                   " tridegrees differ";
                       }
                       Checks c{verdict(id, rep.equal, witness)};
                       c.push_back(CheckRecord::note(
                           id + ".opposite_sign",
                           rep.opposite ? "lhs + rhs vanishes on the whole cube"
                                        : std::to_string(rep.opposite_diff_count) + " tridegrees with lhs + rhs nonzero"));
                       return c;
                     }});
  }
  const int cn = cfg.window ? std::min(*cfg.window, 6) : 6;
  for (const auto shape : {CyclicShape::Rational, CyclicShape::Inverse}) {
    const std::string id = std::string("lemma3.cyclic.") + (shape == CyclicShape::Rational ? "rational" : "inverse");
    tasks.push_back({id, [id, shape, cn]() -> Checks {
                       const CyclicReport lit = cyclic_identity_check(shape, cn, CyclicReading::Literal);
                       std::string witness;
                       if (!lit.samples.empty()) {
                         const auto& [d, v] = lit.samples.front();
                         witness = "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + "," +
                                   std::to_string(d[2]) + ") = " + v.get_str() + "; " + std::to_string(lit.nonzero) +
                                   " nonzero coefficients";
                       }
                       const CyclicReport common = cyclic_identity_check(shape, cn, CyclicReading::CommonRegion);
                       return {verdict(id, lit.vanishes, witness),
                               CheckRecord::note(id + ".common_region",
                                                 common.vanishes ? "vanishes when all factors share one region"
                                                                 : std::to_string(common.nonzero) + " nonzero")};
                     }});
  }
  return run_tasks(std::move(tasks));
}

// ---------------------------------------------------------------- gram

Checks suite_gram(const SuiteConfig& cfg) {
  const ConventionProfile p = best_profile();
  const int n = cfg.window.value_or(20);
  std::vector<PencilCoeffs> pencils{PencilCoeffs::of(1, 0, 0), kAnchor};
  if (cfg.pencil && cfg.pencil->is_numeric()) pencils = {*cfg.pencil};
  std::vector<Task> tasks;
  for (const auto& a : pencils) {
    const std::string label = pencil_label(a);
    tasks.push_back({"gram.readout." + label, [label, a, p]() -> Checks {
                       const auto spec = PairingSpec::general(a, p);
                       const auto b = b_coeffs(a, -12, 12, p.b_point);
                       std::string witness;
                       for (int i = -6; i <= 6 && witness.empty(); ++i)
                         for (int j = -6; j <= 6 && witness.empty(); ++j) {
                           const Scalar x =
                               pairing_eval(LoopElt::monomial(Basis::E, i), LoopElt::monomial(Basis::F, j), spec);
                           auto it = b.find(i + j);
                           const Scalar y = it == b.end() ? Scalar(0) : it->second.constant_value();
                           if (x != y)
                             witness = "<e l^" + std::to_string(i) + ", f l^" + std::to_string(j) + "> = " +
                                       x.get_str() + ", b_" + std::to_string(i + j) + " = " + y.get_str();
                         }
                       return {verdict("gram.readout." + label, witness.empty(), witness)};
                     }});
    tasks.push_back({"gram.inverse." + label, [label, a, p, n]() -> Checks {
                       const GramReport g = gram_inverse_check(a, n, p.b_point);
                       const std::string id = "gram.inverse." + label + ".N" + std::to_string(n);
                       return {verdict(id, g.identity, g.failures.empty() ? "" : g.failures.front(),
                                       "interior block size " + std::to_string(2 * g.interior + 1))};
                     }});
  }
  tasks.push_back({"gram.inverse.symbolic", [p]() -> Checks {
                     const GramReport g = gram_inverse_check(PencilCoeffs::symbolic(), 6, p.b_point);
                     return {verdict("gram.inverse.symbolic.N6", g.identity, g.failures.empty() ? "" : g.failures.front())};
                   }});
  return run_tasks(std::move(tasks));
}

// ---------------------------------------------------------------- calibrate

Checks calibration_records(const std::string& prefix, const CalibrationResult& cal) {
  Checks out;
  std::string witness;
  if (cal.status != CalibrationResult::Status::Unique) {
    std::ostringstream os;
    os << "status " << status_name(cal.status) << "; best " << cal.chosen.to_string();
    for (const auto& c : cal.certificates)
      if (c.profile == cal.chosen)
        for (const auto& k : c.checks)
          if (!k.pass) os << "; fails '" << k.name << "': " << k.witness;
    witness = os.str();
  }
  out.push_back(verdict(prefix + ".unique", cal.status == CalibrationResult::Status::Unique, witness,
                        "chosen " + cal.chosen.to_string()));
  for (std::size_t i = 0; i < cal.certificates.size(); ++i) {
    const auto& c = cal.certificates[i];
    std::ostringstream os;
    os << c.profile.to_string();
    for (const auto& k : c.checks) {
      os << "; " << k.name << ": " << (k.pass ? "pass" : "fail") << " " << k.checked - k.failed << "/" << k.checked;
      if (!k.pass) os << " (" << k.witness << ")";
    }
    out.push_back(CheckRecord::note(prefix + ".profile" + std::to_string(i), os.str()));
  }
  return out;
}

Checks suite_calibrate(const SuiteConfig& cfg) {
  return calibration_records("calibrate", calibrate_conventions(cfg.pencil.value_or(kAnchor)));
}

// ---------------------------------------------------------------- manin

std::string first_or_empty(const std::vector<std::string>& xs) { return xs.empty() ? "" : xs.front(); }

Checks suite_manin(const SuiteConfig& cfg) {
  const PencilCoeffs a = cfg.pencil && cfg.pencil->is_numeric() ? *cfg.pencil : kAnchor;
  const int n = cfg.window.value_or(6);
  const CalibrationResult cal = calibrate_conventions(a);
  const ConventionProfile p = cal.chosen;
  const PairingSpec spec = PairingSpec::general(a, p);
  Checks out = calibration_records("manin.calibration", cal);
  std::vector<Task> tasks;
  tasks.push_back({"manin.r_fixes_negative", [a, p, n]() -> Checks {
                     std::string w;
                     std::size_t count = 0;
                     for (const auto& x : negative_truncation(n).elements) {
                       ++count;
                       const LoopElt rx = r_operator(x, a, p);
                       if (!(rx == x) && w.empty()) w = "R(" + x.to_string() + ") = " + rx.to_string();
                     }
                     return {verdict("manin.r_fixes_negative", w.empty(), w, std::to_string(count) + " vectors")};
                   }});
  tasks.push_back({"manin.r_negates_f", [a, p, n]() -> Checks {
                     std::string w;
                     for (int k = 1; k <= n; ++k) {
                       const LoopElt x = LoopElt::monomial(Basis::F, k), rx = r_operator(x, a, p);
                       if (!(rx == Scalar(-1) * x) && w.empty()) w = "R(" + x.to_string() + ") = " + rx.to_string();
                     }
                     return {verdict("manin.r_negates_f", w.empty(), w)};
                   }});
  tasks.push_back({"manin.r_squared", [a, p]() -> Checks {
                     std::string w, routes;
                     for (int k = -8; k <= 8; ++k)
                       for (Basis x : kBasis) {
                         const LoopElt A = LoopElt::monomial(x, k), RA = r_operator(A, a, p);
                         const LoopElt RRA = r_operator(RA, a, p);
                         if (!(RRA == A) && w.empty()) w = "R^2(" + A.to_string() + ") = " + RRA.to_string();
                         const LoopElt alt = r_operator_series(A, a, p, -12, 12);
                         if (!(alt == RA) && routes.empty())
                           routes = A.to_string() + ": four-term " + RA.to_string() + ", series " + alt.to_string();
                       }
                     return {verdict("manin.r_squared", w.empty(), w), verdict("manin.r_routes", routes.empty(), routes)};
                   }});
  tasks.push_back({"manin.explicit_stable", [a, p]() -> Checks {
                     const StableComparison c = compare_stable(a, p, 8, IndexReading::Printed);
                     const StableComparison r = compare_stable(a, p, 8, IndexReading::Reindexed);
                     std::string all;
                     for (const auto& d : c.disagreements) all += (all.empty() ? "" : "; ") + d;
                     // Disagreements are a named finding, not a failure.
                     return {c.agree() ? CheckRecord::pass("manin.explicit_stable",
                                                           std::to_string(c.checked) + " inputs, printed index reading")
                                       : CheckRecord::note("manin.explicit_stable",
                                                           std::to_string(c.disagreements.size()) + " of " +
                                                               std::to_string(c.checked) +
                                                               " inputs disagree under the printed index reading: " + all),
                             CheckRecord::note("manin.explicit_stable.reindexed",
                                               std::to_string(r.disagreements.size()) + " disagreements: " +
                                                   first_or_empty(r.disagreements))};
                   }});
  tasks.push_back({"manin.stable_eigen", [a, p, n]() -> Checks {
                     Checks c;
                     std::string dims, conds;
                     for (int k = 2; k <= std::max(2, n); ++k) {
                       const StableEigen e = stable_eigenspaces(a, p, k);
                       if ((e.plus_dim != 3 || !e.diagonalizable) && dims.empty())
                         dims = "N=" + std::to_string(k) + ": +1 dimension " + std::to_string(e.plus_dim) +
                                ", -1 dimension " + std::to_string(e.minus_dim);
                       if (!e.minus_conditions_hold && conds.empty()) conds = first_or_empty(e.violations);
                     }
                     c.push_back(verdict("manin.stable_plus_dim", dims.empty(), dims));
                     c.push_back(verdict("manin.stable_minus_conditions", conds.empty(), conds));
                     return c;
                   }});
  tasks.push_back({"manin.gplus_eigen", [a, p, n]() -> Checks {
                     std::string w;
                     std::size_t bad = 0;
                     const auto b = gplus_spanning(n);
                     for (const auto& x : b.elements) {
                       const LoopElt rx = r_operator(x, a, p);
                       if (!(rx == Scalar(-1) * x)) {
                         ++bad;
                         if (w.empty()) w = "R(" + x.to_string() + ") = " + rx.to_string();
                       }
                     }
                     if (bad) w += "; " + std::to_string(bad) + " of " + std::to_string(b.elements.size()) + " vectors";
                     return {verdict("manin.gplus_eigen", bad == 0, w)};
                   }});
  tasks.push_back({"manin.closure", [n]() -> Checks {
                     const ClosureReport c = bracket_closure(gplus_spanning(n), gplus_membership);
                     return {verdict("manin.closure", c.closed(), first_or_empty(c.failures),
                                     std::to_string(c.pairs) + " pairs")};
                   }});
  tasks.push_back({"manin.isotropy", [spec, n]() -> Checks {
                     const IsotropyReport g = isotropy_check(gplus_spanning(n), spec);
                     const IsotropyReport m = isotropy_check(negative_truncation(n), spec);
                     return {verdict("manin.isotropy.gplus", g.isotropic(), first_or_empty(g.nonzero),
                                     std::to_string(g.pairs) + " pairs"),
                             verdict("manin.isotropy.negative", m.isotropic(), first_or_empty(m.nonzero),
                                     std::to_string(m.pairs) + " pairs")};
                   }});
  tasks.push_back({"manin.duality", [spec, n]() -> Checks {
                     const DualityReport d = duality_rank(n, spec);
                     const std::string shape = std::to_string(d.rows) + "x" + std::to_string(d.cols);
                     return {verdict("manin.duality", d.full() && d.zero_rows.empty(),
                                     "rank " + std::to_string(d.rank) + " of " + shape, "rank " + std::to_string(d.rank) + ", " + shape)};
                   }});
  Checks rest = run_tasks(std::move(tasks));
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

// ---------------------------------------------------------------- decompose

Checks suite_decompose(const SuiteConfig& cfg) {
  const PencilCoeffs a = cfg.pencil && cfg.pencil->is_numeric() ? *cfg.pencil : kAnchor;
  const int n = cfg.window.value_or(6);
  const ConventionProfile p = calibrate_conventions(a).chosen;
  Checks out;
  std::size_t agree = 0, props = 0;
  std::string w, pw;
  const int inputs = 50;
  for (int i = 0; i < inputs; ++i) {
    const LoopElt A = random_loop(cfg.seed + static_cast<std::uint64_t>(i), n);
    const DecompositionPair d = decompose_both(A, a, p);
    if (d.agree()) {
      ++agree;
    } else if (w.empty()) {
      w = "seed " + std::to_string(cfg.seed + static_cast<std::uint64_t>(i)) + ": operator plus " +
          d.by_operator.plus.to_string() + ", solve plus " + d.by_solve.plus.to_string();
    }
    const bool ok = d.by_solve.plus + d.by_solve.minus == A && gplus_membership(d.by_solve.plus).member &&
                    (d.by_solve.minus.is_zero() || d.by_solve.minus.max_degree() <= 0);
    if (ok)
      ++props;
    else if (pw.empty())
      pw = "seed " + std::to_string(cfg.seed + static_cast<std::uint64_t>(i));
  }
  if (!w.empty()) w += "; " + std::to_string(inputs - static_cast<int>(agree)) + " of " + std::to_string(inputs) + " disagree";
  out.push_back(verdict("decompose.methods_agree", agree == static_cast<std::size_t>(inputs), w,
                        std::to_string(agree) + "/" + std::to_string(inputs) + " agree"));
  out.push_back(verdict("decompose.solve_properties", props == static_cast<std::size_t>(inputs), pw));
  struct Example {
    const char* id;
    LoopElt input, plus, minus;
  };
  const LoopElt h = LoopElt::monomial(Basis::H, 0), h2 = LoopElt::monomial(Basis::H, 2),
                f1 = LoopElt::monomial(Basis::F, 1);
  for (const auto& ex : {Example{"decompose.example.h", h, LoopElt(), h}, Example{"decompose.example.hl2", h2, h2 - h, h},
                         Example{"decompose.example.fl", f1, f1, LoopElt()}}) {
    const DecompositionPair d = decompose_both(ex.input, a, p);
    const bool ok = d.agree() && d.by_solve.plus == ex.plus && d.by_solve.minus == ex.minus;
    out.push_back(verdict(ex.id, ok,
                          "operator (" + d.by_operator.plus.to_string() + ", " + d.by_operator.minus.to_string() +
                              "), solve (" + d.by_solve.plus.to_string() + ", " + d.by_solve.minus.to_string() + ")"));
  }
  return out;
}

// ---------------------------------------------------------------- explore-z

Checks suite_explore_z(const SuiteConfig& cfg) {
  const auto z = cfg.z.value_or(std::pair<Scalar, Scalar>{2, 3});
  const int n = cfg.window.value_or(6);
  const SubspaceBasis b = generalized_gplus_basis(n, z.first, z.second);
  Checks out;
  std::string w;
  for (const auto& x : b.elements)
    if (!generalized_gplus_membership(x, z.first, z.second).member && w.empty()) w = x.to_string();
  out.push_back(verdict("explore-z.basis_members", w.empty() && basis_rank(b) == b.elements.size(), w,
                        std::to_string(b.elements.size()) + " basis vectors"));
  std::string sw;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const LoopElt A = random_loop(cfg.seed + s, 3);
    if (generalized_gplus_membership(A, 1, -1).member != gplus_membership(A).member && sw.empty())
      sw = "seed " + std::to_string(cfg.seed + s);
  }
  out.push_back(verdict("explore-z.specialization", sw.empty(), sw));
  // Conjecture evidence: reported, not asserted.
  std::size_t pairs = 0, closed = 0;
  for (std::size_t i = 0; i < b.elements.size(); ++i)
    for (std::size_t j = i + 1; j < b.elements.size(); ++j) {
      ++pairs;
      if (generalized_gplus_membership(loop_bracket(b.elements[i], b.elements[j]), z.first, z.second).member) ++closed;
    }
  out.push_back(CheckRecord::note("explore-z.closure", std::to_string(closed) + "/" + std::to_string(pairs) +
                                                           " brackets satisfy the shifted conditions"));
  // density (l - z1)(l - z2) = z1 z2 + 2 (-(z1 + z2)/2) l + l^2
  const PencilCoeffs dz = PencilCoeffs::of(z.first * z.second, -(z.first + z.second) / 2, 1);
  const IsotropyReport iso = isotropy_check(b, PairingSpec::general(dz, best_profile()));
  out.push_back(CheckRecord::note("explore-z.isotropy", std::to_string(iso.pairs - iso.nonzero.size()) + "/" +
                                                            std::to_string(iso.pairs) + " pairings vanish" +
                                                            (iso.nonzero.empty() ? "" : "; e.g. " + iso.nonzero.front())));
  return out;
}

}  // namespace

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  using Fn = Checks (*)(const SuiteConfig&);
  static const std::map<std::string, Fn> table{
      {"cybe", suite_cybe},     {"compat", suite_compat},       {"shift", suite_shift},
      {"stolin", suite_stolin}, {"lemma3", suite_lemma3},       {"gram", suite_gram},
      {"calibrate", suite_calibrate}, {"manin", suite_manin}, {"decompose", suite_decompose},
      {"explore-z", suite_explore_z}};
  auto it = table.find(name);
  if (it == table.end()) throw UnknownName("unknown suite '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.suite = name;
  r.seed = cfg.seed;
  r.config = cfg.echo();
  r.profile = best_profile().to_string();
  try {
    r.checks = it->second(cfg);
  } catch (const std::exception& e) {
    r.checks.push_back(CheckRecord::fail(name + ".error", std::string("exception: ") + e.what()));
  }
  r.sort_checks();
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace cybelab
