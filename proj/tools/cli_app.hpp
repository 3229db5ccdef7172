#pragma once

// The qdl command-line frontend: eval, verify and table subcommands.
// run_cli is the whole program minus main() so tests can drive it in-process.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdl/qdl.hpp"
#include "qdl/report_io.hpp"

namespace qdl::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 64;

/// Overrides both default NumericsSpec tolerances when set to a positive number.
inline constexpr const char* kToleranceEnv = "QDL_DEFAULT_TOL";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Settings keyed by their config-file names; flags and the --config document
// both land here, flags taking precedence.
using Settings = std::map<std::string, std::string>;

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "command", "family", "b",     "N",      "theta", "q",      "rep",     "format", "output",
      "target",  "args",   "suite", "check",  "seed",  "samples", "point",  "range",  "reps",
      "eta",     "vary",   "tol",   "group",  "numerics"};
  return keys;
}

inline const std::vector<std::string>& numerics_keys() {
  static const std::vector<std::string> keys{"abs_tol",    "rel_tol", "max_nodes", "max_shells",
                                             "contour_nodes_initial", "contour_radius"};
  return keys;
}

namespace detail {

inline bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

inline std::string scalar_text(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  throw UsageError("config key '" + key + "' must be a string or number");
}

inline void load_config(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!contains(config_keys(), key)) throw UsageError("unknown config key '" + key + "'");
    if (key == "numerics") {
      if (!value.is_object()) throw UsageError("config 'numerics' must be an object");
      for (const auto& [nk, nv] : value.items()) {
        if (!contains(numerics_keys(), nk)) throw UsageError("unknown numerics key '" + nk + "'");
        s[nk] = scalar_text(nv, nk);
      }
    } else if (key == "args" || key == "point") {
      if (value.is_object()) {
        std::string joined;
        for (const auto& [ak, av] : value.items()) {
          if (!joined.empty()) joined += ",";
          joined += ak + "=" + scalar_text(av, key + "." + ak);
        }
        s[key] = joined;
      } else {
        s[key] = scalar_text(value, key);
      }
    } else if (key == "vary" && value.is_array()) {
      std::string joined;
      for (const auto& e : value) {
        if (!joined.empty()) joined += ";";
        joined += scalar_text(e, key);
      }
      s[key] = joined;
    } else {
      s[key] = scalar_text(value, key);
    }
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline cplx to_complex(const std::string& text, const std::string& what) {
  const auto v = parse_complex(text);
  if (!v) throw UsageError("cannot parse complex value for " + what + ": '" + text + "'");
  return *v;
}

inline double to_real(const std::string& text, const std::string& what) {
  const cplx v = to_complex(text, what);
  if (v.imag() != 0.0) throw UsageError(what + " must be real");
  return v.real();
}

inline long long to_integer(const std::string& text, const std::string& what) {
  const double v = to_real(text, what);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) throw UsageError(what + " must be an integer");
  return static_cast<long long>(v);
}

}  // namespace detail

/// Named complex arguments from "k=v,k=v".
class Args {
 public:
  Args() = default;
  explicit Args(const std::string& text) {
    if (text.empty()) return;
    for (const std::string& item : detail::split(text, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("argument '" + item + "' is not name=value");
      const std::string name = item.substr(0, eq);
      if (values_.count(name)) throw UsageError("argument '" + name + "' given twice");
      values_[name] = detail::to_complex(item.substr(eq + 1), name);
    }
  }

  bool has(const std::string& name) const { return values_.count(name) != 0; }
  void set(const std::string& name, cplx v) { values_[name] = v; }

  cplx get(const std::string& name) const {
    used_.insert(name);
    const auto it = values_.find(name);
    if (it == values_.end()) throw UsageError("missing argument '" + name + "'");
    return it->second;
  }
  long long integer(const std::string& name, std::optional<long long> fallback = std::nullopt) const {
    if (!has(name)) {
      if (fallback) return *fallback;
      throw UsageError("missing argument '" + name + "'");
    }
    const cplx v = get(name);
    if (v.imag() != 0.0 || v.real() != std::floor(v.real())) throw UsageError("argument '" + name + "' must be an integer");
    return static_cast<long long>(v.real());
  }

  /// Element `name` of g; the discrete part comes from `discrete` (default
  /// name_m) and defaults to 0.
  GroupElement element(const GroupId& g, const std::string& name, std::string discrete = "") const {
    if (discrete.empty()) discrete = name + "_m";
    const cplx c = get(name);
    switch (g.kind) {
      case GroupKind::RealLine: return GroupElement::real(c);
      case GroupKind::RealTimesCyclic: return GroupElement::real_cyclic(c, integer(discrete, 0), g.N);
      case GroupKind::CircleTimesIntegers: return GroupElement::circle_int(c, integer(discrete, 0));
    }
    return GroupElement::identity(g);
  }

  /// Names that were supplied but never read.
  std::vector<std::string> unused() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
      if (!used_.count(k)) out.push_back(k);
    return out;
  }

 private:
  std::map<std::string, cplx> values_;
  mutable std::set<std::string> used_;
};

struct Context {
  Settings settings;

  bool has(const std::string& k) const { return settings.count(k) != 0 && !settings.at(k).empty(); }
  std::string get(const std::string& k, const std::string& fallback = "") const {
    return has(k) ? settings.at(k) : fallback;
  }
  std::string require(const std::string& k) const {
    if (!has(k)) throw UsageError("--" + k + " is required here");
    return settings.at(k);
  }

  NumericsSpec numerics() const {
    NumericsSpec spec;
    if (const char* env = std::getenv(kToleranceEnv); env && *env) {
      const auto v = qdl::detail::parse_double(env);
      if (!v || !(*v > 0.0)) throw UsageError(std::string(kToleranceEnv) + " must be a positive number");
      spec.abs_tol = spec.rel_tol = *v;
    }
    auto size = [&](const char* k, std::size_t& field) {
      if (has(k)) {
        const long long v = detail::to_integer(get(k), k);
        if (v <= 0) throw UsageError(std::string(k) + " must be positive");
        field = static_cast<std::size_t>(v);
      }
    };
    if (has("abs_tol")) spec.abs_tol = detail::to_real(get("abs_tol"), "abs_tol");
    if (has("rel_tol")) spec.rel_tol = detail::to_real(get("rel_tol"), "rel_tol");
    size("max_nodes", spec.max_nodes);
    size("max_shells", spec.max_shells);
    size("contour_nodes_initial", spec.contour_nodes_initial);
    if (has("contour_radius")) spec.contour_radius = detail::to_real(get("contour_radius"), "contour_radius");
    try {
      spec.validate();
    } catch (const Error& e) {
      throw UsageError(std::string("numerics: ") + e.what());
    }
    return spec;
  }

  std::optional<DilogSpec> family() const {
    if (!has("family")) return std::nullopt;
    const std::string f = get("family");
    if (f == "faddeev") {
      Faddeev fd{detail::to_complex(require("b"), "b")};
      const std::string rep = get("rep", "auto");
      if (rep == "auto") fd.rep = FaddeevRep::Auto;
      else if (rep == "product") fd.rep = FaddeevRep::Product;
      else if (rep == "integral") fd.rep = FaddeevRep::FaddeevIntegral;
      else if (rep == "woronowicz") fd.rep = FaddeevRep::Woronowicz;
      return fd;
    }
    if (f == "ak") {
      const long long n = detail::to_integer(require("N"), "N");
      return AndersenKashaev{static_cast<int>(n), detail::to_real(require("theta"), "theta")};
    }
    if (f == "tropical") return Tropical{};
    if (f == "dgg") return DGG{detail::to_real(require("q"), "q")};
    throw UsageError("unknown family '" + f + "' (faddeev, ak, tropical, dgg)");
  }

  DilogSpec require_family() const {
    auto d = family();
    if (!d) throw UsageError("--family is required here");
    return *d;
  }

  GroupId group() const {
    if (auto d = family()) return group_of(*d);
    const std::string g = get("group");
    if (g == "real") return GroupId::real_line();
    if (g == "cyclic") return GroupId::real_cyclic(static_cast<int>(detail::to_integer(require("N"), "N")));
    if (g == "circle") return GroupId::circle_integers();
    throw UsageError("--family or --group (real, cyclic, circle) is required here");
  }
};

// ---------------------------------------------------------------------------
// eval

struct EvalResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  std::size_t nodes = 0;
  std::optional<long long> discrete;
};

inline const std::vector<std::string>& eval_targets() {
  static const std::vector<std::string> t{"phi",     "weil_phi", "fv_weight", "star_weight", "weil_weight",
                                          "irf_m",   "theta",    "qpoch",     "gamma",       "epsilon"};
  return t;
}

namespace detail {

// Relative error of φ(x), nonzero only for quadrature-based Faddeev values.
inline double phi_rel_error(const DilogSpec& d, const GroupElement& x, const NumericsSpec& spec) {
  if (const auto* f = std::get_if<Faddeev>(&d)) {
    const PhiValue v = faddeev_phi_eval(f->b, x.coord(), f->rep, spec);
    return v.error_estimate / std::max(std::abs(v.value), 1e-300);
  }
  return 0.0;
}

inline EvalResult from_quadrature(const QuadratureResult& r) { return {r.value, r.error_estimate, r.nodes_used, {}}; }

}  // namespace detail

inline EvalResult evaluate(const Context& ctx, const std::string& target, const Args& a, const NumericsSpec& spec) {
  if (target == "theta") return {theta_q(a.get("q"), a.get("x")), 0.0, 0, {}};
  if (target == "qpoch") {
    if (a.has("k")) return {qpochhammer(a.get("a"), a.get("q"), a.integer("k")), 0.0, 0, {}};
    return {qpochhammer(a.get("a"), a.get("q")), 0.0, 0, {}};
  }
  if (target == "gamma") return {gamma_constant(ctx.group()), 0.0, 0, {}};
  if (target == "epsilon") {
    const GroupElement e = epsilon(ctx.group());
    EvalResult r{e.coord(), 0.0, 0, {}};
    if (e.group().kind != GroupKind::RealLine) r.discrete = e.discrete();
    return r;
  }

  const DilogSpec d = ctx.require_family();
  const GroupId g = group_of(d);
  const bool circle = g.kind == GroupKind::CircleTimesIntegers;
  const std::string rep = ctx.get("rep");

  if (target == "phi") {
    const GroupElement x = circle ? a.element(g, "z", "m") : a.element(g, "x", "m");
    if (const auto* f = std::get_if<Faddeev>(&d)) {
      const PhiValue v = faddeev_phi_eval(f->b, x.coord(), f->rep, spec);
      return {v.value, v.error_estimate, v.nodes, {}};
    }
    return {phi(d, x, spec), 0.0, 0, {}};
  }
  if (target == "weil_phi") {
    const GroupElement x = circle ? a.element(g, "u", "m") : a.element(g, "x", "m");
    const GroupElement y = circle ? a.element(g, "v", "n") : a.element(g, "y", "n");
    const WeilFunction wf = weil_phi(d, spec);
    if (wf.provenance == WeilProvenance::ClosedForm && rep != "series") return {wf(x, y), 0.0, 0, {}};
    const GroupFunction f = [&](const GroupElement& e) { return phi(d, e, spec); };
    return detail::from_quadrature(weil_forward(g, f, x, y, spec));
  }

  const WeightEvaluator we(d, spec);
  if (target == "fv_weight") {
    const GroupElement lam = a.element(g, "lambda");
    const GroupElement x = a.element(g, "x");
    const cplx v = we.W(lam, x);
    const double rel = detail::phi_rel_error(d, x - lam, spec) + detail::phi_rel_error(d, -x - lam, spec) +
                       2.0 * detail::phi_rel_error(d, GroupElement::identity(g), spec);
    return {v, rel * std::abs(v), 0, {}};
  }
  if (target == "star_weight") {
    const GroupElement lam = a.element(g, "lambda");
    const GroupElement y = a.element(g, "y");
    if (std::holds_alternative<Tropical>(d) && rep != "quadrature")
      return {tropical_star_weight(lam.coord(), lam.discrete(), y.coord(), y.discrete()), 0.0, 0, {}};
    return detail::from_quadrature(we.S(lam, y));
  }
  if (target == "weil_weight") {
    const GroupElement lam = a.element(g, "lambda");
    const GroupElement s = a.element(g, "s");
    const GroupElement t = a.element(g, "t");
    if (rep == "factored") return detail::from_quadrature(we.What_factored(lam, s, t));
    return detail::from_quadrature(we.What(lam, s, t));
  }
  if (target == "irf_m") {
    const GroupElement x = a.element(g, "x");
    const GroupElement y = a.element(g, "y");
    const GroupElement z = a.element(g, "z");
    if (std::holds_alternative<Tropical>(d) && rep != "series") {
      TropicalMRep r = TropicalMRep::Residue;
      if (rep == "contour") r = TropicalMRep::Contour;
      else if (rep == "sum") r = TropicalMRep::Sum;
      else if (!rep.empty() && rep != "residue") throw UsageError("tropical irf_m rep: contour, sum, residue, series");
      return detail::from_quadrature(
          tropical_irf_m(x.coord(), x.discrete(), y.coord(), y.discrete(), z.coord(), z.discrete(), r, spec));
    }
    if (const auto* dg = std::get_if<DGG>(&d); dg && rep == "contour")
      return detail::from_quadrature(
          dgg_irf_m(dg->q, x.coord(), x.discrete(), y.coord(), y.discrete(), z.coord(), z.discrete(), spec));
    if (const auto* f = std::get_if<Faddeev>(&d); f && rep == "closed")
      return detail::from_quadrature(faddeev_irf_m(f->b, x.coord(), y.coord(), z.coord(), WeilSource::Auto, spec));
    if (circle && rep == "bhatb") return detail::from_quadrature(we.M_bhatb(x, y, z));
    return detail::from_quadrature(we.M(x, y, z));
  }
  throw UsageError("unknown target '" + target + "'");
}

namespace detail {

inline void write_eval(std::ostream& out, const std::string& format, const std::string& target, const EvalResult& r) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["target"] = target;
    j["value"] = format_complex(r.value);
    if (r.discrete) j["discrete"] = *r.discrete;
    j["error_estimate"] = r.error;
    j["nodes"] = r.nodes;
    out << j.dump() << "\n";
  } else if (format == "csv") {
    out << "re,im,abs,err" << (r.discrete ? ",discrete" : "") << "\n";
    out << format_real(r.value.real()) << "," << format_real(r.value.imag()) << "," << format_real(std::abs(r.value))
        << "," << format_real(r.error);
    if (r.discrete) out << "," << *r.discrete;
    out << "\n";
  } else {
    out << "value " << format_complex(r.value) << "\n";
    if (r.discrete) out << "discrete " << *r.discrete << "\n";
    out << "error " << format_real(r.error) << "\n";
  }
}

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonConvergent:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::ExtrapolationUnstable: return kExitCheckFailure;
    case ErrorKind::UnknownSuite: return kExitUsage;
    default: return kExitDomain;
  }
}

}  // namespace detail

inline int cmd_eval(const Context& ctx, std::ostream& out) {
  const std::string target = ctx.require("target");
  if (!detail::contains(eval_targets(), target)) throw UsageError("unknown target '" + target + "'");
  const Args args(ctx.get("args"));
  const NumericsSpec spec = ctx.numerics();
  const EvalResult r = evaluate(ctx, target, args, spec);
  if (const auto extra = args.unused(); !extra.empty()) throw UsageError("unused argument '" + extra.front() + "'");
  detail::write_eval(out, ctx.get("format", "human"), target, r);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> c{"inversion",
                                          "unitarity",
                                          "representation_agreement",
                                          "wgz_special",
                                          "wgz_quasi_periodicity",
                                          "1psi1",
                                          "weil_closed_forms",
                                          "weil_weight_factorization",
                                          "irf_quasi_invariance",
                                          "irf_bhatb",
                                          "tropical_m_representations",
                                          "dgg_m_contour",
                                          "faddeev_m_forms",
                                          "irf_ybe",
                                          "star_triangle",
                                          "int_id",
                                          "pentagon_regularized"};
  return c;
}

namespace detail {

struct Range {
  double lo, hi;
  int n;
};

inline Range parse_range(const std::string& text, Range fallback) {
  if (text.empty()) return fallback;
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("range must be lo:hi:n");
  const long long n = to_integer(parts[2], "range count");
  if (n < 1) throw UsageError("range count must be positive");
  return {to_real(parts[0], "range lo"), to_real(parts[1], "range hi"), static_cast<int>(n)};
}

inline FaddeevRep parse_rep(const std::string& s) {
  if (s == "product") return FaddeevRep::Product;
  if (s == "integral") return FaddeevRep::FaddeevIntegral;
  if (s == "woronowicz") return FaddeevRep::Woronowicz;
  if (s == "auto") return FaddeevRep::Auto;
  throw UsageError("unknown representation '" + s + "'");
}

}  // namespace detail

inline std::vector<VerificationReport> run_check(const Context& ctx, const std::string& name,
                                                 const NumericsSpec& spec, std::uint64_t seed) {
  if (!detail::contains(check_names(), name)) throw UsageError("unknown check '" + name + "'");
  const bool has_point = ctx.has("point");
  const Args p(ctx.get("point"));
  const int samples = static_cast<int>(detail::to_integer(ctx.get("samples", "0"), "samples"));
  auto count = [&](int fallback) { return samples > 0 ? samples : fallback; };
  std::vector<VerificationReport> out;
  const GroupId circle = GroupId::circle_integers();

  if (name == "inversion") {
    out.push_back(check_inversion(ctx.require_family(), count(50), seed, spec));
  } else if (name == "unitarity") {
    const auto r = detail::parse_range(ctx.get("range"), {-3.0, 3.0, 121});
    out.push_back(check_unitarity(detail::to_complex(ctx.require("b"), "b"), r.lo, r.hi, r.n, spec));
  } else if (name == "representation_agreement") {
    const auto r = detail::parse_range(ctx.get("range"), {-1.0, 1.0, 9});
    const auto reps = detail::split(ctx.get("reps", "product,integral"), ',');
    if (reps.size() != 2) throw UsageError("--reps takes two representations");
    out.push_back(check_representation_agreement(detail::to_complex(ctx.require("b"), "b"), detail::parse_rep(reps[0]),
                                                 detail::parse_rep(reps[1]), r.lo, r.hi, r.n, 1e-8, spec));
  } else if (name == "wgz_special" || name == "wgz_quasi_periodicity") {
    std::vector<std::pair<cplx, cplx>> pts = has_point ? std::vector<std::pair<cplx, cplx>>{{p.get("x"), p.get("y")}}
                                                       : sample_wgz_points(count(5), seed);
    out.push_back(name == "wgz_special" ? check_wgz_special(pts, spec) : check_wgz_quasi_periodicity(pts));
  } else if (name == "1psi1") {
    const auto params = has_point ? std::vector<PsiParams>{{p.get("a"), p.get("b"), p.get("z"), p.get("q")}}
                                  : sample_1psi1(count(5), seed);
    out.push_back(check_1psi1(params, spec));
  } else if (name == "weil_closed_forms") {
    const DilogSpec d = ctx.require_family();
    const auto pts = has_point ? std::vector<WeilPoint>{{p.get("u"), p.integer("m", 0), p.get("v"), p.integer("n", 0)}}
                               : sample_weil_points(count(std::holds_alternative<Tropical>(d) ? 20 : 10), seed);
    out.push_back(check_weil_closed_forms(d, pts, spec));
  } else if (name == "weil_weight_factorization") {
    const DilogSpec d = ctx.require_family();
    const GroupId g = group_of(d);
    const auto pts = has_point ? std::vector<WeightPoint>{{p.element(g, "lambda"), p.element(g, "s"), p.element(g, "t")}}
                               : sample_factorization_points(count(10), seed);
    out.push_back(check_weil_weight_factorization(d, pts, spec));
  } else if (name == "irf_quasi_invariance" || name == "irf_bhatb" || name == "tropical_m_representations" ||
             name == "dgg_m_contour" || name == "faddeev_m_forms") {
    DilogSpec d = Tropical{};
    if (name == "faddeev_m_forms") d = Faddeev{special_b()};
    else if (name != "tropical_m_representations") d = ctx.require_family();
    const GroupId g = group_of(d);
    std::vector<IrfPoint> pts;
    if (has_point) pts.push_back({p.element(g, "x"), p.element(g, "y"), p.element(g, "z")});
    else if (g.kind == GroupKind::RealLine) pts = sample_real_irf_points(count(3), seed);
    else pts = sample_circle_irf_points(count(name == "tropical_m_representations" ? 20 : 4), seed);
    if (name == "irf_quasi_invariance") out.push_back(check_irf_quasi_invariance(d, pts, spec));
    else if (name == "irf_bhatb") out.push_back(check_irf_bhatb(d, pts, spec));
    else if (name == "tropical_m_representations") out.push_back(check_tropical_m_representations(pts, spec));
    else if (name == "faddeev_m_forms") out.push_back(check_faddeev_m(pts, spec));
    else if (const auto* dg = std::get_if<DGG>(&d)) out.push_back(check_dgg_m_contour(dg->q, pts, spec));
    else throw UsageError("dgg_m_contour needs --family dgg");
  } else if (name == "irf_ybe") {
    const DilogSpec d = ctx.require_family();
    std::vector<YbePoint> pts;
    if (has_point) {
      pts.push_back({p.element(circle, "x"), p.element(circle, "y"), p.element(circle, "p"), p.element(circle, "q"),
                     p.element(circle, "u"), p.element(circle, "v")});
    } else {
      pts = validated_ybe_points();
      if (!std::holds_alternative<Tropical>(d)) pts.resize(1);
    }
    for (const auto& pt : pts) out.push_back(check_irf_ybe(d, pt, spec));
  } else if (name == "star_triangle" || name == "int_id") {
    const bool star = name == "star_triangle";
    if (auto d = ctx.family(); d && !std::holds_alternative<Tropical>(*d))
      throw UsageError(name + " is implemented for the tropical family");
    std::vector<StarPoint> pts;
    if (has_point)
      pts.push_back({p.element(circle, "x"), p.element(circle, "y"), p.element(circle, "u"),
                     p.element(circle, star ? "s" : "v")});
    else
      pts = star ? validated_star_points() : validated_int_id_points();
    for (const auto& pt : pts) out.push_back(star ? check_star_triangle(pt, spec) : check_int_id(pt, spec));
  } else if (name == "pentagon_regularized") {
    const DilogSpec d = ctx.require_family();
    if (std::holds_alternative<Tropical>(d)) {
      if (has_point) {
        out.push_back(check_pentagon_tropical(p.element(circle, "x"), p.element(circle, "y"), p.get("ru").real(),
                                              p.get("rv").real(), p.get("rw").real(), spec));
      } else {
        std::vector<VerificationReport> adv;
        qdl::detail::run_advisory(adv, SuiteConfig{seed, spec});
        out.push_back(adv.front());
      }
    } else if (const auto* f = std::get_if<Faddeev>(&d)) {
      std::vector<double> etas;
      for (const auto& e : detail::split(ctx.get("eta", "0.2,0.1,0.05,0.025"), ','))
        etas.push_back(detail::to_real(e, "eta"));
      const double x = has_point ? p.get("x").real() : 0.1;
      const double y = has_point ? p.get("y").real() : -0.2;
      out.push_back(check_pentagon_faddeev(f->b, x, y, etas, spec));
    } else {
      throw UsageError("pentagon_regularized is implemented for the tropical and faddeev families");
    }
  }
  if (has_point) {
    if (const auto extra = p.unused(); !extra.empty()) throw UsageError("unused point value '" + extra.front() + "'");
  }
  if (ctx.has("tol")) {
    const double tol = detail::to_real(ctx.get("tol"), "tol");
    for (auto& r : out) {
      r.tolerance = tol;
      if (!r.error && !r.skipped) r.passed = r.abs_residual <= tol || r.rel_residual <= tol;
    }
  }
  return out;
}

inline int cmd_verify(const Context& ctx, std::ostream& out) {
  const NumericsSpec spec = ctx.numerics();
  const std::uint64_t seed = static_cast<std::uint64_t>(detail::to_integer(ctx.get("seed", "7"), "seed"));
  std::vector<VerificationReport> reports;
  if (ctx.has("suite") == ctx.has("check")) throw UsageError("verify takes exactly one of --suite and --check");
  if (ctx.has("suite")) reports = run_suite(ctx.get("suite"), SuiteConfig{seed, spec});
  else reports = run_check(ctx, ctx.get("check"), spec, seed);

  const std::string format = ctx.get("format", "json");
  int code = kExitPass;
  for (const auto& r : reports) {
    const nlohmann::ordered_json j = to_json(r);
    if (format == "human") {
      out << (r.skipped ? "SKIP" : j["passed"].get<bool>() ? "PASS" : "FAIL") << (r.advisory ? " (advisory) " : " ")
          << r.identity << " [" << r.dilog << "] abs=" << format_real(r.abs_residual)
          << " rel=" << format_real(r.rel_residual) << " tol=" << format_real(r.tolerance);
      if (r.error) out << " error=" << to_string(*r.error);
      if (!r.note.empty()) out << " (" << r.note << ")";
      out << "\n";
    } else {
      out << j.dump() << "\n";
    }
    if (r.advisory || r.skipped) continue;
    if (r.error) code = std::max(code, detail::exit_code_for(*r.error));
    else if (!r.passed) code = std::max(code, kExitCheckFailure);
  }
  const SuiteSummary s = summarize(reports);
  if (format == "human")
    out << "summary: " << s.passed << "/" << s.total << " passed, " << s.failed << " failed, " << s.errors
        << " errors, " << s.advisory << " advisory, " << s.skipped << " skipped\n";
  else
    out << to_json(s).dump() << "\n";
  return code;
}

// ---------------------------------------------------------------------------
// table

namespace detail {

struct Axis {
  std::string name;
  std::vector<cplx> values;
};

// "name=lo:hi:n" (real, evenly spaced) or "name=circle:r:n" (r·e^{2πik/n}).
inline Axis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--vary expects name=lo:hi:n or name=circle:r:n");
  Axis a{text.substr(0, eq), {}};
  const auto parts = split(text.substr(eq + 1), ':');
  if (parts.size() != 3) throw UsageError("--vary expects name=lo:hi:n or name=circle:r:n");
  const long long n = to_integer(parts[2], "vary count");
  if (n < 1) throw UsageError("vary count must be positive");
  if (parts[0] == "circle") {
    const double r = to_real(parts[1], "vary radius");
    for (long long k = 0; k < n; ++k)
      a.values.push_back(std::polar(r, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n)));
  } else {
    const double lo = to_real(parts[0], "vary lo");
    const double hi = to_real(parts[1], "vary hi");
    for (long long k = 0; k < n; ++k)
      a.values.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return a;
}

}  // namespace detail

inline int cmd_table(const Context& ctx, std::ostream& out) {
  const std::string target = ctx.require("target");
  if (!detail::contains(eval_targets(), target)) throw UsageError("unknown target '" + target + "'");
  std::vector<detail::Axis> axes;
  for (const auto& v : detail::split(ctx.require("vary"), ';'))
    if (!v.empty()) axes.push_back(detail::parse_axis(v));
  if (axes.empty() || axes.size() > 2) throw UsageError("table takes one or two --vary axes");
  const Args fixed(ctx.get("args"));
  for (const auto& a : axes)
    if (fixed.has(a.name)) throw UsageError("argument '" + a.name + "' is both fixed and varied");
  const NumericsSpec base = ctx.numerics();
  const std::string format = ctx.get("format", "csv");
  if (format != "csv" && format != "json") throw UsageError("table format is csv or json");

  if (format == "csv") {
    for (const auto& a : axes) out << a.name << "_re," << a.name << "_im,";
    out << "re,im,abs,err\n";
  }
  int code = kExitPass;
  const std::size_t n0 = axes[0].values.size();
  const std::size_t n1 = axes.size() > 1 ? axes[1].values.size() : 1;
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t k = 0; k < n1; ++k) {
      Args args = fixed;
      NumericsSpec spec = base;
      std::vector<cplx> coords;
      for (std::size_t ax = 0; ax < axes.size(); ++ax) {
        const cplx v = axes[ax].values[ax == 0 ? i : k];
        coords.push_back(v);
        if (axes[ax].name == "contour_radius") spec.contour_radius = v.real();
        else args.set(axes[ax].name, v);
      }
      std::optional<EvalResult> r;
      std::string failure;
      try {
        r = evaluate(ctx, target, args, spec);
      } catch (const Error& e) {
        failure = std::string(to_string(e.kind()));
        code = std::max(code, detail::exit_code_for(e.kind()));
      }
      if (format == "csv") {
        for (const cplx c : coords) out << format_real(c.real()) << "," << format_real(c.imag()) << ",";
        if (r)
          out << format_real(r->value.real()) << "," << format_real(r->value.imag()) << ","
              << format_real(std::abs(r->value)) << "," << format_real(r->error) << "\n";
        else
          out << ",,," << failure << "\n";
      } else {
        nlohmann::ordered_json j;
        for (std::size_t ax = 0; ax < axes.size(); ++ax) j[axes[ax].name] = format_complex(coords[ax]);
        if (r) {
          j["value"] = format_complex(r->value);
          j["abs"] = std::abs(r->value);
          j["error_estimate"] = r->error;
        } else {
          j["error"] = failure;
        }
        out << j.dump() << "\n";
      }
    }
  }
  return code;
}

// ---------------------------------------------------------------------------

/// Parses argv, runs the subcommand and returns the process exit code.
/// Reports go to `out` (or --output), diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum dilogarithm evaluation and identity verification", "qdl"};
  app.require_subcommand(1);
  std::map<std::string, std::string> flags;
  std::vector<std::string> vary;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", flags["config"], "JSON document with default settings");
    sub->add_option("--family", flags["family"], "faddeev, ak, tropical or dgg");
    sub->add_option("--b", flags["b"], "Faddeev parameter b (a+bi)");
    sub->add_option("--N", flags["N"], "cyclic order for the ak family");
    sub->add_option("--theta", flags["theta"], "ak angle in (0, pi/2)");
    sub->add_option("--q", flags["q"], "DGG nome in (-1, 1)");
    sub->add_option("--rep", flags["rep"], "representation selector");
    sub->add_option("--group", flags["group"], "real, cyclic or circle when no family is given");
    sub->add_option("--format", flags["format"], "json, csv or human");
    sub->add_option("--output", flags["output"], "write to this file instead of stdout");
    sub->add_option("--abs-tol", flags["abs_tol"], "absolute tolerance");
    sub->add_option("--rel-tol", flags["rel_tol"], "relative tolerance");
    sub->add_option("--max-nodes", flags["max_nodes"], "quadrature node cap (power of two)");
    sub->add_option("--max-shells", flags["max_shells"], "bilateral sum cap (power of two)");
    sub->add_option("--contour-nodes", flags["contour_nodes_initial"], "initial contour nodes (power of two)");
    sub->add_option("--contour-radius", flags["contour_radius"], "override contour radius");
  };
  CLI::App* eval = app.add_subcommand("eval", "evaluate a function at one point");
  common(eval);
  eval->add_option("--target", flags["target"], "phi, weil_phi, fv_weight, star_weight, weil_weight, irf_m, "
                                                "theta, qpoch, gamma, epsilon");
  eval->add_option("--args", flags["args"], "name=value,... with a+bi complex values");

  CLI::App* verify = app.add_subcommand("verify", "run identity checks, JSON-lines output");
  common(verify);
  verify->add_option("--suite", flags["suite"], "core, faddeev, ybe, advisory or full");
  verify->add_option("--check", flags["check"], "a single check");
  verify->add_option("--seed", flags["seed"], "sample seed (default 7)");
  verify->add_option("--samples", flags["samples"], "number of seeded samples");
  verify->add_option("--point", flags["point"], "explicit parameter point name=value,...");
  verify->add_option("--range", flags["range"], "grid lo:hi:n");
  verify->add_option("--reps", flags["reps"], "two representations to compare");
  verify->add_option("--eta", flags["eta"], "damping values for the regularized pentagon");
  verify->add_option("--tol", flags["tol"], "override the report tolerance");

  CLI::App* table = app.add_subcommand("table", "tabulate a function over a 1-D or 2-D grid");
  common(table);
  table->add_option("--target", flags["target"], "as for eval");
  table->add_option("--args", flags["args"], "fixed arguments");
  table->add_option("--vary", vary, "name=lo:hi:n or name=circle:r:n, at most twice");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string command = eval->parsed() ? "eval" : verify->parsed() ? "verify" : "table";
  try {
    Context ctx;
    if (!flags["config"].empty()) detail::load_config(flags["config"], ctx.settings);
    if (ctx.has("command") && ctx.get("command") != command)
      throw UsageError("config is for '" + ctx.get("command") + "', not '" + command + "'");
    for (const auto& [k, v] : flags)
      if (k != "config" && !v.empty()) ctx.settings[k] = v;
    if (!vary.empty()) {
      std::string joined;
      for (const auto& v : vary) joined += (joined.empty() ? "" : ";") + v;
      ctx.settings["vary"] = joined;
    }
    if (const std::string f = ctx.get("format"); !f.empty() && f != "json" && f != "csv" && f != "human")
      throw UsageError("unknown format '" + f + "'");

    std::ofstream file;
    std::ostream* sink = &out;
    if (ctx.has("output")) {
      file.open(ctx.get("output"));
      if (!file) throw UsageError("cannot write " + ctx.get("output"));
      sink = &file;
    }
    if (command == "eval") return cmd_eval(ctx, *sink);
    if (command == "verify") return cmd_verify(ctx, *sink);
    return cmd_table(ctx, *sink);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return detail::exit_code_for(e.kind());
  }
}

}  // namespace qdl::cli
