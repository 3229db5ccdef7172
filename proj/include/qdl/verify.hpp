#pragma once

// Identity checks. Each check evaluates both sides of one scalar identity at
// seeded or explicitly supplied points and returns a VerificationReport with
// the worst residual it saw.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qdl/errors.hpp"
#include "qdl/lca.hpp"
#include "qdl/numerics.hpp"
#include "qdl/qdilog.hpp"
#include "qdl/qseries.hpp"
#include "qdl/transforms.hpp"
#include "qdl/weights.hpp"

namespace qdl {

/// 64-bit LCG (Knuth's MMIX constants) with its own [0,1) mapping, so sample
/// streams are identical on every platform and standard library.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  long long integer(long long lo, long long hi) {
    return lo + static_cast<long long>(uniform() * static_cast<double>(hi - lo + 1));
  }
  cplx polar(double rlo, double rhi) { return std::polar(uniform(rlo, rhi), uniform(-kPi, kPi)); }
  cplx unit() { return std::polar(1.0, uniform(-kPi, kPi)); }

 private:
  std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL> engine_;
};

struct Param {
  std::string name;
  cplx value{0.0, 0.0};
  bool integer = false;
};

struct VerificationReport {
  std::string identity;
  std::string group;
  std::string dilog;
  std::vector<Param> point;
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tolerance = 0.0;
  std::size_t nodes = 0;
  std::size_t terms = 0;
  bool passed = false;
  bool advisory = false;
  bool skipped = false;
  std::optional<ErrorKind> error;
  std::string note;
};

namespace detail {

inline void add_complex(VerificationReport& r, const std::string& name, cplx v) { r.point.push_back({name, v, false}); }
inline void add_integer(VerificationReport& r, const std::string& name, long long v) {
  r.point.push_back({name, cplx(static_cast<double>(v), 0.0), true});
}
inline void add_element(VerificationReport& r, const std::string& name, const GroupElement& e) {
  add_complex(r, name, e.coord());
  if (e.group().kind != GroupKind::RealLine) add_integer(r, name + ".m", e.discrete());
}

// Tracks the worst (lhs, rhs) pair of a multi-point check, ranked by the
// smaller of the absolute and relative residuals (the pass criterion).
struct Worst {
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  double abs = 0.0;
  double rel = 0.0;
  bool any = false;

  void add(cplx l, cplx r) {
    const double a = std::abs(l - r);
    const double scale = std::max(std::abs(l), std::abs(r));
    const double rl = scale > 0.0 ? a / scale : a;
    if (!any || std::min(a, rl) > std::min(abs, rel)) {
      lhs = l;
      rhs = r;
      abs = a;
      rel = rl;
      any = true;
    }
  }
};

inline VerificationReport make_report(std::string identity, const GroupId& g, std::string dilog, double tol) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.group = g.name();
  r.dilog = std::move(dilog);
  r.tolerance = tol;
  return r;
}

inline void finish(VerificationReport& r, const Worst& w) {
  r.lhs = w.lhs;
  r.rhs = w.rhs;
  r.abs_residual = w.abs;
  r.rel_residual = w.rel;
  r.passed = !r.error && !r.skipped && (r.abs_residual <= r.tolerance || r.rel_residual <= r.tolerance);
}

// Runs body(report); a library error becomes an error record.
template <class Body>
VerificationReport guarded(VerificationReport r, Body&& body) {
  try {
    body(r);
  } catch (const Error& e) {
    r.error = e.kind();
    r.note = e.what();
    r.passed = false;
    r.abs_residual = 0.0;
    r.rel_residual = 0.0;
  }
  return r;
}

inline NumericsSpec without_radius(NumericsSpec s) {
  s.contour_radius.reset();
  return s;
}

inline std::string fmt_sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dilogarithm identities

/// Seeded on-group sample for the family: real x in [-3,3] (and a residue
/// for ℝ×ℤ/Nℤ), or a unit circle point with m in [-5,5].
inline GroupElement sample_on_group(const DilogSpec& d, SampleStream& rng) {
  const GroupId g = group_of(d);
  switch (g.kind) {
    case GroupKind::RealLine: return GroupElement::real(rng.uniform(-3.0, 3.0));
    case GroupKind::RealTimesCyclic: {
      const double x = rng.uniform(-3.0, 3.0);
      return GroupElement::real_cyclic(x, rng.integer(0, g.N - 1), g.N);
    }
    case GroupKind::CircleTimesIntegers: {
      const cplx z = rng.unit();
      return GroupElement::circle_int(z, rng.integer(-5, 5));
    }
  }
  return GroupElement::identity(g);
}

inline double default_inversion_tolerance(const DilogSpec& d) {
  return std::holds_alternative<Tropical>(d) || std::holds_alternative<DGG>(d) ? 1e-12 : 1e-8;
}

/// φ(x)φ(-x) = φ(0)²⟨x⟩ at `samples` seeded on-group points.
inline VerificationReport check_inversion(const DilogSpec& d, int samples, std::uint64_t seed,
                                          const NumericsSpec& spec = {}) {
  const GroupId g = group_of(d);
  auto r = detail::make_report("inversion", g, describe(d), default_inversion_tolerance(d));
  detail::add_integer(r, "samples", samples);
  detail::add_integer(r, "seed", static_cast<long long>(seed));
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    validate(d);
    SampleStream rng(seed);
    const cplx p0 = phi(d, GroupElement::identity(g), spec);
    detail::Worst w;
    for (int i = 0; i < samples; ++i) {
      const GroupElement x = sample_on_group(d, rng);
      w.add(phi(d, x, spec) * phi(d, -x, spec), p0 * p0 * gaussian(g, x));
    }
    rep.terms = static_cast<std::size_t>(samples);
    detail::finish(rep, w);
  });
}

/// max ||Φ_b(x)| - 1| over an evenly spaced grid, for b with (1-|b|)Im b = 0.
inline VerificationReport check_unitarity(cplx b, double lo = -3.0, double hi = 3.0, int points = 121,
                                          const NumericsSpec& spec = {}) {
  auto r = detail::make_report("unitarity", GroupId::real_line(), describe(Faddeev{b}), 1e-8);
  detail::add_complex(r, "b", b);
  detail::add_complex(r, "lo", lo);
  detail::add_complex(r, "hi", hi);
  detail::add_integer(r, "points", points);
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    if (std::abs((1.0 - std::abs(b)) * b.imag()) > detail::kRealTol)
      fail(ErrorKind::OutOfDomain, "unitarity needs (1-|b|) Im b = 0");
    validate(DilogSpec{Faddeev{b}});
    detail::Worst w;
    std::size_t nodes = 0;
    for (int i = 0; i < points; ++i) {
      const double x = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
      const PhiValue v = faddeev_phi_eval(b, x, FaddeevRep::Auto, spec);
      nodes = std::max(nodes, v.nodes);
      w.add(std::abs(v.value), 1.0);
    }
    rep.nodes = nodes;
    rep.terms = static_cast<std::size_t>(points);
    detail::finish(rep, w);
  });
}

/// Two Φ_b representations compared on an evenly spaced real grid.
inline VerificationReport check_representation_agreement(cplx b, FaddeevRep a, FaddeevRep c, double lo = -1.0,
                                                         double hi = 1.0, int points = 9, double tol = 1e-8,
                                                         const NumericsSpec& spec = {}) {
  auto r = detail::make_report(std::string("representation_agreement:") + std::string(to_string(a)) + "/" +
                                   std::string(to_string(c)),
                               GroupId::real_line(), describe(Faddeev{b}), tol);
  detail::add_complex(r, "b", b);
  detail::add_complex(r, "lo", lo);
  detail::add_complex(r, "hi", hi);
  detail::add_integer(r, "points", points);
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    detail::Worst w;
    std::size_t nodes = 0;
    for (int i = 0; i < points; ++i) {
      const double x = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
      const PhiValue va = faddeev_phi_eval(b, x, a, spec);
      const PhiValue vc = faddeev_phi_eval(b, x, c, spec);
      nodes = std::max({nodes, va.nodes, vc.nodes});
      w.add(va.value, vc.value);
    }
    rep.nodes = nodes;
    rep.terms = static_cast<std::size_t>(points);
    detail::finish(rep, w);
  });
}

// ---------------------------------------------------------------------------
// Transforms

/// Seeded (x, y) with -Im x < Im y < 0, the convergence region of the WGZ
/// series.
inline std::vector<std::pair<cplx, cplx>> sample_wgz_points(int n, std::uint64_t seed) {
  SampleStream rng(seed);
  std::vector<std::pair<cplx, cplx>> pts;
  for (int i = 0; i < n; ++i) {
    const double ix = rng.uniform(0.2, 0.5);
    const double iy = -ix * rng.uniform(0.25, 0.75);
    pts.emplace_back(cplx(rng.uniform(-0.5, 0.5), ix), cplx(rng.uniform(-0.5, 0.5), iy));
  }
  return pts;
}

/// WGZ series of Φ_{e^{iπ/6}} against its θ/q-Pochhammer closed form.
inline VerificationReport check_wgz_special(const std::vector<std::pair<cplx, cplx>>& points,
                                            const NumericsSpec& spec = {}) {
  auto r = detail::make_report("wgz_closed_form", GroupId::real_line(), describe(Faddeev{special_b()}), 1e-8);
  for (std::size_t i = 0; i < points.size(); ++i) {
    detail::add_complex(r, "x" + std::to_string(i), points[i].first);
    detail::add_complex(r, "y" + std::to_string(i), points[i].second);
  }
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const GroupId g = GroupId::real_line();
    const GroupFunction f = [&](const GroupElement& e) { return faddeev_phi(special_b(), e.coord(), FaddeevRep::Auto, spec); };
    detail::Worst w;
    for (const auto& [x, y] : points) {
      if (!wgz_series_converges(x, y)) fail(ErrorKind::OutOfDomain, "WGZ series needs -Im x < Im y < 0");
      const QuadratureResult s = weil_forward(g, f, GroupElement::real(x), GroupElement::real(y), spec);
      rep.terms = std::max(rep.terms, s.nodes_used);
      w.add(s.value, wgz_phi_special(x, y));
    }
    detail::finish(rep, w);
  });
}

/// φ̌(x+1,y) = e^{-2πiy}φ̌(x,y) and φ̌(x,y+1) = φ̌(x,y) for the closed form.
inline VerificationReport check_wgz_quasi_periodicity(const std::vector<std::pair<cplx, cplx>>& points) {
  auto r = detail::make_report("wgz_quasi_periodicity", GroupId::real_line(), describe(Faddeev{special_b()}), 1e-12);
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    detail::Worst w;
    for (const auto& [x, y] : points) {
      const cplx base = wgz_phi_special(x, y);
      w.add(wgz_phi_special(x + 1.0, y), std::exp(-2.0 * kPi * kI * y) * base);
      w.add(wgz_phi_special(x, y + 1.0), base);
    }
    rep.terms = 2 * points.size();
    detail::finish(rep, w);
  });
}

struct PsiParams {
  cplx a, b, z, q;
};

/// Seeded admissible (a,b,z,q): |q| ≤ 0.6, |z| < 1 and |b/a| < |z|.
inline std::vector<PsiParams> sample_1psi1(int n, std::uint64_t seed) {
  SampleStream rng(seed);
  std::vector<PsiParams> out;
  for (int i = 0; i < n; ++i) {
    const cplx q = rng.polar(0.1, 0.6);
    const cplx a = rng.polar(0.5, 2.0);
    const cplx z = rng.polar(0.3, 0.85);
    const cplx b = a * z * rng.polar(0.1, 0.7);
    out.push_back({a, b, z, q});
  }
  return out;
}

inline VerificationReport check_1psi1(const std::vector<PsiParams>& params, const NumericsSpec& spec = {}) {
  auto r = detail::make_report("ramanujan_1psi1", GroupId::real_line(), "none", 1e-11);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto s = std::to_string(i);
    detail::add_complex(r, "a" + s, params[i].a);
    detail::add_complex(r, "b" + s, params[i].b);
    detail::add_complex(r, "z" + s, params[i].z);
    detail::add_complex(r, "q" + s, params[i].q);
  }
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    detail::Worst w;
    for (const auto& p : params) {
      const PsiSides s = ramanujan_1psi1(p.a, p.b, p.z, p.q, spec);
      rep.terms = std::max(rep.terms, s.terms);
      w.add(s.lhs, s.rhs);
    }
    detail::finish(rep, w);
  });
}

/// Seeded (u, m, v, n) with |u| < 1/|v| < 1.
struct WeilPoint {
  cplx u;
  long long m;
  cplx v;
  long long n;
};

inline std::vector<WeilPoint> sample_weil_points(int count, std::uint64_t seed) {
  SampleStream rng(seed);
  std::vector<WeilPoint> pts;
  for (int i = 0; i < count; ++i) {
    const cplx v = rng.polar(1.25, 3.0);
    const cplx u = rng.polar(0.1, 0.75) / std::abs(v);
    pts.push_back({u, rng.integer(-3, 3), v, rng.integer(-3, 3)});
  }
  return pts;
}

/// Weil series of the tropical or DGG dilogarithm against its closed form.
inline VerificationReport check_weil_closed_forms(const DilogSpec& d, const std::vector<WeilPoint>& pts,
                                                  const NumericsSpec& spec = {}) {
  const bool tropical = std::holds_alternative<Tropical>(d);
  auto r = detail::make_report("weil_closed_form", GroupId::circle_integers(), describe(d), tropical ? 1e-12 : 1e-10);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto s = std::to_string(i);
    detail::add_complex(r, "u" + s, pts[i].u);
    detail::add_integer(r, "m" + s, pts[i].m);
    detail::add_complex(r, "v" + s, pts[i].v);
    detail::add_integer(r, "n" + s, pts[i].n);
  }
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    if (!tropical && !std::holds_alternative<DGG>(d))
      fail(ErrorKind::UnsupportedGroup, "closed Weil forms exist for the tropical and DGG families");
    const GroupId g = GroupId::circle_integers();
    const GroupFunction f = [&](const GroupElement& e) { return phi(d, e, spec); };
    const WeilFunction closed = weil_phi(d, spec);
    detail::Worst w;
    for (const auto& p : pts) {
      if (!(std::abs(p.u) < 1.0 / std::abs(p.v) && 1.0 / std::abs(p.v) < 1.0))
        fail(ErrorKind::OutOfDomain, "Weil series needs |u| < 1/|v| < 1");
      const GroupElement x = GroupElement::circle_int(p.u, p.m);
      const GroupElement y = GroupElement::circle_int(p.v, p.n);
      const QuadratureResult s = weil_forward(g, f, x, y, spec);
      rep.terms = std::max(rep.terms, s.nodes_used);
      w.add(s.value, closed(x, y));
    }
    detail::finish(rep, w);
  });
}

// ---------------------------------------------------------------------------
// Weights

struct WeightPoint {
  GroupElement lambda, s, t;
};

/// Seeded 𝕋×ℤ points where both the direct Weil sum and the factored
/// integral converge with margin.
inline std::vector<WeightPoint> sample_factorization_points(int count, std::uint64_t seed) {
  SampleStream rng(seed);
  std::vector<WeightPoint> pts;
  while (static_cast<int>(pts.size()) < count) {
    const cplx L = rng.polar(2.0, 3.0);
    const cplx S = rng.polar(0.9, 1.2);
    const cplx T = rng.polar(0.7, 1.4);
    const double lo = std::max(1.0, std::abs(S) / std::abs(T));
    const double hi = std::min(std::abs(S * L), std::abs(L) / std::abs(T));
    if (hi / lo < 1.5 || !(1.0 / std::abs(L) < std::abs(T) && std::abs(T) < std::abs(L))) continue;
    pts.push_back({GroupElement::circle_int(L, rng.integer(-2, 2)), GroupElement::circle_int(S, rng.integer(-2, 2)),
                   GroupElement::circle_int(T, rng.integer(-2, 2))});
  }
  return pts;
}

/// Direct Ŵ against the integral of a product of two φ̌.
inline VerificationReport check_weil_weight_factorization(const DilogSpec& d, const std::vector<WeightPoint>& pts,
                                                          const NumericsSpec& spec = {}) {
  auto r = detail::make_report("weil_weight_factorization", group_of(d), describe(d), 1e-8);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto s = std::to_string(i);
    detail::add_element(r, "lambda" + s, pts[i].lambda);
    detail::add_element(r, "s" + s, pts[i].s);
    detail::add_element(r, "t" + s, pts[i].t);
  }
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const WeightEvaluator we(d, spec);
    detail::Worst w;
    for (const auto& p : pts) {
      const QuadratureResult direct = we.What(p.lambda, p.s, p.t);
      const QuadratureResult fact = we.What_factored(p.lambda, p.s, p.t);
      rep.terms = std::max(rep.terms, direct.nodes_used);
      rep.nodes = std::max(rep.nodes, fact.nodes_used);
      w.add(direct.value, fact.value);
    }
    detail::finish(rep, w);
  });
}

struct IrfPoint {
  GroupElement x, y, z;
};

/// Seeded ℝ points with Im z < -|Im y| and a nonempty Faddeev M strip.
inline std::vector<IrfPoint> sample_real_irf_points(int count, std::uint64_t seed) {
  SampleStream rng(seed);
  std::vector<IrfPoint> pts;
  while (static_cast<int>(pts.size()) < count) {
    const cplx x(rng.uniform(-0.4, 0.4), rng.uniform(0.05, 0.15));
    const cplx y(rng.uniform(-0.4, 0.4), rng.uniform(-0.1, 0.1));
    const cplx z(rng.uniform(-0.3, 0.3), rng.uniform(-0.35, -0.2));
    const double lo = std::max((z - y).imag(), (x + z).imag());
    const double hi = std::min((x - y).imag(), 0.0);
    if (hi - lo < 0.05) continue;
    pts.push_back({GroupElement::real(x), GroupElement::real(y), GroupElement::real(z)});
  }
  return pts;
}

/// Seeded 𝕋×ℤ points inside both the Sum domain |y/z| < 1 < |zy| and the
/// contour annulus max(|x|,|y|) < min(|z|,|xyz|), with x, y poles apart.
inline std::vector<IrfPoint> sample_circle_irf_points(int count, std::uint64_t seed) {
  SampleStream rng(seed);
  std::vector<IrfPoint> pts;
  while (static_cast<int>(pts.size()) < count) {
    const double zr = rng.uniform(1.5, 3.0);
    const double yr = rng.uniform(1.2 / zr, 0.85 * zr);
    const double xr = rng.uniform(std::max(1.2 / zr, 0.3), 0.85 * zr);
    const cplx X = std::polar(xr, rng.uniform(-kPi, kPi));
    const cplx Y = std::polar(yr, rng.uniform(-kPi, kPi));
    const cplx Z = std::polar(zr, rng.uniform(-kPi, kPi));
    const double lo = std::max(xr, yr);
    const double hi = std::min(zr, xr * yr * zr);
    if (hi / lo < 1.2 || std::abs(X - Y) < 0.05 * lo) continue;
    pts.push_back({GroupElement::circle_int(X, rng.integer(-3, 3)), GroupElement::circle_int(Y, rng.integer(-3, 3)),
                   GroupElement::circle_int(Z, rng.integer(-3, 3))});
  }
  return pts;
}

/// Tropical M by contour, sum and residues; pairwise residuals.
inline VerificationReport check_tropical_m_representations(const std::vector<IrfPoint>& pts,
                                                           const NumericsSpec& spec = {}) {
  auto r = detail::make_report("tropical_m_representations", GroupId::circle_integers(), describe(Tropical{}), 1e-11);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto s = std::to_string(i);
    detail::add_element(r, "x" + s, pts[i].x);
    detail::add_element(r, "y" + s, pts[i].y);
    detail::add_element(r, "z" + s, pts[i].z);
  }
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    detail::Worst w;
    for (const auto& p : pts) {
      auto eval = [&](TropicalMRep rp, long long l) {
        return tropical_irf_m(p.x.coord(), p.x.discrete(), p.y.coord(), l, p.z.coord(), p.z.discrete(), rp, spec);
      };
      const QuadratureResult c = eval(TropicalMRep::Contour, p.y.discrete());
      const QuadratureResult s = eval(TropicalMRep::Sum, p.y.discrete());
      const QuadratureResult res = eval(TropicalMRep::Residue, p.y.discrete());
      rep.nodes = std::max(rep.nodes, c.nodes_used);
      rep.terms = std::max(rep.terms, s.nodes_used);
      w.add(c.value, s.value);
      w.add(c.value, res.value);
      w.add(s.value, res.value);
      w.add(res.value, eval(TropicalMRep::Residue, p.y.discrete() + 5).value);
    }
    detail::finish(rep, w);
  });
}

/// DGG M by its closed-contour formula against χ·Ŵ built from the series.
inline VerificationReport check_dgg_m_contour(double q, const std::vector<IrfPoint>& pts, const NumericsSpec& spec = {}) {
  const DilogSpec d = DGG{q};
  auto r = detail::make_report("dgg_m_contour", GroupId::circle_integers(), describe(d), 1e-8);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto s = std::to_string(i);
    detail::add_element(r, "x" + s, pts[i].x);
    detail::add_element(r, "y" + s, pts[i].y);
    detail::add_element(r, "z" + s, pts[i].z);
  }
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const WeightEvaluator we(d, spec);
    detail::Worst w;
    for (const auto& p : pts) {
      const QuadratureResult gen = we.M(p.x, p.y, p.z);
      const QuadratureResult con = dgg_irf_m(q, p.x.coord(), p.x.discrete(), p.y.coord(), p.y.discrete(), p.z.coord(),
                                             p.z.discrete(), spec);
      rep.terms = std::max(rep.terms, gen.nodes_used);
      rep.nodes = std::max(rep.nodes, con.nodes_used);
      w.add(gen.value, con.value);
    }
    detail::finish(rep, w);
  });
}

/// Faddeev M at b = e^{iπ/6}: χ·Ŵ from the series, the WGZ-product integral,
/// and the θ/q-Pochhammer contour form.
inline VerificationReport check_faddeev_m(const std::vector<IrfPoint>& pts, const NumericsSpec& spec = {}) {
  const DilogSpec d = Faddeev{special_b()};
  auto r = detail::make_report("faddeev_m_forms", GroupId::real_line(), describe(d), 1e-7);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto s = std::to_string(i);
    detail::add_element(r, "x" + s, pts[i].x);
    detail::add_element(r, "y" + s, pts[i].y);
    detail::add_element(r, "z" + s, pts[i].z);
  }
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const WeightEvaluator we(d, spec);
    detail::Worst w;
    for (const auto& p : pts) {
      const cplx x = p.x.coord(), y = p.y.coord(), z = p.z.coord();
      const QuadratureResult gen = we.M(p.x, p.y, p.z);
      const QuadratureResult integral = faddeev_irf_m(special_b(), x, y, z, WeilSource::ClosedForm, spec);
      const QuadratureResult theta = faddeev_irf_m_special(x, y, z, spec);
      rep.terms = std::max(rep.terms, gen.nodes_used);
      rep.nodes = std::max({rep.nodes, integral.nodes_used, theta.nodes_used});
      w.add(gen.value, integral.value);
      w.add(gen.value, theta.value);
    }
    detail::finish(rep, w);
  });
}

/// Quasi B-invariance of M in its first two arguments.
///
/// Over ℝ: M(x,y+1,z) = χ(x,1)M and M(x+1,y,z) = χ(y,1)⁻¹M with the series
/// M. Over 𝕋×ℤ the B̂×B form has no ẋ, ẏ dependence, so shifts by (1,k)
/// must leave it bit-identical; tolerance 0.
inline VerificationReport check_irf_quasi_invariance(const DilogSpec& d, const std::vector<IrfPoint>& pts,
                                                     const NumericsSpec& spec = {}) {
  const GroupId g = group_of(d);
  const bool circle = g.kind == GroupKind::CircleTimesIntegers;
  auto r = detail::make_report("irf_quasi_invariance", g, describe(d), circle ? 0.0 : 1e-8);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto s = std::to_string(i);
    detail::add_element(r, "x" + s, pts[i].x);
    detail::add_element(r, "y" + s, pts[i].y);
    detail::add_element(r, "z" + s, pts[i].z);
  }
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const WeightEvaluator we(d, spec);
    detail::Worst w;
    for (const auto& p : pts) {
      if (circle) {
        const cplx base = we.M_bhatb(p.x, p.y, p.z).value;
        for (long long k : {1LL, -2LL, 5LL}) {
          const GroupElement b = embed_b(g, k);
          w.add(we.M_bhatb(p.x + b, p.y, p.z).value, base);
          w.add(we.M_bhatb(p.x, p.y + b, p.z).value, base);
        }
      } else {
        const GroupElement b = embed_b(g, 1);
        const QuadratureResult base = we.M(p.x, p.y, p.z);
        rep.terms = std::max(rep.terms, base.nodes_used);
        w.add(we.M(p.x, p.y + b, p.z).value, bicharacter(g, p.x, b) * base.value);
        w.add(we.M(p.x + b, p.y, p.z).value, base.value / bicharacter(g, p.y, b));
      }
    }
    detail::finish(rep, w);
  });
}

/// χ·Ŵ (series over B) against the B̂×B single sum over 𝕋×ℤ.
inline VerificationReport check_irf_bhatb(const DilogSpec& d, const std::vector<IrfPoint>& pts,
                                          const NumericsSpec& spec = {}) {
  auto r = detail::make_report("irf_bhatb_agreement", group_of(d), describe(d), 1e-12);
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const WeightEvaluator we(d, spec);
    detail::Worst w;
    for (const auto& p : pts) w.add(we.M(p.x, p.y, p.z).value, we.M_bhatb(p.x, p.y, p.z).value);
    rep.terms = pts.size();
    detail::finish(rep, w);
  });
}

// ---------------------------------------------------------------------------
// Yang–Baxter type relations over 𝕋×ℤ

struct YbePoint {
  GroupElement x, y;        // spectral parameters
  GroupElement p, q, u, v;  // boundary spins
};

namespace detail {

// Modulus constraints of M(a,b,c) for the representation in use: the contour
// annulus max(|a|,|b|) < min(|c|,|abc|), plus |b/c| < 1 < |bc| for the sum.
inline void require_m_domain(double a, double b, double c, bool sum_form, const std::string& what) {
  if (!(std::max(a, b) < std::min(c, a * b * c)))
    fail(ErrorKind::OutOfDomain, what + ": empty IRF contour annulus on the integration circle");
  if (sum_form && !(b / c < 1.0 && 1.0 < b * c)) fail(ErrorKind::OutOfDomain, what + ": IRF sum diverges");
}

}  // namespace detail

/// ∫ M(p,u-t,x)M(t,v-p,x+y)M(v,t-q,y) dt = ∫ M(u,s-p,y)M(s,u-q,x+y)M(q,v-s,x) ds
/// over the circle |t| = |s| = r (unit circle unless spec.contour_radius).
///
/// Tropical M factors come from the residue form with the sum form as a
/// cross-check; DGG factors from the closed-contour formula.
inline VerificationReport check_irf_ybe(const DilogSpec& d, const YbePoint& pt, const NumericsSpec& spec = {}) {
  const bool tropical = std::holds_alternative<Tropical>(d);
  auto r = detail::make_report("irf_ybe", GroupId::circle_integers(), describe(d), tropical ? 1e-8 : 1e-6);
  detail::add_element(r, "x", pt.x);
  detail::add_element(r, "y", pt.y);
  detail::add_element(r, "p", pt.p);
  detail::add_element(r, "q", pt.q);
  detail::add_element(r, "u", pt.u);
  detail::add_element(r, "v", pt.v);
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    if (!tropical && !std::holds_alternative<DGG>(d))
      fail(ErrorKind::UnsupportedGroup, "IRF YBE check is implemented for the tropical and DGG families");
    const double rad = spec.contour_radius.value_or(1.0);
    const NumericsSpec inner = detail::without_radius(spec);
    const GroupElement xy = pt.x + pt.y;
    auto mod = [](const GroupElement& e) { return std::abs(e.coord()); };
    const double P = mod(pt.p), Q = mod(pt.q), U = mod(pt.u), V = mod(pt.v);
    const double X = mod(pt.x), Y = mod(pt.y), XY = mod(xy);
    detail::require_m_domain(P, U / rad, X, tropical, "LHS factor 1");
    detail::require_m_domain(rad, V / P, XY, tropical, "LHS factor 2");
    detail::require_m_domain(V, rad / Q, Y, tropical, "LHS factor 3");
    detail::require_m_domain(U, rad / P, Y, tropical, "RHS factor 1");
    detail::require_m_domain(rad, U / Q, XY, tropical, "RHS factor 2");
    detail::require_m_domain(Q, V / rad, X, tropical, "RHS factor 3");

    auto make_m = [&](TropicalMRep rp) {
      return [&, rp](const GroupElement& a, const GroupElement& b, const GroupElement& c) -> cplx {
        if (tropical)
          return tropical_irf_m(a.coord(), a.discrete(), b.coord(), b.discrete(), c.coord(), c.discrete(), rp, inner)
              .value;
        return dgg_irf_m(std::get<DGG>(d).q, a.coord(), a.discrete(), b.coord(), b.discrete(), c.coord(),
                         c.discrete(), inner)
            .value;
      };
    };
    auto sides = [&](auto&& M) {
      const QuadratureResult lhs = integrate_circle(
          [&](cplx w) {
            const GroupElement t = GroupElement::circle_int(w, 0);
            return M(pt.p, pt.u - t, pt.x) * M(t, pt.v - pt.p, xy) * M(pt.v, t - pt.q, pt.y) / w;
          },
          rad, spec);
      const QuadratureResult rhs = integrate_circle(
          [&](cplx w) {
            const GroupElement s = GroupElement::circle_int(w, 0);
            return M(pt.u, s - pt.p, pt.y) * M(s, pt.u - pt.q, xy) * M(pt.q, pt.v - s, pt.x) / w;
          },
          rad, spec);
      return std::pair{lhs, rhs};
    };
    const auto [lhs, rhs] = sides(make_m(TropicalMRep::Residue));
    rep.nodes = std::max(lhs.nodes_used, rhs.nodes_used);
    detail::Worst w;
    w.add(lhs.value, rhs.value);
    if (tropical) {
      const auto [ls, rs] = sides(make_m(TropicalMRep::Sum));
      detail::Worst cross;
      cross.add(ls.value, rs.value);
      cross.add(lhs.value, ls.value);
      rep.note = "sum-form cross-check residual " + detail::fmt_sci(cross.abs);
      detail::finish(rep, w);
      rep.abs_residual = std::max(rep.abs_residual, cross.abs);
      rep.rel_residual = std::max(rep.rel_residual, cross.rel);
      rep.passed = rep.abs_residual <= rep.tolerance || rep.rel_residual <= rep.tolerance;
      return;
    }
    detail::finish(rep, w);
  });
}

struct StarPoint {
  GroupElement x, y;  // spectral parameters
  GroupElement u, s;  // external spins
};

/// ∫_A S_x(u-t) W_{x+y}(t) S_y(t-s) dt = W_y(u) S_{x+y}(u-s) W_x(s) for the
/// tropical family; t runs over the unit circle times ℤ.
///
/// S comes from its closed form; the right-hand S is also evaluated by
/// quadrature as a cross-check.
inline VerificationReport check_star_triangle(const StarPoint& pt, const NumericsSpec& spec = {}) {
  auto r = detail::make_report("star_triangle", GroupId::circle_integers(), describe(Tropical{}), 1e-6);
  detail::add_element(r, "x", pt.x);
  detail::add_element(r, "y", pt.y);
  detail::add_element(r, "u", pt.u);
  detail::add_element(r, "s", pt.s);
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const GroupElement id = GroupElement::identity(GroupId::circle_integers());
    if (std::abs(pt.y.coord() - id.coord()) < 1e-12 && pt.y.discrete() == 0) {
      rep.skipped = true;
      rep.note = "y is the identity: S_y is not a function there";
      return;
    }
    const WeightEvaluator we(Tropical{}, spec);
    const double rad = 1.0;
    const GroupElement xy = pt.x + pt.y;
    auto mod = [](const GroupElement& e) { return std::abs(e.coord()); };
    auto star_ok = [](double lam, double y) { return 1.0 / lam < y && y < lam; };
    if (!star_ok(mod(pt.x), mod(pt.u) / rad) || !star_ok(mod(pt.y), rad / mod(pt.s)) ||
        !star_ok(mod(xy), mod(pt.u) / mod(pt.s)))
      fail(ErrorKind::OutOfDomain, "star weight sums diverge on the unit circle");
    auto S = [](const GroupElement& l, const GroupElement& y) {
      return tropical_star_weight(l.coord(), l.discrete(), y.coord(), y.discrete());
    };
    std::size_t terms = 0;
    const QuadratureResult lhs = integrate_circle(
        [&](cplx w) {
          const QuadratureResult inner = sum_bilateral(
              [&](long long n) {
                const GroupElement t = GroupElement::circle_int(w, n);
                return S(pt.x, pt.u - t) * we.W(xy, t) * S(pt.y, t - pt.s);
              },
              spec);
          terms = std::max(terms, inner.nodes_used);
          return inner.value / w;
        },
        rad, spec);
    const cplx rhs = we.W(pt.y, pt.u) * S(xy, pt.u - pt.s) * we.W(pt.x, pt.s);
    const cplx rhs_quad = we.W(pt.y, pt.u) * we.S(xy, pt.u - pt.s).value * we.W(pt.x, pt.s);
    rep.nodes = lhs.nodes_used;
    rep.terms = terms;
    detail::Worst w;
    w.add(lhs.value, rhs);
    detail::Worst cross;
    cross.add(rhs_quad, rhs);
    rep.note = "quadrature star weight cross-check residual " + detail::fmt_sci(cross.abs);
    detail::finish(rep, w);
    rep.abs_residual = std::max(rep.abs_residual, cross.abs);
    rep.rel_residual = std::max(rep.rel_residual, cross.rel);
    rep.passed = rep.abs_residual <= rep.tolerance || rep.rel_residual <= rep.tolerance;
  });
}

/// The double-integral identity
/// ∫∫ ⟨u,s⟩⟨t,v⟩/⟨s,t⟩ W_x(s)W_{x+y}(t)W_y(v) = ∫∫ ⟨u,s⟩⟨t,v⟩/⟨s,t⟩ W_y(u)W_{x+y}(s)W_x(t)
/// over (𝕋×ℤ)², s and t on unit circles. For fixed circle coordinates the
/// integer sums separate.
inline VerificationReport check_int_id(const StarPoint& pt, const NumericsSpec& spec = {}) {
  auto r = detail::make_report("int_id", GroupId::circle_integers(), describe(Tropical{}), 1e-6);
  const GroupElement& u = pt.u;
  const GroupElement& v = pt.s;
  detail::add_element(r, "x", pt.x);
  detail::add_element(r, "y", pt.y);
  detail::add_element(r, "u", u);
  detail::add_element(r, "v", v);
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const WeightEvaluator we(Tropical{}, spec);
    const GroupElement xy = pt.x + pt.y;
    auto mod = [](const GroupElement& e) { return std::abs(e.coord()); };
    auto ok = [](double lam, double t) { return 1.0 / lam < t && t < lam; };
    if (!ok(mod(pt.x), mod(u)) || !ok(mod(xy), mod(v)) || !ok(mod(xy), mod(u)) || !ok(mod(pt.x), mod(v)))
      fail(ErrorKind::OutOfDomain, "int-id integer sums diverge on the unit circles");
    const NumericsSpec inner = detail::without_radius(spec);
    // ⟨u,s⟩⟨t,v⟩/⟨s,t⟩ = (U/T)^i S^{l_u} · (V/S)^j T^{l_v} for s = (S,i), t = (T,j).
    auto side = [&](const GroupElement& first, const GroupElement& second) {
      return integrate_circle(
          [&](cplx S) {
            return integrate_circle(
                       [&](cplx T) {
                         const cplx a = sum_bilateral(
                                            [&](long long i) {
                                              return ipow(u.coord() / T, i) * we.W(first, GroupElement::circle_int(S, i));
                                            },
                                            inner)
                                            .value;
                         const cplx b = sum_bilateral(
                                            [&](long long j) {
                                              return ipow(v.coord() / S, j) * we.W(second, GroupElement::circle_int(T, j));
                                            },
                                            inner)
                                            .value;
                         return a * b * ipow(S, u.discrete()) * ipow(T, v.discrete()) / T;
                       },
                       1.0, inner)
                       .value /
                   S;
          },
          1.0, inner);
    };
    const QuadratureResult l = side(pt.x, xy);
    const QuadratureResult rr = side(xy, pt.x);
    detail::Worst w;
    w.add(l.value * we.W(pt.y, v), rr.value * we.W(pt.y, u));
    rep.nodes = std::max(l.nodes_used, rr.nodes_used);
    detail::finish(rep, w);
  });
}

// ---------------------------------------------------------------------------
// Pentagon (advisory)

/// φ(x)φ(y) = γ∫_{A³} ⟨u-x,w-y⟩/⟨u-v+w⟩ φ(w)φ(v)φ(u) for the tropical family
/// with u, v, w on circles of radii (ru, rv, rw). For fixed circle
/// coordinates the three integer sums separate; they converge absolutely when
/// rv < min(|x|,|y|), rv > max(ru|y|, rw|x|) and rv < ru·rw < 1.
inline VerificationReport check_pentagon_tropical(const GroupElement& x, const GroupElement& y, double ru, double rv,
                                                  double rw, const NumericsSpec& spec = {}) {
  auto r = detail::make_report("pentagon", GroupId::circle_integers(), describe(Tropical{}), 1e-6);
  r.advisory = true;
  detail::add_element(r, "x", x);
  detail::add_element(r, "y", y);
  detail::add_complex(r, "ru", ru);
  detail::add_complex(r, "rv", rv);
  detail::add_complex(r, "rw", rw);
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const double X = std::abs(x.coord()), Y = std::abs(y.coord());
    if (!(rv < std::min(X, Y) && rv > std::max(ru * Y, rw * X) && rv < ru * rw && ru * rw < 1.0))
      fail(ErrorKind::OutOfDomain, "pentagon sums do not converge absolutely at these radii");
    const NumericsSpec inner = detail::without_radius(spec);
    auto series = [&](cplx ratio, cplx z) {
      return sum_bilateral([&](long long k) { return ipow(ratio, k) * tropical_phi(z, k); }, inner).value;
    };
    const cplx xc = x.coord(), yc = y.coord();
    const long long nx = x.discrete(), ny = y.discrete();
    // Tensor trapezoid rule on the three circles; the a- and c-sums depend on
    // two of the coordinates only and are tabulated once per grid.
    auto grid = [&](std::size_t n) {
      std::vector<cplx> zu(n), zv(n), zw(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        zu[k] = std::polar(ru, th);
        zv[k] = std::polar(rv, th);
        zw[k] = std::polar(rw, th);
      }
      std::vector<cplx> A(n * n), C(n * n);
      for (std::size_t iu = 0; iu < n; ++iu)
        for (std::size_t iv = 0; iv < n; ++iv) A[iu * n + iv] = series(zv[iv] / (zu[iu] * yc), zu[iu]);
      for (std::size_t iv = 0; iv < n; ++iv)
        for (std::size_t iw = 0; iw < n; ++iw) C[iv * n + iw] = series(zv[iv] / (zw[iw] * xc), zw[iw]);
      cplx total{0.0, 0.0};
      for (std::size_t iu = 0; iu < n; ++iu)
        for (std::size_t iw = 0; iw < n; ++iw) {
          const cplx pre = ipow(zu[iu] / xc, -ny) * ipow(zw[iw] / yc, -nx);
          cplx acc{0.0, 0.0};
          for (std::size_t iv = 0; iv < n; ++iv)
            acc += A[iu * n + iv] * series(zu[iu] * zw[iw] / zv[iv], zv[iv]) * C[iv * n + iw];
          total += pre * acc;
        }
      return total / static_cast<double>(n * n * n);
    };
    std::size_t n = 32;
    cplx value = grid(n);
    for (;;) {
      if (2 * n > spec.max_nodes || 2 * n > 256)
        fail(ErrorKind::QuadratureFailure, "pentagon grid did not converge");
      const cplx next = grid(2 * n);
      n *= 2;
      const double diff = std::abs(next - value);
      value = next;
      if (diff <= spec.rel_tol * std::abs(value)) break;
    }
    struct {
      cplx value;
      std::size_t nodes_used;
    } rhs{value, n};
    const GroupId g = GroupId::circle_integers();
    const cplx lhs = tropical_phi(xc, nx) * tropical_phi(yc, ny);
    detail::Worst w;
    w.add(lhs, gamma_constant(g) * rhs.value);
    rep.nodes = rhs.nodes_used;
    detail::finish(rep, w);
  });
}

/// Faddeev pentagon with Gaussian damping e^{-η(u²+v²+w²)}, each η on a
/// uniform grid, extrapolated polynomially to η → 0.
/// Distributional, so the result is reported and never gates.
inline VerificationReport check_pentagon_faddeev(cplx b, double x, double y, const std::vector<double>& etas,
                                                 const NumericsSpec& spec = {}) {
  auto r = detail::make_report("pentagon_regularized", GroupId::real_line(), describe(Faddeev{b}), 1e-6);
  r.advisory = true;
  detail::add_complex(r, "b", b);
  detail::add_complex(r, "x", x);
  detail::add_complex(r, "y", y);
  for (std::size_t i = 0; i < etas.size(); ++i) detail::add_complex(r, "eta" + std::to_string(i), etas[i]);
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    if (etas.size() < 2) fail(ErrorKind::OutOfDomain, "need at least two damping values");
    const cplx gamma = gamma_constant(GroupId::real_line());
    std::vector<cplx> vals;
    for (double eta : etas) {
      if (!(eta > 0.0)) fail(ErrorKind::OutOfDomain, "damping must be positive");
      // e^{-η t²} < 1e-13 beyond |t| = L; the step keeps aliasing of the
      // fastest oscillation, frequency about 2L, far below that.
      const double L = std::sqrt(30.0 / eta);
      const double h = 1.0 / (3.0 * L);
      const long long n = static_cast<long long>(std::ceil(L / h));
      std::vector<cplx> ph(static_cast<std::size_t>(2 * n + 1));
      auto node = [&](long long i) { return static_cast<double>(i) * h; };
      for (long long i = -n; i <= n; ++i) {
        const double t = node(i);
        ph[static_cast<std::size_t>(i + n)] = faddeev_phi(b, t, FaddeevRep::Auto, spec) * std::exp(-eta * t * t);
      }
      // G(s) = ∫ φ(v) e^{-ηv²} e^{-πi(s-v)²} dv on s = u + w, which lies on the
      // doubled grid; the chirp depends on the index difference only.
      std::vector<cplx> chirp(static_cast<std::size_t>(6 * n + 1));
      for (long long d = -3 * n; d <= 3 * n; ++d) {
        const double t = node(d);
        chirp[static_cast<std::size_t>(d + 3 * n)] = std::polar(1.0, -kPi * t * t);
      }
      std::vector<cplx> G(static_cast<std::size_t>(4 * n + 1));
      for (long long k = -2 * n; k <= 2 * n; ++k) {
        cplx acc{0.0, 0.0};
        for (long long i = -n; i <= n; ++i)
          acc += ph[static_cast<std::size_t>(i + n)] * chirp[static_cast<std::size_t>(k - i + 3 * n)];
        G[static_cast<std::size_t>(k + 2 * n)] = acc * h;
      }
      cplx total{0.0, 0.0};
      for (long long i = -n; i <= n; ++i) {
        const double u = node(i);
        // e^{2πi(u-x)(w-y)} along the row, advanced by e^{2πi(u-x)h}.
        cplx phase = std::polar(1.0, 2.0 * kPi * (u - x) * (node(-n) - y));
        const cplx step = std::polar(1.0, 2.0 * kPi * (u - x) * h);
        cplx row{0.0, 0.0};
        for (long long j = -n; j <= n; ++j, phase *= step)
          row += ph[static_cast<std::size_t>(j + n)] * phase * G[static_cast<std::size_t>(i + j + 2 * n)];
        total += ph[static_cast<std::size_t>(i + n)] * row;
      }
      vals.push_back(gamma * total * h * h);
      rep.nodes = std::max(rep.nodes, static_cast<std::size_t>(2 * n + 1));
    }
    // Polynomial extrapolation in η to η = 0 through all values, compared
    // with the one that drops the largest η.
    auto extrapolate = [&](std::size_t first) {
      cplx acc{0.0, 0.0};
      for (std::size_t a = first; a < vals.size(); ++a) {
        double wgt = 1.0;
        for (std::size_t c = first; c < vals.size(); ++c)
          if (c != a) wgt *= etas[c] / (etas[c] - etas[a]);
        acc += wgt * vals[a];
      }
      return acc;
    };
    const cplx extrap = extrapolate(0);
    const cplx coarse = extrapolate(1);
    const double shift = std::abs(extrap - coarse);
    rep.note = "extrapolation shift " + detail::fmt_sci(shift);
    if (shift > 0.1 * std::abs(extrap))
      fail(ErrorKind::ExtrapolationUnstable, "damping extrapolation is not settling");
    detail::Worst w;
    w.add(faddeev_phi(b, x, FaddeevRep::Auto, spec) * faddeev_phi(b, y, FaddeevRep::Auto, spec), extrap);
    detail::finish(rep, w);
  });
}

// ---------------------------------------------------------------------------
// Validated parameter sets and suites

inline std::vector<YbePoint> validated_ybe_points() {
  auto C = [](double r, double a, long long k) { return GroupElement::circle_int(std::polar(r, a), k); };
  return {
      {C(1.5, 0.3, 0), C(1.6, -0.2, 0), C(1, 0.1, 0), C(1, 1.9, 0), C(1, 0.7, 0), C(1, -0.4, 0)},
      {C(1.3, -0.5, 1), C(2.0, 0.9, -1), C(1, 0.4, 1), C(1, 0.3, 3), C(1, -1.2, -2), C(1, 2.2, 0)},
      {C(1.8, 2.0, 2), C(1.2, -1.4, 1), C(1, -0.9, -1), C(1, -2.5, 0), C(1, 0.2, 1), C(1, 1.1, 2)},
  };
}

inline std::vector<StarPoint> validated_star_points() {
  auto C = [](double r, double a, long long k) { return GroupElement::circle_int(std::polar(r, a), k); };
  return {
      {C(1.5, 0.2, 0), C(1.6, -0.4, 0), C(1, 1.1, 0), C(1, -0.3, 0)},
      {C(1.4, 0.5, 1), C(1.9, -0.2, 2), C(1, 0.7, -1), C(1, -1.2, 1)},
  };
}

inline std::vector<StarPoint> validated_int_id_points() {
  auto C = [](double r, double a, long long k) { return GroupElement::circle_int(std::polar(r, a), k); };
  return {
      {C(2.5, 0.2, 0), C(1.6, -0.4, 1), C(1, 1.1, 0), C(1, -0.3, 2)},
      {C(2.2, 0.5, 1), C(2.2, 0.5, 1), C(1, 0.7, 1), C(1, -1.2, -1)},
  };
}

struct SuiteConfig {
  std::uint64_t seed = 7;
  NumericsSpec numerics;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"core", "faddeev", "ybe", "advisory", "full"};
  return names;
}

namespace detail {

inline void run_faddeev(std::vector<VerificationReport>& out, const SuiteConfig& c) {
  const NumericsSpec& s = c.numerics;
  for (cplx b : {cplx(0.8, 0.6), special_b()}) out.push_back(check_inversion(Faddeev{b}, 50, c.seed, s));
  for (int n : {1, 2, 3}) out.push_back(check_inversion(AndersenKashaev{n, kPi / 3.0}, 50, c.seed, s));
  for (cplx b : {cplx(1.0, 0.0), cplx(1.1, 0.0), special_b()}) out.push_back(check_unitarity(b, -3.0, 3.0, 121, s));
  out.push_back(check_representation_agreement(std::polar(1.0, kPi / 5.0), FaddeevRep::Product,
                                               FaddeevRep::FaddeevIntegral, -1.0, 1.0, 9, 1e-8, s));
  out.push_back(check_representation_agreement(1.1, FaddeevRep::FaddeevIntegral, FaddeevRep::Woronowicz, -1.0, 1.0,
                                               9, 1e-7, s));
  const auto wgz = sample_wgz_points(5, c.seed);
  out.push_back(check_wgz_special(wgz, s));
  out.push_back(check_wgz_quasi_periodicity(wgz));
  const auto real_pts = sample_real_irf_points(3, c.seed);
  out.push_back(check_faddeev_m(real_pts, s));
  out.push_back(check_irf_quasi_invariance(Faddeev{special_b()}, real_pts, s));
}

inline void run_circle(std::vector<VerificationReport>& out, const SuiteConfig& c) {
  const NumericsSpec& s = c.numerics;
  out.push_back(check_inversion(Tropical{}, 50, c.seed, s));
  for (double q : {0.2, 0.5}) out.push_back(check_inversion(DGG{q}, 50, c.seed, s));
  auto psi = sample_1psi1(5, c.seed);
  out.push_back(check_1psi1(psi, s));
  out.push_back(check_1psi1({{0.2, 0.3, 0.4, 0.3}, {0.3, 0.3, 0.5, 0.3}}, s));
  out.back().identity = "ramanujan_1psi1_binomial";
  out.push_back(check_weil_closed_forms(Tropical{}, sample_weil_points(20, c.seed), s));
  out.push_back(check_weil_closed_forms(DGG{0.3}, sample_weil_points(10, c.seed + 1), s));
  const auto irf = sample_circle_irf_points(20, c.seed);
  out.push_back(check_tropical_m_representations(irf, s));
  const std::vector<IrfPoint> few(irf.begin(), irf.begin() + 4);
  out.push_back(check_dgg_m_contour(0.3, few, s));
  const auto fpts = sample_factorization_points(10, c.seed);
  out.push_back(check_weil_weight_factorization(Tropical{}, fpts, s));
  out.push_back(check_weil_weight_factorization(DGG{0.4}, fpts, s));
  for (const DilogSpec& d : {DilogSpec{Tropical{}}, DilogSpec{DGG{0.3}}}) {
    out.push_back(check_irf_quasi_invariance(d, few, s));
    out.push_back(check_irf_bhatb(d, few, s));
  }
}

inline void run_ybe(std::vector<VerificationReport>& out, const SuiteConfig& c) {
  const NumericsSpec& s = c.numerics;
  const auto ybe = validated_ybe_points();
  for (const auto& p : ybe) out.push_back(check_irf_ybe(Tropical{}, p, s));
  out.push_back(check_irf_ybe(DGG{0.2}, ybe.front(), s));
  for (const auto& p : validated_star_points()) out.push_back(check_star_triangle(p, s));
  for (const auto& p : validated_int_id_points()) out.push_back(check_int_id(p, s));
}

inline void run_advisory(std::vector<VerificationReport>& out, const SuiteConfig& c) {
  const NumericsSpec& s = c.numerics;
  // Radii r⁴ for x, y and (r², r⁵, r²) for the circles make every geometric
  // ratio in the three integer sums equal to r or smaller.
  const double r = 0.3;
  out.push_back(check_pentagon_tropical(GroupElement::circle_int(std::polar(std::pow(r, 4), 0.3), 2),
                                        GroupElement::circle_int(std::polar(std::pow(r, 4), -0.5), 1), r * r,
                                        std::pow(r, 5), r * r, s));
  out.push_back(check_pentagon_faddeev(std::polar(1.0, kPi / 5.0), 0.1, -0.2, {0.2, 0.1, 0.05, 0.025}, s));
}

}  // namespace detail

/// Runs a named suite in its fixed order. "core" holds every gating check,
/// "faddeev" the ℝ-family subset, "ybe" the Yang–Baxter type relations,
/// "advisory" the pentagon checks, "full" core followed by advisory.
inline std::vector<VerificationReport> run_suite(const std::string& name, const SuiteConfig& config = {}) {
  std::vector<VerificationReport> out;
  if (name == "core") {
    detail::run_faddeev(out, config);
    detail::run_circle(out, config);
    detail::run_ybe(out, config);
  } else if (name == "faddeev") {
    detail::run_faddeev(out, config);
  } else if (name == "ybe") {
    detail::run_ybe(out, config);
  } else if (name == "advisory") {
    detail::run_advisory(out, config);
  } else if (name == "full") {
    out = run_suite("core", config);
    detail::run_advisory(out, config);
  } else {
    fail(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");
  }
  return out;
}

struct SuiteSummary {
  std::size_t total = 0, passed = 0, failed = 0, errors = 0, advisory = 0, skipped = 0;
  bool all_passed = true;
};

/// Advisory and skipped reports never affect all_passed.
inline SuiteSummary summarize(const std::vector<VerificationReport>& reports) {
  SuiteSummary s;
  for (const auto& r : reports) {
    ++s.total;
    if (r.advisory) ++s.advisory;
    if (r.skipped) {
      ++s.skipped;
      continue;
    }
    if (r.error) ++s.errors;
    if (r.passed) {
      ++s.passed;
    } else {
      ++s.failed;
      if (!r.advisory) s.all_passed = false;
    }
  }
  return s;
}

}  // namespace qdl
