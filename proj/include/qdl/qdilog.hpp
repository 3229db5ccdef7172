#pragma once

// Quantum dilogarithms: Faddeev's Φ_b over ℝ (product form and two integral
// representations), the Andersen–Kashaev function over ℝ×ℤ/Nℤ, and the
// tropical and DGG functions over 𝕋×ℤ.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <variant>

#include "qdl/errors.hpp"
#include "qdl/lca.hpp"
#include "qdl/numerics.hpp"
#include "qdl/qseries.hpp"

namespace qdl {

// ---------------------------------------------------------------------------
// Faddeev's quantum dilogarithm

enum class FaddeevRep { Auto, Product, FaddeevIntegral, Woronowicz };

inline std::string_view to_string(FaddeevRep rep) {
  switch (rep) {
    case FaddeevRep::Auto: return "auto";
    case FaddeevRep::Product: return "product";
    case FaddeevRep::FaddeevIntegral: return "integral";
    case FaddeevRep::Woronowicz: return "woronowicz";
  }
  return "?";
}

/// Region of the x-plane where a representation is evaluated: a horizontal
/// strip |Im x| < max_abs_im_x (infinite for the product form).
struct EvalDomain {
  FaddeevRep rep = FaddeevRep::Product;
  double max_abs_im_x = std::numeric_limits<double>::infinity();

  bool contains(cplx x) const { return std::abs(x.imag()) < max_abs_im_x; }
};

namespace detail {
// Strips are shrunk by this margin so the integrands keep a usable decay rate.
inline constexpr double kStripMargin = 1e-3;
inline constexpr double kPoleProximity = 1e-6;
inline constexpr double kRealTol = 1e-14;
// Auto uses the product only when |q_b| is at most this; closer to the unit
// circle the integral is cheaper.
inline constexpr double kAutoProductMaxQ = 0.9;

inline bool is_real_positive(cplx b) { return std::abs(b.imag()) <= kRealTol && b.real() > 0.0; }
}  // namespace detail

/// Validity region of `rep` for parameter b; OutOfDomain when the
/// representation does not apply to b at all. Auto is resolved per argument.
inline EvalDomain faddeev_domain(cplx b, FaddeevRep rep) {
  switch (rep) {
    case FaddeevRep::Product:
      if (!((b * b).imag() > 0.0)) fail(ErrorKind::OutOfDomain, "product form needs Im(b^2) > 0");
      return {rep, std::numeric_limits<double>::infinity()};
    case FaddeevRep::FaddeevIntegral: {
      const double rb = b.real();
      const double rbi = (1.0 / b).real();
      if (!(rb > 0.0 && rbi > 0.0)) fail(ErrorKind::OutOfDomain, "Faddeev integral needs Re b > 0, Re 1/b > 0");
      const bool admitted = (b * b).imag() > 0.0 || std::abs((1.0 - std::abs(b)) * b.imag()) <= detail::kRealTol;
      if (!admitted) fail(ErrorKind::OutOfDomain, "Faddeev integral needs Im(b^2) > 0 or (1-|b|) Im b = 0");
      return {rep, 0.5 * (rb + rbi) * (1.0 - detail::kStripMargin)};
    }
    case FaddeevRep::Woronowicz:
      if (!detail::is_real_positive(b)) fail(ErrorKind::OutOfDomain, "Woronowicz integral needs real b > 0");
      // arg(e^{2πbx}) must stay inside (-π, π) so log(1+·) is continuous.
      return {rep, 0.5 / b.real() * (1.0 - detail::kStripMargin)};
    case FaddeevRep::Auto: break;
  }
  fail(ErrorKind::OutOfDomain, "Auto has no fixed domain");
}

struct PhiValue {
  cplx value{1.0, 0.0};
  double error_estimate = 0.0;
  FaddeevRep rep = FaddeevRep::Product;
  std::size_t nodes = 0;
};

namespace detail {

// Poles of Φ_b sit at c_b + i(m b + n/b), m,n ≥ 0, with c_b = i(b+1/b)/2.
inline void check_pole_proximity(cplx b, cplx x) {
  const cplx binv = 1.0 / b;
  const cplx cb = 0.5 * kI * (b + binv);
  const cplx w = -kI * (x - cb);
  const double det = b.real() * binv.imag() - binv.real() * b.imag();
  if (std::abs(det) < 1e-300) return;
  const double m = (w.real() * binv.imag() - binv.real() * w.imag()) / det;
  const double n = (b.real() * w.imag() - w.real() * b.imag()) / det;
  for (double mi : {std::floor(m), std::ceil(m)}) {
    for (double ni : {std::floor(n), std::ceil(n)}) {
      if (mi < 0.0 || ni < 0.0) continue;
      const cplx pole = cb + kI * (mi * b + ni * binv);
      if (std::abs(x - pole) < kPoleProximity) {
        std::ostringstream os;
        os << "x within " << kPoleProximity << " of the pole (m,n)=(" << mi << "," << ni << ")";
        fail(ErrorKind::PoleProximity, os.str());
      }
    }
  }
}

inline PhiValue faddeev_product(cplx b, cplx x) {
  faddeev_domain(b, FaddeevRep::Product);
  check_pole_proximity(b, x);
  const cplx q = std::exp(kI * kPi * b * b);
  const cplx qbar = std::exp(-kI * kPi / (b * b));
  // Zeros of the two products can coincide (e.g. |b| = 1, x = 1/2); the
  // quotient is then regular but loses digits in proportion to the smallest
  // factor, which sets the error estimate.
  double smallest = std::numeric_limits<double>::infinity();
  auto log_product = [&](cplx a, cplx qq) {
    cplx s{0.0, 0.0};
    for_each_pochhammer_term(a, qq, [&](cplx t) {
      smallest = std::min(smallest, std::abs(1.0 - t));
      s += std::log(1.0 - t);
    });
    return s;
  };
  const cplx num = log_product(-q * std::exp(2.0 * kPi * b * x), q * q);
  const cplx den = log_product(-qbar * std::exp(2.0 * kPi * x / b), qbar * qbar);
  const cplx value = std::exp(num - den);
  const double err = std::numeric_limits<double>::epsilon() * std::abs(value) / std::max(smallest, 1e-300);
  return {value, err, FaddeevRep::Product, 0};
}

// 1/sinh(w) without overflow for large |Re w|.
inline cplx inv_sinh(cplx w) {
  if (w.real() > 20.0) {
    const cplx e = std::exp(-w);
    return 2.0 * e / (1.0 - e * e);
  }
  if (w.real() < -20.0) {
    const cplx e = std::exp(w);
    return -2.0 * e / (1.0 - e * e);
  }
  return 1.0 / std::sinh(w);
}

// log(e^s + 1) computed from the smaller exponential.
inline cplx log1p_exp(cplx s) {
  if (s.real() > 0.0) return s + std::log(1.0 + std::exp(-s));
  return std::log(1.0 + std::exp(s));
}

inline PhiValue faddeev_integral(cplx b, cplx x, const NumericsSpec& spec) {
  const EvalDomain dom = faddeev_domain(b, FaddeevRep::FaddeevIntegral);
  if (!dom.contains(x)) fail(ErrorKind::OutOfDomain, "Faddeev integral needs |Im x| < (Re b + Re 1/b)/2");
  const cplx binv = 1.0 / b;
  // Contour ℝ+iε halfway between the triple pole at 0 and the nearest pole of
  // 1/(sinh(zb) sinh(z/b)) above the axis.
  const double eps = 0.5 * kPi * std::min(b.real(), binv.real());
  auto integrand = [&](cplx z) {
    return std::exp(-2.0 * kI * x * z) * inv_sinh(z * b) * inv_sinh(z * binv) / (4.0 * z);
  };
  const QuadratureResult r = integrate_line(integrand, eps, spec);
  const cplx v = std::exp(r.value);
  return {v, std::abs(v) * r.error_estimate, FaddeevRep::FaddeevIntegral, r.nodes_used};
}

inline PhiValue faddeev_woronowicz(cplx b, cplx x, const NumericsSpec& spec) {
  const EvalDomain dom = faddeev_domain(b, FaddeevRep::Woronowicz);
  if (!dom.contains(x)) fail(ErrorKind::OutOfDomain, "Woronowicz integral needs |Im x| < 1/(2b)");
  const double br = b.real();
  auto integrand = [&](cplx tz) {
    const double t = tz.real();
    const double fermi = t > 0.0 ? std::exp(-t) / (1.0 + std::exp(-t)) : 1.0 / (std::exp(t) + 1.0);
    return log1p_exp(br * br * t + 2.0 * kPi * br * x) * fermi;
  };
  const QuadratureResult r = integrate_line(integrand, 0.0, spec);
  const cplx v = std::exp(kI / (2.0 * kPi) * r.value);
  return {v, std::abs(v) * r.error_estimate / (2.0 * kPi), FaddeevRep::Woronowicz, r.nodes_used};
}

}  // namespace detail

/// Φ_b(x) with an explicit representation and error estimate.
///
/// Auto picks the product when Im(b²) > 0 with |q_b| ≤ 0.9 and the product
/// keeps its digits, otherwise the Faddeev integral; Woronowicz is only used on request (cross-checks).
inline PhiValue faddeev_phi_eval(cplx b, cplx x, FaddeevRep rep = FaddeevRep::Auto,
                                 const NumericsSpec& spec = {}) {
  switch (rep) {
    case FaddeevRep::Product: return detail::faddeev_product(b, x);
    case FaddeevRep::FaddeevIntegral: return detail::faddeev_integral(b, x, spec);
    case FaddeevRep::Woronowicz: return detail::faddeev_woronowicz(b, x, spec);
    case FaddeevRep::Auto: break;
  }
  const double im_b2 = (b * b).imag();
  if (im_b2 > 0.0 && std::exp(-kPi * im_b2) <= detail::kAutoProductMaxQ) {
    PhiValue p = detail::faddeev_product(b, x);
    if (p.error_estimate <= spec.tolerance_for(std::abs(p.value)) * 1e-2 ||
        !faddeev_domain(b, FaddeevRep::FaddeevIntegral).contains(x))
      return p;
  }
  return detail::faddeev_integral(b, x, spec);
}

inline cplx faddeev_phi(cplx b, cplx x, FaddeevRep rep = FaddeevRep::Auto, const NumericsSpec& spec = {}) {
  return faddeev_phi_eval(b, x, rep, spec).value;
}

// ---------------------------------------------------------------------------
// ℝ×ℤ/Nℤ

/// φ(x,m) = ∏_{j<N} Φ_{e^{iθ}}(x/√N + i(1-1/N)cosθ - i e^{-iθ} j/N - i e^{iθ}{(j+m)/N}).
inline cplx ak_phi(int n, double theta, cplx x, long long m) {
  if (n < 1) fail(ErrorKind::OutOfDomain, "N must be positive");
  if (!(theta > 0.0 && theta < kPi / 2.0)) fail(ErrorKind::OutOfDomain, "theta must lie in (0, pi/2)");
  const cplx b = std::polar(1.0, theta);
  const double nd = static_cast<double>(n);
  const cplx shift = kI * (1.0 - 1.0 / nd) * std::cos(theta);
  cplx prod{1.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double frac = static_cast<double>(detail::mod_floor(j + m, n)) / nd;
    const cplx arg = x / std::sqrt(nd) + shift - kI * std::polar(1.0, -theta) * (static_cast<double>(j) / nd) -
                     kI * b * frac;
    prod *= detail::faddeev_product(b, arg).value;
  }
  return prod;
}

// ---------------------------------------------------------------------------
// 𝕋×ℤ

/// φ(z,m) = z^{max(m,0)}.
inline cplx tropical_phi(cplx z, long long m) {
  if (z == cplx(0.0, 0.0)) fail(ErrorKind::OutOfDomain, "tropical_phi needs z != 0");
  return ipow(z, std::max<long long>(m, 0));
}

/// φ(z,m) = (-q^{1-m} z; q²)_∞ / (-q^{1-m}/z; q²)_∞.
///
/// For m > 1 the leading exponents are negative; those finitely many factors
/// are split off and taken as termwise ratios, the rest via (a;q²)_∞.
inline cplx dgg_phi(double q, cplx z, long long m) {
  if (!(std::abs(q) < 1.0)) fail(ErrorKind::DivergentParameter, "DGG needs |q| < 1");
  if (z == cplx(0.0, 0.0)) fail(ErrorKind::OutOfDomain, "dgg_phi needs z != 0");
  long long e = 1 - m;
  cplx head{1.0, 0.0};
  if (e < 0) {
    if (q == 0.0) fail(ErrorKind::DivergentParameter, "q = 0 with m > 1 gives negative powers of q");
    for (; e < 0; e += 2) {
      const double c = std::pow(q, static_cast<double>(e));
      const cplx den = 1.0 + c / z;
      if (std::abs(den) < 1e-300) fail(ErrorKind::PoleHit, "dgg_phi denominator vanishes");
      head *= (1.0 + c * z) / den;
    }
  }
  const double c = e == 0 ? 1.0 : std::pow(q, static_cast<double>(e));
  const double q2 = q * q;
  const cplx den = qpochhammer(-c / z, q2);
  if (std::abs(den) < 1e-300) fail(ErrorKind::PoleHit, "dgg_phi denominator vanishes");
  return head * qpochhammer(-c * z, q2) / den;
}

// ---------------------------------------------------------------------------
// Family selection

struct Faddeev {
  cplx b;
  FaddeevRep rep = FaddeevRep::Auto;
};
struct AndersenKashaev {
  int N;
  double theta;
};
struct Tropical {};
struct DGG {
  double q;
};

using DilogSpec = std::variant<Faddeev, AndersenKashaev, Tropical, DGG>;

inline GroupId group_of(const DilogSpec& d) {
  struct V {
    GroupId operator()(const Faddeev&) const { return GroupId::real_line(); }
    GroupId operator()(const AndersenKashaev& a) const { return GroupId::real_cyclic(a.N); }
    GroupId operator()(const Tropical&) const { return GroupId::circle_integers(); }
    GroupId operator()(const DGG&) const { return GroupId::circle_integers(); }
  };
  return std::visit(V{}, d);
}

inline std::string describe(const DilogSpec& d) {
  std::ostringstream os;
  os.precision(17);
  struct V {
    std::ostringstream& os;
    void operator()(const Faddeev& f) const { os << "faddeev(b=" << f.b.real() << " " << f.b.imag() << ")"; }
    void operator()(const AndersenKashaev& a) const { os << "ak(N=" << a.N << ",theta=" << a.theta << ")"; }
    void operator()(const Tropical&) const { os << "tropical"; }
    void operator()(const DGG& g) const { os << "dgg(q=" << g.q << ")"; }
  };
  std::visit(V{os}, d);
  return os.str();
}

inline void validate(const DilogSpec& d) {
  struct V {
    void operator()(const Faddeev& f) const {
      const bool product = (f.b * f.b).imag() > 0.0;
      const bool integral = std::abs((1.0 - std::abs(f.b)) * f.b.imag()) <= detail::kRealTol && f.b.real() > 0.0;
      if (!product && !integral)
        fail(ErrorKind::OutOfDomain, "Faddeev b needs Im(b^2) > 0 or (1-|b|) Im b = 0");
    }
    void operator()(const AndersenKashaev& a) const {
      if (a.N < 1) fail(ErrorKind::OutOfDomain, "N must be positive");
      if (!(a.theta > 0.0 && a.theta < kPi / 2.0)) fail(ErrorKind::OutOfDomain, "theta must lie in (0, pi/2)");
    }
    void operator()(const Tropical&) const {}
    void operator()(const DGG& g) const {
      if (!(std::abs(g.q) < 1.0)) fail(ErrorKind::DivergentParameter, "DGG needs |q| < 1");
    }
  };
  std::visit(V{}, d);
}

/// φ(x) for the family in `d`; x must belong to the family's group.
inline cplx phi(const DilogSpec& d, const GroupElement& x, const NumericsSpec& spec = {}) {
  x.check_in(group_of(d));
  struct V {
    const GroupElement& x;
    const NumericsSpec& spec;
    cplx operator()(const Faddeev& f) const { return faddeev_phi(f.b, x.coord(), f.rep, spec); }
    cplx operator()(const AndersenKashaev& a) const { return ak_phi(a.N, a.theta, x.coord(), x.discrete()); }
    cplx operator()(const Tropical&) const { return tropical_phi(x.coord(), x.discrete()); }
    cplx operator()(const DGG& g) const { return dgg_phi(g.q, x.coord(), x.discrete()); }
  };
  return std::visit(V{x, spec}, d);
}

}  // namespace qdl
