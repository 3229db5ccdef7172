#pragma once

// The generalized Faddeev–Volkov weight W, its Fourier transform S (star
// weight), its Weil transform Ŵ and the IRF weight M = χ·Ŵ, together with
// the closed forms for Faddeev's Φ_b, the tropical and the DGG dilogarithms.
//
// Weil sums over 𝕋×ℤ diverge on the torus itself, so those evaluations take
// complexified arguments and check the convergence annulus before summing.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qdl/errors.hpp"
#include "qdl/lca.hpp"
#include "qdl/numerics.hpp"
#include "qdl/qdilog.hpp"
#include "qdl/qseries.hpp"
#include "qdl/transforms.hpp"

namespace qdl {

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Requires lo < value < hi; OutOfDomain otherwise.
inline void require_between(double lo, double value, double hi, const std::string& what) {
  if (!(lo < value && value < hi))
    fail(ErrorKind::OutOfDomain, what + ": need " + fmt(lo) + " < " + fmt(value) + " < " + fmt(hi));
}

inline double geometric_mid(double lo, double hi, const std::string& what) {
  if (!(lo < hi)) fail(ErrorKind::OutOfDomain, what + ": empty annulus (" + fmt(lo) + ", " + fmt(hi) + ")");
  return std::sqrt(lo * hi);
}

}  // namespace detail

/// W, S, Ŵ and M built from one dilogarithm.
class WeightEvaluator {
 public:
  explicit WeightEvaluator(DilogSpec dilog, NumericsSpec spec = {})
      : dilog_(dilog), group_(group_of(dilog)), spec_(spec) {
    validate(dilog_);
    spec_.validate();
    phi0_ = phi(dilog_, GroupElement::identity(group_), spec_);
  }

  const GroupId& group() const { return group_; }
  const DilogSpec& dilog() const { return dilog_; }
  const NumericsSpec& numerics() const { return spec_; }
  cplx phi0() const { return phi0_; }
  cplx phi_at(const GroupElement& x) const { return phi(dilog_, x, spec_); }

  /// W_λ(x) = φ(x-λ)φ(-x-λ) / (φ(0)²⟨x⟩⟨λ⟩).
  cplx W(const GroupElement& lambda, const GroupElement& x) const {
    return phi_at(x - lambda) * phi_at(-x - lambda) /
           (phi0_ * phi0_ * gaussian(group_, x) * gaussian(group_, lambda));
  }

  /// W_λ(x) = φ(x-λ)/φ(x+λ)·⟨x,λ⟩.
  cplx W_ratio_form(const GroupElement& lambda, const GroupElement& x) const {
    return phi_at(x - lambda) / phi_at(x + lambda) * fourier_kernel(group_, x, lambda);
  }

  /// S_λ(y) = ∫_A ⟨y,z⟩ W_λ(z) dz over 𝕋×ℤ, needing |y/λ| < 1 < |yλ| on
  /// the circle coordinates.
  QuadratureResult S(const GroupElement& lambda, const GroupElement& y) const {
    if (group_.kind != GroupKind::CircleTimesIntegers)
      fail(ErrorKind::UnsupportedGroup, "star weight is only available over TxZ");
    lambda.check_in(group_);
    y.check_in(group_);
    const double L = std::abs(lambda.coord());
    const double Y = std::abs(y.coord());
    detail::require_between(1.0 / L, Y, L, "star weight");
    const cplx yc = y.coord();
    const long long l = y.discrete();
    std::size_t inner_nodes = 0;
    double inner_err = 0.0;
    QuadratureResult r = integrate_circle(
        [&](cplx w) {
          QuadratureResult s = sum_bilateral(
              [&](long long n) { return ipow(yc, n) * W(lambda, GroupElement::circle_int(w, n)); }, spec_);
          inner_nodes = std::max(inner_nodes, s.nodes_used);
          inner_err = std::max(inner_err, s.error_estimate);
          return ipow(w, l) * s.value / w;
        },
        1.0, spec_);
    r.error_estimate += inner_err;
    r.nodes_used *= inner_nodes;
    return r;
  }

  /// Checks that Σ_k W_λ(s+b_k)⟨t,b_k⟩ converges.
  void check_weil_weight_domain(const GroupElement& lambda, const GroupElement& t) const {
    switch (group_.kind) {
      case GroupKind::CircleTimesIntegers: {
        const double L = std::abs(lambda.coord());
        detail::require_between(1.0 / L, std::abs(t.coord()), L, "Weil weight |t|");
        return;
      }
      case GroupKind::RealLine:
      case GroupKind::RealTimesCyclic:
        if (!(lambda.coord().imag() < -std::abs(t.coord().imag())))
          fail(ErrorKind::OutOfDomain, "Weil weight needs Im lambda < -|Im t|");
        return;
    }
  }

  /// Ŵ_λ(s,t) = Σ_k W_λ(s + b_k)⟨t, b_k⟩.
  QuadratureResult What(const GroupElement& lambda, const GroupElement& s, const GroupElement& t) const {
    lambda.check_in(group_);
    check_weil_weight_domain(lambda, t);
    return weil_forward(group_, [&](const GroupElement& x) { return W(lambda, x); }, s, t, spec_);
  }

  /// Contour for the factored Weil weight: the midpoint (ℝ) or geometric
  /// mean (𝕋×ℤ) of the interval where both φ̌ series converge.
  QuotientContour factored_contour(const GroupElement& lambda, const GroupElement& s,
                                   const GroupElement& t) const {
    QuotientContour c;
    switch (group_.kind) {
      case GroupKind::RealLine: {
        const double il = lambda.coord().imag();
        const double is = s.coord().imag();
        const double it = t.coord().imag();
        const double lo = std::max(il - it, is + il);
        const double hi = std::min(is - it, 0.0);
        if (!(lo < hi))
          fail(ErrorKind::OutOfDomain, "factored Weil weight: empty strip (" + detail::fmt(lo) + ", " +
                                           detail::fmt(hi) + ")");
        c.im_shift = 0.5 * (lo + hi);
        return c;
      }
      case GroupKind::CircleTimesIntegers: {
        const double L = std::abs(lambda.coord());
        const double S = std::abs(s.coord());
        const double T = std::abs(t.coord());
        const double lo = std::max(1.0, S / T);
        const double hi = std::min(S * L, L / T);
        c.radius = spec_.contour_radius.value_or(detail::geometric_mid(lo, hi, "factored Weil weight"));
        detail::require_between(lo, c.radius, hi, "factored Weil weight radius");
        return c;
      }
      case GroupKind::RealTimesCyclic: break;
    }
    fail(ErrorKind::UnsupportedGroup, "factored Weil weight is implemented for R and TxZ");
  }

  /// Ŵ_λ(s,t) = [φ(0)²⟨s⟩⟨λ⟩]⁻¹ ∫_{A/B} φ̌(s-λ, y+t-s-ε) φ̌(-s-λ, y) dy.
  QuadratureResult What_factored(const GroupElement& lambda, const GroupElement& s, const GroupElement& t,
                                 std::optional<GroupElement> eps = std::nullopt) const {
    lambda.check_in(group_);
    s.check_in(group_);
    t.check_in(group_);
    const QuotientContour c = factored_contour(lambda, s, t);
    const WeilFunction fc = weil_phi(dilog_, spec_);
    const GroupElement e = eps.value_or(epsilon(group_));
    const GroupElement a1 = s - lambda;
    const GroupElement a2 = -s - lambda;
    const GroupElement shift = t - s - e;
    QuadratureResult r = integrate_quotient(
        group_, [&](const GroupElement& y) { return fc(a1, y + shift) * fc(a2, y); }, c, spec_);
    const cplx pre = phi0_ * phi0_ * gaussian(group_, s) * gaussian(group_, lambda);
    r.value /= pre;
    r.error_estimate /= std::abs(pre);
    return r;
  }

  /// M(x,y,z) = χ(x,y) Ŵ_z(x,y).
  QuadratureResult M(const GroupElement& x, const GroupElement& y, const GroupElement& z) const {
    const cplx chi = bicharacter(group_, x, y);
    QuadratureResult r = What(z, x, y);
    r.value *= chi;
    r.error_estimate *= std::abs(chi);
    return r;
  }

  /// M over B̂×B: x̂(ż) Σ_b φ((x̂-ẑ, b-ż))/φ((x̂+ẑ, b+ż)) ẑ(b) ŷ(b). Carries no
  /// dependence on ẋ or ẏ.
  QuadratureResult M_bhatb(const GroupElement& x, const GroupElement& y, const GroupElement& z) const {
    if (group_.kind != GroupKind::CircleTimesIntegers)
      fail(ErrorKind::UnsupportedGroup, "B-hat x B form is only available over TxZ");
    x.check_in(group_);
    check_weil_weight_domain(z, y);
    const cplx X = x.coord();
    const cplx Z = z.coord();
    const cplx ZY = z.coord() * y.coord();
    const long long m = z.discrete();
    QuadratureResult r = sum_bilateral(
        [&](long long b) {
          return phi_at(GroupElement::circle_int(X / Z, b - m)) / phi_at(GroupElement::circle_int(X * Z, b + m)) *
                 ipow(ZY, b);
        },
        spec_);
    const cplx pre = ipow(X, m);
    r.value *= pre;
    r.error_estimate *= std::abs(pre);
    return r;
  }

 private:
  DilogSpec dilog_;
  GroupId group_;
  NumericsSpec spec_;
  cplx phi0_{1.0, 0.0};
};

/// Tropical star weight S_λ(y), λ = (Λ,m), y = (Y,l), summed in closed form.
///
/// Only n with W_λ((w,n)) ∝ w^{-l} contribute: the tail n ≥ |m| when l = m,
/// the tail n ≤ -|m| when l = -m, and the single n = ±l with |l| < |m|.
inline cplx tropical_star_weight(cplx lam, long long m, cplx y, long long l) {
  const double L = std::abs(lam);
  detail::require_between(1.0 / L, std::abs(y), L, "star weight");
  const long long am = m < 0 ? -m : m;
  cplx s{0.0, 0.0};
  if (l == m) {
    const cplx r = y / lam;
    s += ipow(r, am) / (1.0 - r);
  }
  if (l == -m) {
    const cplx r = 1.0 / (y * lam);
    const long long start = m == 0 ? 1 : am;
    s += ipow(r, start) / (1.0 - r);
  }
  const long long al = l < 0 ? -l : l;
  if (al < am) {
    if (m > 0) s += ipow(y, l) * ipow(lam, -m);
    else s += ipow(y, -l) * ipow(lam, m);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Faddeev IRF weight over ℝ

enum class WeilSource { Auto, Series, ClosedForm };

/// Imaginary offset of the u-contour for the Faddeev M integral: midpoint of
/// (max(Im(z-y), Im(x+z)), min(Im(x-y), 0)), where both WGZ series converge.
inline double faddeev_irf_shift(cplx x, cplx y, cplx z) {
  const double lo = std::max((z - y).imag(), (x + z).imag());
  const double hi = std::min((x - y).imag(), 0.0);
  if (!(lo < hi))
    fail(ErrorKind::OutOfDomain, "Faddeev M: empty contour strip (" + detail::fmt(lo) + ", " + detail::fmt(hi) + ")");
  return 0.5 * (lo + hi);
}

/// M = Φ(0)⁻² e^{πi(xy-x²-z²)} ∫_0^1 φ̌(x-z, u+y-x-1/2) φ̌(-x-z, u) du.
inline QuadratureResult faddeev_irf_m(cplx b, cplx x, cplx y, cplx z, WeilSource source = WeilSource::Auto,
                                      const NumericsSpec& spec = {}) {
  const bool special = std::abs(b - special_b()) < 1e-15;
  if (source == WeilSource::ClosedForm && !special)
    fail(ErrorKind::OutOfDomain, "closed-form WGZ transform exists only for b = e^{i pi/6}");
  const bool closed = special && source != WeilSource::Series;
  const double sh = faddeev_irf_shift(x, y, z);
  const cplx p0 = faddeev_phi(b, 0.0, FaddeevRep::Auto, spec);
  auto fc = [&](cplx a, cplx c) -> cplx {
    if (closed) return wgz_phi_special(a, c);
    return weil_forward(
               GroupId::real_line(), [&](const GroupElement& e) { return faddeev_phi(b, e.coord(), FaddeevRep::Auto, spec); },
               GroupElement::real(a), GroupElement::real(c), spec)
        .value;
  };
  QuadratureResult r = integrate_unit_interval_periodic(
      [&](double u) {
        const cplx uc(u, sh);
        return fc(x - z, uc + y - x - 0.5) * fc(-x - z, uc);
      },
      spec);
  const cplx pre = std::exp(kI * kPi * (x * y - x * x - z * z)) / (p0 * p0);
  r.value *= pre;
  r.error_estimate *= std::abs(pre);
  return r;
}

/// The θ/q-Pochhammer contour form of M at b = e^{iπ/6}.
inline QuadratureResult faddeev_irf_m_special(cplx x, cplx y, cplx z, const NumericsSpec& spec = {}) {
  const cplx q = special_q();
  const cplx q2 = q * q;
  const cplx bbar = std::conj(special_b());
  const double sh = faddeev_irf_shift(x, y, z);
  const cplx p0 = faddeev_phi(special_b(), 0.0, FaddeevRep::Product, spec);
  auto E = [](cplx w) { return std::exp(w); };
  const cplx pre_num = qpochhammer(q2, q2) * qpochhammer(q2, q2) * qpochhammer(-E(2.0 * kPi * kI * (x - z)), q2) *
                       qpochhammer(-E(-2.0 * kPi * kI * (x + z)), q2);
  const cplx pre_den = E(kI * kPi * (x * x + z * z - x * y)) * p0 * p0 *
                       theta_q(q, -E(2.0 * kPi * bbar * (x - z))) * theta_q(q, -E(-2.0 * kPi * bbar * (x + z)));
  const cplx pre = detail::checked_ratio(pre_num, pre_den, "faddeev_irf_m_special: prefactor pole");
  QuadratureResult r = integrate_unit_interval_periodic(
      [&](double uu) {
        const cplx u(uu, sh);
        const cplx num = theta_q(q, E(2.0 * kPi * kI * (kI * bbar * (z - x) + x - y - u))) *
                         theta_q(q, -E(2.0 * kPi * kI * (kI * bbar * (x + z) - u)));
        const cplx den = qpochhammer(-E(2.0 * kPi * kI * (x - y - u)), q2) * qpochhammer(E(2.0 * kPi * kI * (u + y - z)), q2) *
                         qpochhammer(E(-2.0 * kPi * kI * u), q2) * qpochhammer(-E(2.0 * kPi * kI * (u - x - z)), q2);
        return num / den;
      },
      spec);
  r.value *= pre;
  r.error_estimate *= std::abs(pre);
  return r;
}

// ---------------------------------------------------------------------------
// IRF weights over 𝕋×ℤ

enum class TropicalMRep { Contour, Sum, Residue };

inline std::string_view to_string(TropicalMRep r) {
  switch (r) {
    case TropicalMRep::Contour: return "contour";
    case TropicalMRep::Sum: return "sum";
    case TropicalMRep::Residue: return "residue";
  }
  return "?";
}

namespace detail {

// Annulus max(|x|,|y|) < r < min(|z|,|xyz|) of the 𝕋×ℤ contour formulas.
inline double irf_contour_radius(cplx x, cplx y, cplx z, const NumericsSpec& spec) {
  const double lo = std::max(std::abs(x), std::abs(y));
  const double hi = std::min(std::abs(z), std::abs(x * y * z));
  const double r = spec.contour_radius.value_or(geometric_mid(lo, hi, "IRF contour"));
  require_between(lo, r, hi, "IRF contour radius");
  return r;
}

inline void require_irf_sum_domain(cplx y, cplx z) {
  const double Z = std::abs(z);
  require_between(1.0 / Z, std::abs(y), Z, "IRF sum |y|");
}

// Residue at 0 of v^{-p}/∏_i (v - a_i), p ≥ 1: the v^{p-1} coefficient of
// ∏(-1/a_i)·∏ 1/(1 - v/a_i), i.e. ∏(-1/a_i)·h_{p-1}(1/a_1, …).
inline cplx residue_at_zero(const std::vector<cplx>& a, long long p) {
  std::vector<cplx> h(static_cast<std::size_t>(p), cplx(0.0, 0.0));
  h[0] = 1.0;
  for (cplx ai : a) {
    const cplx w = 1.0 / ai;
    for (std::size_t j = 1; j < h.size(); ++j) h[j] += w * h[j - 1];
  }
  cplx pre{1.0, 0.0};
  for (cplx ai : a) pre *= -1.0 / ai;
  return pre * h.back();
}

}  // namespace detail

/// Tropical IRF weight M((x,k),(y,l),(z,m)); independent of k and l.
///
/// Contour and Residue need max(|x|,|y|) < r < min(|z|,|xyz|); Sum needs
/// |y/z| < 1 < |zy|.
inline QuadratureResult tropical_irf_m(cplx x, long long /*k*/, cplx y, long long /*l*/, cplx z, long long m,
                                       TropicalMRep rep, const NumericsSpec& spec = {}) {
  if (x == cplx(0.0, 0.0) || y == cplx(0.0, 0.0) || z == cplx(0.0, 0.0))
    fail(ErrorKind::OutOfDomain, "tropical M needs nonzero circle coordinates");
  if (rep == TropicalMRep::Sum) {
    detail::require_irf_sum_domain(y, z);
    const cplx xz_ratio = x / z;
    const cplx xz = x * z;
    const cplx zy = z * y;
    QuadratureResult r = sum_bilateral(
        [&](long long n) {
          return ipow(xz_ratio, std::max<long long>(n - m, 0)) * ipow(xz, -std::max<long long>(n + m, 0)) *
                 ipow(zy, n);
        },
        spec);
    const cplx pre = ipow(x, m);
    r.value *= pre;
    r.error_estimate *= std::abs(pre);
    return r;
  }
  const double r0 = detail::irf_contour_radius(x, y, z, spec);
  const cplx xyz = x * y * z;
  const cplx pre = (x - z) * y * (1.0 - x * z) / ipow(xyz, m);
  if (rep == TropicalMRep::Contour) {
    QuadratureResult r = integrate_circle(
        [&](cplx v) { return ipow(v, 2 * m + 1) / ((v - x) * (v - y) * (v - z) * (v - xyz)); }, r0, spec);
    r.value *= pre;
    r.error_estimate *= std::abs(pre);
    return r;
  }
  const double scale = std::max(std::abs(x), std::abs(y));
  if (std::abs(x - y) <= 1e-8 * scale) fail(ErrorKind::DegeneratePoles, "x and y poles coincide");
  auto res_at = [&](cplx a, cplx b1, cplx b2, cplx b3) { return ipow(a, 2 * m + 1) / ((a - b1) * (a - b2) * (a - b3)); };
  cplx total = res_at(x, y, z, xyz) + res_at(y, x, z, xyz);
  if (2 * m + 1 < 0) total += detail::residue_at_zero({x, y, z, xyz}, -(2 * m + 1));
  QuadratureResult r;
  r.value = pre * total;
  r.converged = true;
  return r;
}

/// DGG IRF weight by its closed-contour θ-bracket formula; independent of k
/// and l.
inline QuadratureResult dgg_irf_m(double q, cplx x, long long /*k*/, cplx y, long long /*l*/, cplx z, long long m,
                                  const NumericsSpec& spec = {}) {
  if (!(std::abs(q) < 1.0)) fail(ErrorKind::DivergentParameter, "DGG needs |q| < 1");
  const double r0 = detail::irf_contour_radius(x, y, z, spec);
  const double q2 = q * q;
  const cplx xz = x * z;
  const cplx xyz = x * y * z;
  const cplx th1 = theta_q(q, x / z);
  const cplx th1q = theta_q(q, q * x / z);
  const cplx th2 = theta_q(q, 1.0 / xz);
  const cplx th2q = theta_q(q, q / xz);
  for (cplx t : {th1, th1q, th2, th2q})
    if (std::abs(t) < detail::kPoleTol) fail(ErrorKind::PoleHit, "dgg_irf_m: theta normalizer vanishes");
  const cplx pre = qpochhammer(q2, q2) * qpochhammer(q2, q2) * qpochhammer(x * x / (z * z), q2) *
                   qpochhammer(1.0 / (xz * xz), q2) / ipow(xyz, m);
  const cplx xy2z = x * y * y * z;
  QuadratureResult r = integrate_circle(
      [&](cplx v) {
        const cplx v2 = v * v;
        const cplx br1 = theta_q(q, v2 / xz) / th1 + v * theta_q(q, q * v2 / xz) / (x * th1q);
        const cplx br2 = theta_q(q, v2 / xy2z) / th2 + v * theta_q(q, q * v2 / xy2z) / (y * th2q);
        const cplx den = qpochhammer(x * x / v2, q2) * qpochhammer(v2 / (z * z), q2) * qpochhammer(y * y / v2, q2) *
                         qpochhammer(v2 / (xyz * xyz), q2);
        return br1 * br2 * ipow(v, 2 * m - 1) / den;
      },
      r0, spec);
  r.value *= pre;
  r.error_estimate *= std::abs(pre);
  return r;
}

}  // namespace qdl
