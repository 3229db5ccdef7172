#pragma once

// Weil transforms along the subgroup B ≅ ℤ, their closed forms for the
// concrete dilogarithms, and Ramanujan's 1ψ1 sum.

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>

#include "qdl/errors.hpp"
#include "qdl/lca.hpp"
#include "qdl/numerics.hpp"
#include "qdl/qdilog.hpp"
#include "qdl/qseries.hpp"

namespace qdl {

using GroupFunction = std::function<cplx(const GroupElement&)>;

/// f̌(x,y) = Σ_k f(x + b_k)⟨y, b_k⟩ by symmetric truncation.
inline QuadratureResult weil_forward(const GroupId& g, const GroupFunction& f, const GroupElement& x,
                                     const GroupElement& y, const NumericsSpec& spec = {}) {
  x.check_in(g);
  y.check_in(g);
  return sum_bilateral(
      [&](long long k) {
        const GroupElement b = embed_b(g, k);
        return f(x + b) * fourier_kernel(g, y, b);
      },
      spec);
}

enum class WeilProvenance { Series, ClosedForm };

/// A function on A² that is quasi-periodic in its first argument and
/// periodic in its second along B.
struct WeilFunction {
  GroupId group;
  WeilProvenance provenance = WeilProvenance::Series;
  std::function<cplx(const GroupElement&, const GroupElement&)> eval;

  cplx operator()(const GroupElement& x, const GroupElement& y) const {
    x.check_in(group);
    y.check_in(group);
    return eval(x, y);
  }
};

/// Wraps weil_forward of f as a WeilFunction.
inline WeilFunction weil_series(const GroupId& g, GroupFunction f, const NumericsSpec& spec = {}) {
  return {g, WeilProvenance::Series,
          [g, f = std::move(f), spec](const GroupElement& x, const GroupElement& y) {
            return weil_forward(g, f, x, y, spec).value;
          }};
}

/// Where the second argument of f̌ runs when integrating over A/B: the
/// imaginary offset of [0,1) (or of the ℝ-part of the ℝ×ℤ/Nℤ domain), or
/// the radius of the circle for 𝕋×ℤ.
struct QuotientContour {
  double im_shift = 0.0;
  double radius = 1.0;
};

/// ∫_{A/B} F(t) dt with the quotient measure of total mass one.
///
/// ℝ/ℤ: t = u + i·shift, u ∈ [0,1). ℝ×ℤ/Nℤ modulo B: t = ((u + i·shift)/√N, j)
/// for u ∈ [0,1), j ∈ ℤ/N, weight 1/N. (𝕋×ℤ)/ℤ: t = (w, 0), |w| = radius.
template <class F>
QuadratureResult integrate_quotient(const GroupId& g, F&& integrand, const QuotientContour& c,
                                    const NumericsSpec& spec) {
  switch (g.kind) {
    case GroupKind::RealLine:
      return integrate_unit_interval_periodic(
          [&](double u) { return integrand(GroupElement::real(cplx(u, c.im_shift))); }, spec);
    case GroupKind::RealTimesCyclic: {
      const double sn = std::sqrt(static_cast<double>(g.N));
      return integrate_unit_interval_periodic(
          [&](double u) {
            cplx s{0.0, 0.0};
            for (int j = 0; j < g.N; ++j)
              s += integrand(GroupElement::real_cyclic(cplx(u, c.im_shift) / sn, j, g.N));
            return s / static_cast<double>(g.N);
          },
          spec);
    }
    case GroupKind::CircleTimesIntegers:
      return integrate_circle([&](cplx w) { return integrand(GroupElement::circle_int(w, 0)) / w; }, c.radius,
                              spec);
  }
  fail(ErrorKind::UnsupportedGroup, "unknown group");
}

/// f(x) = ∫_{A/B} f̌(x,t) dt.
inline QuadratureResult weil_inverse(const WeilFunction& fcheck, const GroupElement& x, const QuotientContour& c,
                                     const NumericsSpec& spec = {}) {
  x.check_in(fcheck.group);
  return integrate_quotient(fcheck.group, [&](const GroupElement& t) { return fcheck(x, t); }, c, spec);
}

// ---------------------------------------------------------------------------
// Closed forms

namespace detail {
inline constexpr double kPoleTol = 1e-14;

inline cplx checked_ratio(cplx num, cplx den, const char* what) {
  if (std::abs(den) <= kPoleTol * std::max(1.0, std::abs(num))) fail(ErrorKind::PoleHit, what);
  return num / den;
}
}  // namespace detail

/// q_b for b = e^{iπ/6}, namely i·e^{-π√3/2}.
inline cplx special_q() { return kI * std::exp(-kPi * std::sqrt(3.0) / 2.0); }
inline cplx special_b() { return std::polar(1.0, kPi / 6.0); }

/// WGZ transform of Φ_b at b = e^{iπ/6} in θ/q-Pochhammer form.
inline cplx wgz_phi_special(cplx x, cplx y) {
  const cplx q = special_q();
  const cplx q2 = q * q;
  const cplx bbar = std::conj(special_b());
  const cplx num = qpochhammer(q2, q2) * qpochhammer(-std::exp(2.0 * kPi * kI * x), q2) *
                   theta_q(q, -std::exp(2.0 * kPi * (bbar * x - kI * y)));
  const cplx den = qpochhammer(std::exp(-2.0 * kPi * kI * y), q2) *
                   qpochhammer(-std::exp(2.0 * kPi * kI * (x + y)), q2) *
                   theta_q(q, -std::exp(2.0 * kPi * bbar * x));
  return detail::checked_ratio(num, den, "wgz_phi_special: denominator vanishes");
}

/// Region where the WGZ series of Φ_b converges: -Im x < Im y < 0.
inline bool wgz_series_converges(cplx x, cplx y) { return -x.imag() < y.imag() && y.imag() < 0.0; }

/// Weil transform of the tropical dilogarithm, v^{-m}(u-1)v/((v-1)(uv-1)).
inline cplx tropical_weil_phi(cplx u, long long m, cplx v, long long /*n*/) {
  const cplx den = (v - 1.0) * (u * v - 1.0);
  if (std::abs(v - 1.0) <= detail::kPoleTol || std::abs(u * v - 1.0) <= detail::kPoleTol)
    fail(ErrorKind::PoleHit, "tropical_weil_phi: v = 1 or uv = 1");
  return ipow(v, -m) * (u - 1.0) * v / den;
}

/// Weil transform of the DGG dilogarithm in θ-bracket form.
inline cplx dgg_weil_phi(double q, cplx u, long long m, cplx v, long long /*n*/) {
  if (!(std::abs(q) < 1.0)) fail(ErrorKind::DivergentParameter, "DGG needs |q| < 1");
  const double q2 = q * q;
  const cplx v2 = v * v;
  const cplx th_u = theta_q(q, u);
  const cplx th_qu = theta_q(q, q * u);
  if (std::abs(th_u) < detail::kPoleTol || std::abs(th_qu) < detail::kPoleTol)
    fail(ErrorKind::PoleHit, "dgg_weil_phi: theta_q(u) or theta_q(qu) vanishes");
  const cplx bracket = theta_q(q, u * v2) / th_u + v * theta_q(q, q * u * v2) / th_qu;
  const cplx num = qpochhammer(q2, q2) * qpochhammer(u * u, q2);
  const cplx den = qpochhammer(1.0 / v2, q2) * qpochhammer(u * u * v2, q2);
  return ipow(v, -m) * detail::checked_ratio(num, den, "dgg_weil_phi: Pochhammer pole") * bracket;
}

/// Closed-form φ̌ for the families that have one: tropical, DGG, and Faddeev
/// at b = e^{iπ/6}. Others fall back to the series.
inline WeilFunction weil_phi(const DilogSpec& d, const NumericsSpec& spec = {}) {
  const GroupId g = group_of(d);
  if (std::holds_alternative<Tropical>(d))
    return {g, WeilProvenance::ClosedForm, [](const GroupElement& x, const GroupElement& y) {
              return tropical_weil_phi(x.coord(), x.discrete(), y.coord(), y.discrete());
            }};
  if (const auto* dg = std::get_if<DGG>(&d))
    return {g, WeilProvenance::ClosedForm, [q = dg->q](const GroupElement& x, const GroupElement& y) {
              return dgg_weil_phi(q, x.coord(), x.discrete(), y.coord(), y.discrete());
            }};
  if (const auto* fd = std::get_if<Faddeev>(&d); fd && std::abs(fd->b - special_b()) < 1e-15)
    return {g, WeilProvenance::ClosedForm,
            [](const GroupElement& x, const GroupElement& y) { return wgz_phi_special(x.coord(), y.coord()); }};
  return weil_series(g, [d, spec](const GroupElement& x) { return phi(d, x, spec); }, spec);
}

// ---------------------------------------------------------------------------
// Ramanujan's 1ψ1

struct PsiSides {
  cplx lhs;
  cplx rhs;
  double lhs_error = 0.0;
  std::size_t terms = 0;
};

/// Σ_k (a;q)_k/(b;q)_k z^k against its product evaluation, for |b/a| < |z| < 1.
///
/// When b = q every term with k < 0 vanishes, the lower annulus bound is void
/// and the product side is the q-binomial value (az;q)_∞/(z;q)_∞.
inline PsiSides ramanujan_1psi1(cplx a, cplx b, cplx z, cplx q, const NumericsSpec& spec = {}) {
  detail::require_convergent(q);
  const bool binomial = std::abs(b - q) <= 1e-15 * std::max(1.0, std::abs(q));
  if (!(std::abs(z) < 1.0)) fail(ErrorKind::OutOfDomain, "1psi1 needs |z| < 1");
  if (!binomial && !(a != cplx(0.0, 0.0) && std::abs(b / a) < std::abs(z)))
    fail(ErrorKind::OutOfDomain, "1psi1 needs |b/a| < |z|");

  // Terms are built as running products of (1 - a q^j)/(1 - b q^j)·z so no
  // intermediate Pochhammer symbol overflows.
  auto term = [&](long long k) -> cplx {
    cplx t{1.0, 0.0};
    if (k >= 0) {
      cplx qj{1.0, 0.0};
      for (long long j = 0; j < k; ++j, qj *= q) {
        const cplx den = 1.0 - b * qj;
        if (den == cplx(0.0, 0.0)) fail(ErrorKind::PoleHit, "1psi1: (b;q)_k vanishes");
        t *= (1.0 - a * qj) / den * z;
      }
      return t;
    }
    const cplx qinv = 1.0 / q;
    cplx qj = qinv;
    for (long long j = 1; j <= -k; ++j, qj *= qinv) {
      const cplx num = 1.0 - b * qj;
      if (num == cplx(0.0, 0.0)) return 0.0;
      const cplx den = (1.0 - a * qj) * z;
      if (den == cplx(0.0, 0.0)) fail(ErrorKind::PoleHit, "1psi1: (a;q)_k has a pole");
      t *= num / den;
    }
    return t;
  };
  const QuadratureResult s = sum_bilateral(term, spec);

  cplx rhs;
  if (binomial) {
    rhs = detail::checked_ratio(qpochhammer(a * z, q), qpochhammer(z, q), "1psi1: (z;q) vanishes");
  } else {
    const cplx num = qpochhammer(q, q) * qpochhammer(b / a, q) * qpochhammer(a * z, q) * qpochhammer(q / (a * z), q);
    const cplx den = qpochhammer(b, q) * qpochhammer(q / a, q) * qpochhammer(z, q) * qpochhammer(b / (a * z), q);
    rhs = detail::checked_ratio(num, den, "1psi1: product side has a pole");
  }
  return {s.value, rhs, s.error_estimate, s.nodes_used};
}

}  // namespace qdl
