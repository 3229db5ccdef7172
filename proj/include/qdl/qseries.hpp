#pragma once

// q-Pochhammer symbols and the Jacobi theta function θ_q.

#include <cmath>
#include <complex>
#include <cstddef>

#include "qdl/errors.hpp"
#include "qdl/numerics.hpp"

namespace qdl {

namespace detail {
inline constexpr double kProductCutoff = 1e-16;
inline constexpr int kProductQuietTerms = 3;
inline constexpr std::size_t kProductMaxTerms = 1'000'000;

inline void require_convergent(cplx q) {
  if (!(std::abs(q) < 1.0)) fail(ErrorKind::DivergentParameter, "|q| must be < 1 for infinite products");
}

// Visits the factors a q^j of (a;q)_∞ until |a q^j| < 1e-16 for three
// consecutive j.
template <class Visit>
void for_each_pochhammer_term(cplx a, cplx q, Visit&& visit) {
  require_convergent(q);
  cplx t = a;
  int quiet = 0;
  for (std::size_t j = 0; j < kProductMaxTerms; ++j) {
    visit(t);
    quiet = std::abs(t) < kProductCutoff ? quiet + 1 : 0;
    if (quiet >= kProductQuietTerms) return;
    t *= q;
  }
  fail(ErrorKind::NonConvergent, "q-Pochhammer product did not converge");
}
}  // namespace detail

/// (a;q)_∞ = ∏_{j≥0} (1 - a q^j).
inline cplx qpochhammer(cplx a, cplx q) {
  cplx p{1.0, 0.0};
  detail::for_each_pochhammer_term(a, q, [&](cplx t) { p *= 1.0 - t; });
  return p;
}

/// Σ_j log(1 - a q^j) with principal branches; exp() of it is (a;q)_∞ but the
/// sum does not overflow when the leading factors are huge.
inline cplx log_qpochhammer(cplx a, cplx q) {
  cplx s{0.0, 0.0};
  detail::for_each_pochhammer_term(a, q, [&](cplx t) { s += std::log(1.0 - t); });
  return s;
}

/// (a;q)_k for integer k, with (a;q)_k = (a;q)_∞/(aq^k;q)_∞, i.e.
/// 1/∏_{j=1}^{|k|}(1 - a q^{-j}) for negative k. Finite k does not need |q|<1.
inline cplx qpochhammer(cplx a, cplx q, long long k) {
  cplx p{1.0, 0.0};
  if (k >= 0) {
    cplx t = a;
    for (long long j = 0; j < k; ++j, t *= q) p *= 1.0 - t;
    return p;
  }
  if (q == cplx(0.0, 0.0)) fail(ErrorKind::PoleHit, "(a;q)_k with q=0 and k<0");
  const cplx qinv = 1.0 / q;
  cplx t = a * qinv;
  for (long long j = 1; j <= -k; ++j, t *= qinv) {
    cplx f = 1.0 - t;
    if (f == cplx(0.0, 0.0)) fail(ErrorKind::PoleHit, "vanishing factor in (a;q)_k, k<0");
    p *= f;
  }
  return 1.0 / p;
}

/// θ_q(x) = Σ_k q^{k²} x^k = (q²;q²)_∞ (-qx;q²)_∞ (-q/x;q²)_∞ (product form).
inline cplx theta_q(cplx q, cplx x) {
  if (!(std::abs(q) > 0.0) || !(std::abs(q) < 1.0))
    fail(ErrorKind::DivergentParameter, "theta_q needs 0 < |q| < 1");
  if (x == cplx(0.0, 0.0)) fail(ErrorKind::OutOfDomain, "theta_q needs x != 0");
  const cplx q2 = q * q;
  return qpochhammer(q2, q2) * qpochhammer(-q * x, q2) * qpochhammer(-q / x, q2);
}

/// θ_q(x) by direct summation of Σ_k q^{k²} x^k; used to cross-check the
/// product form.
inline cplx theta_q_sum(cplx q, cplx x) {
  if (!(std::abs(q) > 0.0) || !(std::abs(q) < 1.0))
    fail(ErrorKind::DivergentParameter, "theta_q needs 0 < |q| < 1");
  if (x == cplx(0.0, 0.0)) fail(ErrorKind::OutOfDomain, "theta_q needs x != 0");
  cplx s{1.0, 0.0};
  // Terms q^{k²}x^{±k} via q^{(k+1)²} = q^{k²} q^{2k+1}.
  cplx qk2{1.0, 0.0};
  cplx odd = q;
  cplx xp{1.0, 0.0};
  cplx xm{1.0, 0.0};
  int quiet = 0;
  for (int k = 1; k < 100000; ++k) {
    qk2 *= odd;
    odd *= q * q;
    xp *= x;
    xm /= x;
    cplx tp = qk2 * xp;
    cplx tm = qk2 * xm;
    s += tp + tm;
    quiet = (std::abs(tp) + std::abs(tm) < 1e-18 * std::max(1.0, std::abs(s))) ? quiet + 1 : 0;
    if (quiet >= 3) return s;
  }
  fail(ErrorKind::NonConvergent, "theta_q series did not converge");
}

}  // namespace qdl
