#pragma once

// Quadrature and truncation engines shared by every evaluator: uniform
// trapezoid rules on circles and periods (spectrally accurate for analytic
// periodic integrands), a truncated trapezoid rule for decaying integrands on
// horizontal lines, and symmetric truncation of bilateral sums.
//
// All engines use node doubling with the doubling difference |I_2N - I_N| as
// the error estimate. Summation order is fixed by node index, so results are
// bit-reproducible for identical inputs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qdl/errors.hpp"

namespace qdl {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Integer power by repeated squaring. Exact for Gaussian-integer bases such
/// as i^3, unlike std::pow(complex, int) which goes through exp/log.
inline cplx ipow(cplx z, long long n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx result{1.0, 0.0};
  cplx base = z;
  auto e = static_cast<unsigned long long>(n);
  while (e != 0) {
    if (e & 1ULL) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

struct NumericsSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_nodes = std::size_t{1} << 20;
  std::size_t max_shells = std::size_t{1} << 16;
  std::size_t contour_nodes_initial = 64;
  std::optional<double> contour_radius;

  double tolerance_for(double magnitude) const { return std::max(abs_tol, rel_tol * magnitude); }

  void validate() const {
    auto pow2 = [](std::size_t n) { return n != 0 && (n & (n - 1)) == 0; };
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      fail(ErrorKind::OutOfDomain, "numerics tolerances must be positive");
    if (!pow2(max_nodes) || !pow2(contour_nodes_initial) || !pow2(max_shells))
      fail(ErrorKind::OutOfDomain, "node and shell counts must be powers of two");
    if (contour_nodes_initial > max_nodes)
      fail(ErrorKind::OutOfDomain, "contour_nodes_initial exceeds max_nodes");
    if (contour_radius && !(*contour_radius > 0.0))
      fail(ErrorKind::OutOfDomain, "contour radius must be positive");
  }
};

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  // Doubling difference one level earlier; +inf when only one doubling ran.
  double previous_error_estimate = std::numeric_limits<double>::infinity();
  std::size_t nodes_used = 0;
  bool converged = false;
};

namespace detail {

// Node values |f| above this are treated as evidence of a pole on the contour
// when doubling stops making progress.
inline constexpr double kPoleMagnitude = 1e8;

// Uniform trapezoid rule for a 1-periodic integrand g on [0,1), doubling the
// node count until successive estimates agree. `what` names the caller in
// failure messages.
template <class G>
QuadratureResult periodic_trapezoid(G&& g, const NumericsSpec& spec, const char* what) {
  spec.validate();
  std::size_t n = spec.contour_nodes_initial;
  cplx sum{0.0, 0.0};
  double max_mag = 0.0;
  double abs_sum = 0.0;
  auto sample = [&](double theta) {
    cplx v = g(theta);
    if (!is_finite(v))
      fail(ErrorKind::PoleOnContour, std::string(what) + ": non-finite integrand on the contour");
    max_mag = std::max(max_mag, std::abs(v));
    abs_sum += std::abs(v);
    return v;
  };
  for (std::size_t j = 0; j < n; ++j) sum += sample(static_cast<double>(j) / static_cast<double>(n));
  cplx estimate = sum / static_cast<double>(n);

  double prev_diff = std::numeric_limits<double>::infinity();
  double prev_prev_diff = std::numeric_limits<double>::infinity();
  while (2 * n <= spec.max_nodes) {
    cplx odd{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j)
      odd += sample((static_cast<double>(j) + 0.5) / static_cast<double>(n));
    sum += odd;
    n *= 2;
    cplx refined = sum / static_cast<double>(n);
    double diff = std::abs(refined - estimate);
    estimate = refined;
    // Rounding floor of the node sum; differences below it carry no information.
    double floor = 16.0 * std::numeric_limits<double>::epsilon() * abs_sum / static_cast<double>(n);
    double tol = spec.tolerance_for(std::abs(estimate));
    if (diff <= tol && (diff <= prev_diff || diff <= floor)) {
      QuadratureResult r;
      r.value = estimate;
      r.error_estimate = diff;
      r.previous_error_estimate = prev_diff;
      r.nodes_used = n;
      r.converged = true;
      return r;
    }
    prev_prev_diff = prev_diff;
    prev_diff = diff;
  }
  if (max_mag > kPoleMagnitude && !(prev_diff < prev_prev_diff))
    fail(ErrorKind::PoleOnContour, std::string(what) + ": integrand blows up and doubling stagnates");
  fail(ErrorKind::QuadratureFailure, std::string(what) + ": max_nodes reached without convergence");
}

}  // namespace detail

/// (1/2πi) ∮_{|v|=r} f(v) dv by the uniform trapezoid rule.
template <class F>
QuadratureResult integrate_circle(F&& f, double r, const NumericsSpec& spec) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::OutOfDomain, "circle radius must be positive");
  return detail::periodic_trapezoid(
      [&](double theta) {
        cplx v = std::polar(r, 2.0 * kPi * theta);
        return f(v) * v;
      },
      spec, "integrate_circle");
}

/// ∫_0^1 f(u) du for a 1-periodic integrand.
template <class F>
QuadratureResult integrate_unit_interval_periodic(F&& f, const NumericsSpec& spec) {
  return detail::periodic_trapezoid([&](double u) { return f(u); }, spec,
                                    "integrate_unit_interval_periodic");
}

/// ∫ f(t + iε) dt over the real line. The integrand must decay at both ends;
/// the range is cut where |f| stays below tol/(interval length), then the
/// trapezoid step is halved until two estimates agree.
template <class F>
QuadratureResult integrate_line(F&& f, double eps, const NumericsSpec& spec) {
  spec.validate();
  auto at = [&](double t) {
    cplx v = f(cplx(t, eps));
    if (!is_finite(v)) fail(ErrorKind::QuadratureFailure, "integrate_line: non-finite integrand");
    return v;
  };
  constexpr double kStep = 0.25;
  constexpr double kMaxExtent = 1e4;
  constexpr int kQuietSamples = 6;
  auto find_end = [&](double dir) {
    double t = 0.0;
    int quiet = 0;
    while (quiet < kQuietSamples) {
      t += kStep;
      if (t > kMaxExtent) fail(ErrorKind::QuadratureFailure, "integrate_line: integrand does not decay");
      double cut = spec.abs_tol / (4.0 * std::max(t, 1.0));
      quiet = std::abs(at(dir * t)) < cut ? quiet + 1 : 0;
    }
    return dir * t;
  };
  const double lo = find_end(-1.0);
  const double hi = find_end(+1.0);
  const double width = hi - lo;

  std::size_t panels = std::max<std::size_t>(spec.contour_nodes_initial, 64);
  double h = width / static_cast<double>(panels);
  cplx sum = 0.5 * (at(lo) + at(hi));
  for (std::size_t j = 1; j < panels; ++j) sum += at(lo + static_cast<double>(j) * h);
  cplx estimate = sum * h;
  double prev_diff = std::numeric_limits<double>::infinity();
  while (2 * panels <= spec.max_nodes) {
    for (std::size_t j = 0; j < panels; ++j) sum += at(lo + (static_cast<double>(j) + 0.5) * h);
    panels *= 2;
    h *= 0.5;
    cplx refined = sum * h;
    double diff = std::abs(refined - estimate);
    estimate = refined;
    if (diff <= spec.tolerance_for(std::abs(estimate)) && diff <= prev_diff) {
      QuadratureResult r;
      r.value = estimate;
      r.error_estimate = diff;
      r.previous_error_estimate = prev_diff;
      r.nodes_used = panels + 1;
      r.converged = true;
      return r;
    }
    prev_diff = diff;
  }
  fail(ErrorKind::QuadratureFailure, "integrate_line: max_nodes reached without convergence");
}

/// Σ_{k∈ℤ} term(k), truncated symmetrically at ±K with K doubled until the
/// newest shell contributes less than tol/10. The reported error is the
/// geometric extrapolation of the two one-sided tails; it is not added to the
/// value.
template <class T>
QuadratureResult sum_bilateral(T&& term, const NumericsSpec& spec) {
  spec.validate();
  auto eval = [&](long long k) {
    cplx v = term(k);
    if (!is_finite(v)) fail(ErrorKind::NonConvergent, "sum_bilateral: non-finite term");
    return v;
  };
  long long K = 8;
  cplx total{0.0, 0.0};
  for (long long k = -K; k <= K; ++k) total += eval(k);

  double prev_shell = std::numeric_limits<double>::infinity();
  int growth = 0;
  for (;;) {
    const long long K2 = 2 * K;
    if (static_cast<std::size_t>(K2) > spec.max_shells)
      fail(ErrorKind::NonConvergent, "sum_bilateral: max_shells reached");
    cplx shell{0.0, 0.0};
    double shell_abs = 0.0;
    for (long long k = -K2; k < -K; ++k) {
      cplx v = eval(k);
      shell += v;
      shell_abs += std::abs(v);
    }
    for (long long k = K + 1; k <= K2; ++k) {
      cplx v = eval(k);
      shell += v;
      shell_abs += std::abs(v);
    }
    total += shell;
    K = K2;
    double tol = spec.tolerance_for(std::abs(total));
    if (shell_abs <= tol / 10.0) {
      auto tail = [&](long long last, long long sign) {
        double a = std::abs(eval(last));
        double b = std::abs(eval(last - sign));
        if (a == 0.0) return 0.0;
        double ratio = a / b;
        return ratio < 1.0 ? a * ratio / (1.0 - ratio) : shell_abs;
      };
      QuadratureResult r;
      r.value = total;
      r.error_estimate = tail(K, 1) + tail(-K, -1);
      r.previous_error_estimate = prev_shell;
      r.nodes_used = static_cast<std::size_t>(2 * K + 1);
      r.converged = true;
      return r;
    }
    growth = shell_abs >= prev_shell ? growth + 1 : 0;
    if (growth >= 3) fail(ErrorKind::NonConvergent, "sum_bilateral: shells do not decrease under doubling");
    prev_shell = shell_abs;
  }
}

}  // namespace qdl
