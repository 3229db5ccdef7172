#pragma once

// Reference implementations for the tests. They share nothing with the
// library beyond std::complex: plain loops, fixed truncations, no adaptivity.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;
inline const cplx I{0.0, 1.0};

inline cplx powi(cplx z, long long n) {
  cplx r{1.0, 0.0};
  const cplx base = n < 0 ? 1.0 / z : z;
  for (long long k = 0; k < (n < 0 ? -n : n); ++k) r *= base;
  return r;
}

/// (a;q)_∞ by a fixed number of factors.
inline cplx qpoch(cplx a, cplx q, int factors = 4000) {
  cplx p{1.0, 0.0};
  cplx t = a;
  for (int j = 0; j < factors; ++j, t *= q) p *= 1.0 - t;
  return p;
}

/// (a;q)_k = (a;q)_∞ / (a q^k;q)_∞.
inline cplx qpoch_k(cplx a, cplx q, long long k) { return qpoch(a, q) / qpoch(a * std::pow(q, static_cast<double>(k)), q); }

/// Σ_{|k|≤60} q^{k²} x^k.
inline cplx theta_sum(cplx q, cplx x) {
  cplx s{0.0, 0.0};
  for (int k = -60; k <= 60; ++k) s += std::pow(q, static_cast<double>(k * k)) * std::pow(x, static_cast<double>(k));
  return s;
}

/// Σ_j log(1 - a q^j) over a fixed number of factors.
inline cplx log_qpoch(cplx a, cplx q, int factors = 4000) {
  cplx s{0.0, 0.0};
  cplx t = a;
  for (int j = 0; j < factors; ++j, t *= q) s += std::log(1.0 - t);
  return s;
}

/// Φ_b(x) as the quotient of two q-Pochhammer products (Im b² > 0), taken
/// through logarithms so large Re x does not overflow.
inline cplx faddeev(cplx b, cplx x) {
  const cplx q = std::exp(I * pi * b * b);
  const cplx qb = std::exp(-I * pi / (b * b));
  return std::exp(log_qpoch(-q * std::exp(2.0 * pi * b * x), q * q) -
                  log_qpoch(-qb * std::exp(2.0 * pi * x / b), qb * qb));
}

/// Φ_b(0) = exp(πi(b² + b⁻²)/24).
inline cplx faddeev_at_zero(cplx b) { return std::exp(I * pi * (b * b + 1.0 / (b * b)) / 24.0); }

inline cplx tropical(cplx z, long long m) { return powi(z, m > 0 ? m : 0); }

/// (−q^{1−m}z;q²)_∞ / (−q^{1−m}/z;q²)_∞ as a product of factor ratios.
inline cplx dgg(double q, cplx z, long long m, int factors = 400) {
  double c = std::pow(q, static_cast<double>(1 - m));
  cplx p{1.0, 0.0};
  for (int j = 0; j < factors; ++j, c *= q * q) p *= (1.0 + c * z) / (1.0 + c / z);
  return p;
}

/// Σ_{|k|≤K} f(k).
template <class F>
cplx sum_window(F&& f, long long K) {
  cplx s{0.0, 0.0};
  for (long long k = -K; k <= K; ++k) s += f(k);
  return s;
}

/// (1/2πi)∮_{|v|=r} f(v) dv with n equispaced nodes.
template <class F>
cplx circle_mean(F&& f, double r, int n) {
  cplx s{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const cplx v = std::polar(r, 2.0 * pi * j / n);
    s += f(v) * v;
  }
  return s / static_cast<double>(n);
}

/// Seeded uniform samples for property tests.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(gen); }
  cplx unit() { return std::polar(1.0, uniform(-pi, pi)); }
  cplx polar(double rlo, double rhi) { return std::polar(uniform(rlo, rhi), uniform(-pi, pi)); }
};

}  // namespace oracle
