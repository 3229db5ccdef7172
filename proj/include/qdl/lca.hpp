#pragma once

// Concrete self-dual LCA groups: the real line, ℝ×ℤ/Nℤ and 𝕋×ℤ.
//
// Elements carry complex coordinates so that analytic continuation off the
// group locus is representable (Im x ≠ 0 on the real factor, |z| ≠ 1 on the
// circle factor). Such elements report continued() == true; operations that
// need on-group input say so and reject them.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/numerics.hpp"

namespace qdl {

enum class GroupKind { RealLine, RealTimesCyclic, CircleTimesIntegers };

struct GroupId {
  GroupKind kind = GroupKind::RealLine;
  int N = 1;  // only meaningful for RealTimesCyclic

  static GroupId real_line() { return {GroupKind::RealLine, 1}; }
  static GroupId real_cyclic(int n) {
    if (n < 1) fail(ErrorKind::OutOfDomain, "cyclic order N must be positive");
    return {GroupKind::RealTimesCyclic, n};
  }
  static GroupId circle_integers() { return {GroupKind::CircleTimesIntegers, 1}; }

  friend bool operator==(const GroupId& a, const GroupId& b) {
    return a.kind == b.kind && (a.kind != GroupKind::RealTimesCyclic || a.N == b.N);
  }

  std::string name() const {
    switch (kind) {
      case GroupKind::RealLine: return "R";
      case GroupKind::RealTimesCyclic: return "RxZ/" + std::to_string(N) + "Z";
      case GroupKind::CircleTimesIntegers: return "TxZ";
    }
    return "?";
  }
};

namespace detail {
inline long long mod_floor(long long m, long long n) {
  long long r = m % n;
  return r < 0 ? r + n : r;
}
// Tolerance used to decide whether a coordinate sits on the group locus.
inline constexpr double kLocusTol = 1e-14;
}  // namespace detail

class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement real(cplx x) { return GroupElement(GroupId::real_line(), x, 0); }
  static GroupElement real_cyclic(cplx x, long long m, int n) {
    return GroupElement(GroupId::real_cyclic(n), x, detail::mod_floor(m, n));
  }
  static GroupElement circle_int(cplx z, long long m) {
    if (z == cplx(0.0, 0.0)) fail(ErrorKind::OutOfDomain, "circle coordinate must be nonzero");
    return GroupElement(GroupId::circle_integers(), z, m);
  }
  static GroupElement identity(const GroupId& g) {
    switch (g.kind) {
      case GroupKind::RealLine: return real(0.0);
      case GroupKind::RealTimesCyclic: return real_cyclic(0.0, 0, g.N);
      case GroupKind::CircleTimesIntegers: return circle_int(1.0, 0);
    }
    return {};
  }

  const GroupId& group() const { return group_; }
  cplx coord() const { return coord_; }
  long long discrete() const { return m_; }

  bool continued() const {
    if (group_.kind == GroupKind::CircleTimesIntegers)
      return std::abs(std::abs(coord_) - 1.0) > detail::kLocusTol;
    return std::abs(coord_.imag()) > detail::kLocusTol;
  }

  GroupElement operator+(const GroupElement& o) const {
    check_same(o);
    switch (group_.kind) {
      case GroupKind::RealLine: return real(coord_ + o.coord_);
      case GroupKind::RealTimesCyclic: return real_cyclic(coord_ + o.coord_, m_ + o.m_, group_.N);
      case GroupKind::CircleTimesIntegers: return circle_int(coord_ * o.coord_, m_ + o.m_);
    }
    return {};
  }
  GroupElement operator-() const {
    switch (group_.kind) {
      case GroupKind::RealLine: return real(-coord_);
      case GroupKind::RealTimesCyclic: return real_cyclic(-coord_, -m_, group_.N);
      case GroupKind::CircleTimesIntegers: return circle_int(1.0 / coord_, -m_);
    }
    return {};
  }
  GroupElement operator-(const GroupElement& o) const { return *this + (-o); }

  void check_same(const GroupElement& o) const {
    if (!(group_ == o.group_))
      fail(ErrorKind::GroupMismatch, "elements of " + group_.name() + " and " + o.group_.name());
  }
  void check_in(const GroupId& g) const {
    if (!(group_ == g)) fail(ErrorKind::GroupMismatch, "element of " + group_.name() + " used in " + g.name());
  }

 private:
  GroupElement(GroupId g, cplx c, long long m) : group_(g), coord_(c), m_(m) {}

  GroupId group_ = GroupId::real_line();
  cplx coord_{0.0, 0.0};
  long long m_ = 0;
};

/// ⟨x⟩, the Gaussian exponential. Analytic in the coordinate, so continued
/// elements are accepted; the value is unimodular on the group.
inline cplx gaussian(const GroupId& g, const GroupElement& x) {
  x.check_in(g);
  const cplx c = x.coord();
  switch (g.kind) {
    case GroupKind::RealLine: return std::exp(kI * kPi * c * c);
    case GroupKind::RealTimesCyclic: {
      const long long m = x.discrete();
      const long long n = g.N;
      // m(m+N) mod 2N keeps the phase argument small for large m.
      const long long phase = detail::mod_floor(m * (m + n), 2 * n);
      return std::exp(kI * kPi * c * c) *
             std::polar(1.0, -kPi * static_cast<double>(phase) / static_cast<double>(n));
    }
    case GroupKind::CircleTimesIntegers: return ipow(c, x.discrete());
  }
  return 0.0;
}

/// ⟨x,y⟩ = ⟨x+y⟩/(⟨x⟩⟨y⟩), evaluated in closed form.
inline cplx fourier_kernel(const GroupId& g, const GroupElement& x, const GroupElement& y) {
  x.check_in(g);
  y.check_in(g);
  switch (g.kind) {
    case GroupKind::RealLine: return std::exp(2.0 * kI * kPi * x.coord() * y.coord());
    case GroupKind::RealTimesCyclic: {
      const long long mn = detail::mod_floor(x.discrete() * y.discrete(), g.N);
      return std::exp(2.0 * kI * kPi * x.coord() * y.coord()) *
             std::polar(1.0, -2.0 * kPi * static_cast<double>(mn) / static_cast<double>(g.N));
    }
    case GroupKind::CircleTimesIntegers:
      return ipow(x.coord(), y.discrete()) * ipow(y.coord(), x.discrete());
  }
  return 0.0;
}

/// χ with χ(x,y)χ(y,x) = ⟨x,y⟩. Not available on ℝ×ℤ/Nℤ for even N.
inline cplx bicharacter(const GroupId& g, const GroupElement& x, const GroupElement& y) {
  x.check_in(g);
  y.check_in(g);
  switch (g.kind) {
    case GroupKind::RealLine: return std::exp(kI * kPi * x.coord() * y.coord());
    case GroupKind::RealTimesCyclic: {
      if (g.N % 2 == 0) fail(ErrorKind::EvenCyclicOrder, "no bicharacter for even N=" + std::to_string(g.N));
      // e^{πi(1-1/N)mn} = e^{πi mn (N-1)/N}; reduce mn(N-1) mod 2N.
      const long long n = g.N;
      const long long k = detail::mod_floor(x.discrete() * y.discrete() % (2 * n) * (n - 1), 2 * n);
      return std::exp(kI * kPi * x.coord() * y.coord()) *
             std::polar(1.0, kPi * static_cast<double>(k) / static_cast<double>(n));
    }
    case GroupKind::CircleTimesIntegers: return ipow(y.coord(), x.discrete());
  }
  return 0.0;
}

/// The k-th element of the self-perpendicular subgroup B ≅ ℤ.
inline GroupElement embed_b(const GroupId& g, long long k) {
  switch (g.kind) {
    case GroupKind::RealLine: return GroupElement::real(static_cast<double>(k));
    case GroupKind::RealTimesCyclic:
      return GroupElement::real_cyclic(static_cast<double>(k) / std::sqrt(static_cast<double>(g.N)), k, g.N);
    case GroupKind::CircleTimesIntegers: return GroupElement::circle_int(1.0, k);
  }
  return {};
}

/// ε with ⟨ε, b⟩ = ⟨b⟩ for all b ∈ B. Unique only modulo B; these are the
/// fixed representatives.
inline GroupElement epsilon(const GroupId& g) {
  switch (g.kind) {
    case GroupKind::RealLine: return GroupElement::real(0.5);
    case GroupKind::RealTimesCyclic:
      return GroupElement::real_cyclic(0.5 * std::sqrt(static_cast<double>(g.N)), 0, g.N);
    case GroupKind::CircleTimesIntegers: return GroupElement::circle_int(1.0, 0);
  }
  return {};
}

/// γ = ∫_A ⟨z⟩ dz under the normalized Haar measure.
inline cplx gamma_constant(const GroupId& g) {
  const cplx fresnel = std::polar(1.0, kPi / 4.0);
  switch (g.kind) {
    case GroupKind::RealLine: return fresnel;
    case GroupKind::RealTimesCyclic: {
      cplx gauss_sum{0.0, 0.0};
      for (int m = 0; m < g.N; ++m)
        gauss_sum += gaussian(g, GroupElement::real_cyclic(0.0, m, g.N));
      return fresnel * gauss_sum / std::sqrt(static_cast<double>(g.N));
    }
    case GroupKind::CircleTimesIntegers: return 1.0;
  }
  return 0.0;
}

struct HaarMeasure {
  std::string continuous;  // measure on the continuous factor
  std::string discrete;    // measure on the discrete factor
  double discrete_weight;  // mass of each point of the discrete factor
};

inline HaarMeasure haar_normalization(const GroupId& g) {
  switch (g.kind) {
    case GroupKind::RealLine: return {"Lebesgue dx", "none", 1.0};
    case GroupKind::RealTimesCyclic:
      return {"Lebesgue dx", "counting on Z/NZ", 1.0 / std::sqrt(static_cast<double>(g.N))};
    case GroupKind::CircleTimesIntegers: return {"dtheta/2pi on T", "counting on Z", 1.0};
  }
  return {"", "", 0.0};
}

}  // namespace qdl
