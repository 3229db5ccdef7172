#include <cmath>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "qdl/transforms.hpp"

using namespace qdl;

namespace {

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::OutOfDomain;
}

const GroupId kT = GroupId::circle_integers();
GroupElement C(cplx z, long long m) { return GroupElement::circle_int(z, m); }

// Σ_k φ(u, m+k) v^k by a plain window.
template <class Phi>
cplx weil_window(Phi&& f, cplx u, long long m, cplx v, long long K) {
  return oracle::sum_window([&](long long k) { return f(u, m + k) * oracle::powi(v, k); }, K);
}

}  // namespace

TEST_CASE("tropical Weil closed form: examples") {
  CHECK(near(tropical_weil_phi(0.0, 0, 2.0, 0), 2.0, 1e-15));
  CHECK(std::abs(tropical_weil_phi(1.0, 0, 2.0, 0)) == 0.0);
  CHECK(kind_of([] { tropical_weil_phi(0.5, 0, 2.0, 0); }) == ErrorKind::PoleHit);
}

TEST_CASE("tropical Weil closed form against the direct sum") {
  oracle::Rng rng(31);
  const WeilFunction closed = weil_phi(Tropical{});
  CHECK(closed.provenance == WeilProvenance::ClosedForm);
  for (int t = 0; t < 20; ++t) {
    const cplx v = rng.polar(1.25, 3.0);
    const cplx u = rng.polar(0.1, 0.75) / std::abs(v);
    const long long m = rng.integer(-3, 3), n = rng.integer(-3, 3);
    const cplx ref = weil_window(oracle::tropical, u, m, v, 200);
    CHECK(near(closed(C(u, m), C(v, n)), ref, 1e-12));
    const QuadratureResult s =
        weil_forward(kT, [](const GroupElement& e) { return tropical_phi(e.coord(), e.discrete()); }, C(u, m), C(v, n));
    CHECK(near(s.value, ref, 1e-12));
  }
}

TEST_CASE("DGG Weil closed form against the direct sum") {
  const double q = 0.3;
  auto f = [q](cplx z, long long m) { return oracle::dgg(q, z, m); };
  CHECK(near(dgg_weil_phi(q, 0.4, 0, 2.0, 0), weil_window(f, 0.4, 0, 2.0, 200), 1e-10));
  oracle::Rng rng(32);
  for (int t = 0; t < 10; ++t) {
    const cplx v = rng.polar(1.25, 3.0);
    const cplx u = rng.polar(0.1, 0.75) / std::abs(v);
    const long long m = rng.integer(-3, 3);
    CHECK(near(dgg_weil_phi(q, u, m, v, 0), weil_window(f, u, m, v, 200), 1e-10));
  }
}

TEST_CASE("Weil closed forms: n-independence and the m-shift rule") {
  oracle::Rng rng(33);
  for (int t = 0; t < 20; ++t) {
    const cplx v = rng.polar(1.25, 3.0);
    const cplx u = rng.polar(0.1, 0.75) / std::abs(v);
    const long long m = rng.integer(-3, 3);
    for (auto fn : {+[](cplx a, long long b, cplx c, long long d) { return tropical_weil_phi(a, b, c, d); },
                    +[](cplx a, long long b, cplx c, long long d) { return dgg_weil_phi(0.3, a, b, c, d); }}) {
      CHECK(fn(u, m, v, 0) == fn(u, m, v, 5));
      CHECK(near(fn(u, m + 1, v, 0), fn(u, m, v, 0) / v, 1e-13));
    }
  }
}

TEST_CASE("Weil inverse recovers the function") {
  oracle::Rng rng(34);
  for (const DilogSpec& d : {DilogSpec{Tropical{}}, DilogSpec{DGG{0.3}}}) {
    const WeilFunction fc = weil_phi(d);
    for (int t = 0; t < 5; ++t) {
      const cplx u = rng.polar(0.3, 0.6);
      const long long m = rng.integer(-3, 3);
      // t runs on a circle inside 1 < |t| < 1/|u|.
      const QuotientContour c{0.0, std::sqrt(1.0 / std::abs(u))};
      const QuadratureResult r = weil_inverse(fc, C(u, m), c);
      CHECK(near(r.value, phi(d, C(u, m)), 1e-10));
    }
  }
}

TEST_CASE("WGZ closed form at b = e^{i pi/6}") {
  const cplx b = special_b();
  oracle::Rng rng(35);
  for (int t = 0; t < 5; ++t) {
    const cplx x(rng.uniform(-0.5, 0.5), rng.uniform(0.65, 0.75));
    const cplx y(rng.uniform(-0.5, 0.5), rng.uniform(-0.35, -0.3));
    REQUIRE(wgz_series_converges(x, y));
    const cplx ref = oracle::sum_window(
        [&](long long k) { return oracle::faddeev(b, x + static_cast<double>(k)) * std::exp(2.0 * oracle::pi * oracle::I * y * static_cast<double>(k)); },
        40);
    CHECK(near(wgz_phi_special(x, y), ref, 1e-9));
    // Quasi-periodic in x, periodic in y.
    CHECK(near(wgz_phi_special(x + 1.0, y), std::exp(-2.0 * kPi * kI * y) * wgz_phi_special(x, y), 1e-12));
    CHECK(near(wgz_phi_special(x, y + 1.0), wgz_phi_special(x, y), 1e-12));
  }
  CHECK(weil_phi(Faddeev{b}).provenance == WeilProvenance::ClosedForm);
  CHECK(weil_phi(Faddeev{std::polar(1.0, 0.5)}).provenance == WeilProvenance::Series);
  CHECK_FALSE(wgz_series_converges(cplx(0.0, 0.2), cplx(0.0, -0.3)));
}

TEST_CASE("Ramanujan 1psi1") {
  const PsiSides s1 = ramanujan_1psi1(0.3, 0.3, 0.5, 0.3);
  CHECK(near(s1.lhs, 2.0, 1e-13));
  CHECK(near(s1.rhs, 2.0, 1e-13));
  const PsiSides s2 = ramanujan_1psi1(0.2, 0.3, 0.4, 0.3);
  CHECK(near(s2.lhs, s2.rhs, 1e-11));
  CHECK(near(s2.rhs, oracle::qpoch(0.08, 0.3) / oracle::qpoch(0.4, 0.3), 1e-13));
  oracle::Rng rng(36);
  for (int t = 0; t < 10; ++t) {
    const cplx q = rng.polar(0.1, 0.6);
    const cplx a = rng.polar(1.5, 3.0);
    const cplx z = rng.polar(0.5, 0.8);
    const cplx b = a * z * rng.polar(0.2, 0.7);
    const PsiSides s = ramanujan_1psi1(a, b, z, q);
    // Naive bilateral sum; (a;q)_k/(b;q)_k as one product of factor ratios.
    auto ratio = [&](long long k) {
      cplx p{1.0, 0.0};
      for (long long j = 0; j < k; ++j) p *= (1.0 - a * oracle::powi(q, j)) / (1.0 - b * oracle::powi(q, j));
      for (long long j = 1; j <= -k; ++j) p *= (1.0 - b * oracle::powi(q, -j)) / (1.0 - a * oracle::powi(q, -j));
      return p;
    };
    const cplx naive = oracle::sum_window([&](long long k) { return ratio(k) * oracle::powi(z, k); }, 120);
    CHECK(near(s.lhs, naive, 1e-10));
    CHECK(near(s.lhs, s.rhs, 1e-11));
  }
  CHECK(kind_of([] { ramanujan_1psi1(0.5, 0.4, 0.5, 0.3); }) == ErrorKind::OutOfDomain);
  CHECK(kind_of([] { ramanujan_1psi1(0.5, 0.1, 1.5, 0.3); }) == ErrorKind::OutOfDomain);
}

TEST_CASE("Weil series on R x Z/N is quasi-periodic") {
  const GroupId g = GroupId::real_cyclic(3);
  const DilogSpec d = AndersenKashaev{3, kPi / 3.0};
  NumericsSpec spec;
  spec.rel_tol = 1e-12;
  const WeilFunction fc = weil_phi(d, spec);
  const auto x = GroupElement::real_cyclic(cplx(0.1, 0.4), 1, 3);
  const auto y = GroupElement::real_cyclic(cplx(0.2, -0.2), 2, 3);
  const auto b1 = embed_b(g, 1);
  // f̌(x + b, y) = ⟨y, b⟩⁻¹ f̌(x, y) and f̌(x, y + b) = f̌(x, y).
  CHECK(near(fc(x + b1, y), fc(x, y) / fourier_kernel(g, y, b1), 1e-9));
  CHECK(near(fc(x, y + b1), fc(x, y), 1e-9));
}
