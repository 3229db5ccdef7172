#include <cmath>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "qdl/numerics.hpp"

using namespace qdl;

TEST_CASE("integrate_line: Gaussian has unit mass") {
  const auto r = integrate_line([](cplx t) { return std::exp(-kPi * t * t); }, 0.0, NumericsSpec{});
  CHECK(r.converged);
  CHECK(std::abs(r.value - 1.0) < 1e-10);
}

TEST_CASE("integrate_line: shifting the contour below a pole is stable") {
  // e^{-t²}/(t-i) has its only pole at t = i; any shift ε < 1 gives the same value.
  auto f = [](cplx t) { return std::exp(-t * t) / (t - oracle::I); };
  const cplx a = integrate_line(f, 0.1, NumericsSpec{}).value;
  const cplx b = integrate_line(f, 0.2, NumericsSpec{}).value;
  CHECK(std::abs(a - b) < 1e-9);
  // Reference: Σ over a fine real grid.
  const double h = 1e-3;
  cplx ref{0.0, 0.0};
  for (int j = -12000; j <= 12000; ++j) ref += f(cplx(j * h, 0.0)) * h;
  CHECK(std::abs(a - ref) < 1e-8);
}

TEST_CASE("integrate_circle: residue of 1/v") {
  const auto r = integrate_circle([](cplx v) { return 1.0 / v; }, 0.7, NumericsSpec{});
  CHECK(std::abs(r.value - 1.0) < 1e-14);
}

TEST_CASE("integrate_circle: Laurent polynomials pick the v^{-1} coefficient") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> c(9);
    for (auto& x : c) x = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    auto f = [&](cplx v) {
      cplx s{0.0, 0.0};
      for (int k = -4; k <= 4; ++k) s += c[k + 4] * oracle::powi(v, k);
      return s;
    };
    const double r = rng.uniform(0.5, 2.0);
    CHECK(std::abs(integrate_circle(f, r, NumericsSpec{}).value - c[3]) < 1e-12);
  }
}

TEST_CASE("sum_bilateral: geometric two-sided sum") {
  for (double z : {0.1, 0.5, 0.8}) {
    const auto r = sum_bilateral([&](long long k) { return cplx(std::pow(z, std::abs(static_cast<double>(k)))); },
                                 NumericsSpec{});
    CHECK(std::abs((r.value.real() - (1.0 + z) / (1.0 - z)) / ((1.0 + z) / (1.0 - z))) < 1e-13);
  }
}

TEST_CASE("integrate_unit_interval_periodic: pure phase integrates to zero") {
  const auto r = integrate_unit_interval_periodic([](double u) { return std::exp(2.0 * kPi * kI * u); }, NumericsSpec{});
  CHECK(std::abs(r.value) < 1e-14);
}

TEST_CASE("quadrature is bit-reproducible") {
  auto f = [](cplx v) { return std::exp(v) / (v - 3.0); };
  const auto a = integrate_circle(f, 1.3, NumericsSpec{});
  const auto b = integrate_circle(f, 1.3, NumericsSpec{});
  CHECK(a.value == b.value);
  CHECK(a.nodes_used == b.nodes_used);
}

TEST_CASE("pole on the contour is reported") {
  NumericsSpec s;
  s.max_nodes = 1 << 12;
  try {
    integrate_circle([](cplx v) { return 1.0 / (v - 1.0); }, 1.0, s);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleOnContour);
  }
}

TEST_CASE("divergent bilateral sum is reported") {
  try {
    sum_bilateral([](long long k) { return cplx(std::pow(1.1, static_cast<double>(k))); }, NumericsSpec{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonConvergent);
  }
}

TEST_CASE("NumericsSpec validation") {
  NumericsSpec s;
  s.max_nodes = 1000;
  CHECK_THROWS_AS(s.validate(), Error);
  s = NumericsSpec{};
  s.abs_tol = 0.0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = NumericsSpec{};
  s.contour_radius = -1.0;
  CHECK_THROWS_AS(s.validate(), Error);
  CHECK_NOTHROW(NumericsSpec{}.validate());
}

TEST_CASE("ipow is exact on Gaussian integers") {
  CHECK(ipow(kI, 3) == cplx(0.0, -1.0));
  CHECK(ipow(kI, -1) == cplx(0.0, -1.0));
  CHECK(ipow(cplx(1.0, 1.0), 4) == cplx(-4.0, 0.0));
}
