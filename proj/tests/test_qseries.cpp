#include <cmath>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "qdl/qseries.hpp"

using namespace qdl;

namespace {
bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }
}  // namespace

TEST_CASE("finite q-Pochhammer examples") {
  const cplx a(0.3, 0.1), q(0.5, -0.2);
  CHECK(qpochhammer(a, q, 0) == cplx(1.0, 0.0));
  CHECK(near(qpochhammer(a, q, 2), (1.0 - a) * (1.0 - a * q), 1e-15));
  CHECK(near(qpochhammer(a, q, -2), 1.0 / ((1.0 - a / q) * (1.0 - a / (q * q))), 1e-14));
}

TEST_CASE("infinite q-Pochhammer against a long product") {
  CHECK(near(qpochhammer(0.3, 0.5), oracle::qpoch(0.3, 0.5, 200), 1e-15));
  oracle::Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    const cplx a = rng.polar(0.0, 3.0);
    const cplx q = rng.polar(0.0, 0.9);
    CHECK(near(qpochhammer(a, q), oracle::qpoch(a, q), 1e-12));
    CHECK(near(std::exp(log_qpochhammer(a, q)), oracle::qpoch(a, q), 1e-12));
  }
}

TEST_CASE("finite and infinite symbols are consistent") {
  oracle::Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const cplx a = rng.polar(0.1, 2.0);
    const cplx q = rng.polar(0.1, 0.8);
    const long long k = rng.integer(-4, 6);
    CHECK(near(qpochhammer(a, q, k), oracle::qpoch_k(a, q, k), 1e-11));
  }
}

TEST_CASE("theta: product and sum forms agree") {
  CHECK(near(theta_q(0.1, 2.0), theta_q_sum(0.1, 2.0), 1e-13));
  oracle::Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const cplx q = rng.polar(0.05, 0.7);
    const cplx x = rng.polar(0.3, 3.0);
    CHECK(near(theta_q(q, x), oracle::theta_sum(q, x), 1e-11));
    CHECK(near(theta_q_sum(q, x), oracle::theta_sum(q, x), 1e-11));
  }
}

TEST_CASE("theta: symmetries and zeros") {
  oracle::Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    const cplx q = rng.polar(0.05, 0.7);
    const cplx x = rng.polar(0.3, 3.0);
    CHECK(near(theta_q(q, 1.0 / x), theta_q(q, x), 1e-12));
    // θ(q²x) = (qx)^{-1} θ(x).
    CHECK(near(theta_q(q, q * q * x), theta_q(q, x) / (q * x), 1e-10));
  }
  CHECK(std::abs(theta_q(0.5, -2.0)) < 1e-15);
}

TEST_CASE("q-series errors") {
  CHECK_THROWS_AS(qpochhammer(0.5, 1.0), Error);
  CHECK_THROWS_AS(theta_q(1.2, 1.0), Error);
  CHECK_THROWS_AS(theta_q(0.5, 0.0), Error);
  try {
    qpochhammer(0.5, 0.5, -1);
    FAIL("expected PoleHit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleHit);
  }
}
