// Evaluates each dilogarithm family at a few points.
#include <cstdio>

#include "qdl/qdl.hpp"

using namespace qdl;

int main() {
  const cplx b = std::polar(1.0, kPi / 5.0);
  std::printf("Faddeev, b = %.4f%+.4fi\n", b.real(), b.imag());
  for (double x : {-1.0, 0.0, 0.5, 1.0}) {
    const PhiValue v = faddeev_phi_eval(b, x, FaddeevRep::Auto);
    std::printf("  Phi(%5.2f) = %.12f%+.12fi  |.| = %.12f  err %.1e\n", x, v.value.real(), v.value.imag(),
                std::abs(v.value), v.error_estimate);
  }

  const DilogSpec ak = AndersenKashaev{3, kPi / 4.0};
  std::printf("%s\n", describe(ak).c_str());
  for (long long m = 0; m < 3; ++m) {
    const cplx v = phi(ak, GroupElement::real_cyclic(0.25, m, 3));
    std::printf("  phi(0.25, %lld) = %.12f%+.12fi\n", m, v.real(), v.imag());
  }

  std::printf("tropical\n");
  for (long long m : {-2, 0, 3}) {
    const cplx v = tropical_phi(kI, m);
    std::printf("  phi(i, %lld) = %g%+gi\n", m, v.real(), v.imag());
  }

  const DilogSpec dgg = DGG{0.3};
  std::printf("%s\n", describe(dgg).c_str());
  const cplx v = phi(dgg, GroupElement::circle_int(std::polar(1.0, 0.7), 1));
  std::printf("  phi(e^{0.7i}, 1) = %.12f%+.12fi\n", v.real(), v.imag());
}
