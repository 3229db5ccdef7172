// Tabulates Boltzmann weights and the tropical IRF weight.
#include <cstdio>

#include "qdl/qdl.hpp"

using namespace qdl;

int main() {
  const WeightEvaluator we(Faddeev{1.0});
  const auto lam = GroupElement::real(cplx(0.0, 0.2));
  std::printf("Faddeev b = 1, lambda = 0.2i\n     x   W(lambda, x)\n");
  for (int k = -4; k <= 4; ++k) {
    const double x = 0.5 * k;
    const cplx w = we.W(lam, GroupElement::real(x));
    std::printf("  %5.2f   %.10f%+.10fi\n", x, w.real(), w.imag());
  }

  std::printf("\ntropical star weight S(lambda, y), lambda = (1.5, 1)\n");
  for (long long l = -2; l <= 2; ++l) {
    const cplx s = tropical_star_weight(1.5, 1, 1.2, l);
    std::printf("  y = (1.2, %2lld)   %.10f%+.10fi\n", l, s.real(), s.imag());
  }

  std::printf("\ntropical M(x, y, z), x = 0.5, y = 0.6, three representations\n");
  for (double z : {3.0, 4.0, 6.0}) {
    std::printf("  z = %.1f", z);
    for (TropicalMRep r : {TropicalMRep::Contour, TropicalMRep::Sum, TropicalMRep::Residue}) {
      try {
        const QuadratureResult m = tropical_irf_m(0.5, 0, 0.6, 0, z, 0, r);
        std::printf("   %.12f%+.2ei", m.value.real(), m.value.imag());
      } catch (const Error& e) {
        std::printf("   %s", e.what());
      }
    }
    std::printf("\n");
  }
}
