// Builds a common-kernel function for a period-3 pair in the plane and checks
// that both transforms annihilate it.

#include <cmath>
#include <cstdio>

#include "funklab/funklab.hpp"

int main() {
  using namespace funklab;
  const Center a = Center::finite(vec({2.0, 0.0}));
  const Center b = Center::finite(vec({0.0, std::sqrt(7.0 / 3.0)}));

  const PeriodDetection d = detect_period(a, b);
  std::printf("class %s, kappa %.12f, period %d\n", std::string(to_string(d.cls.type)).c_str(), d.cls.kappa,
              d.period);

  const KernelWitness w = build_kernel_element(a, b, d.period, 1);
  std::printf("basepoint (%.6f, %.6f), margin %.4f, f(e) = %.6f\n", w.base.e[0], w.base.e[1], w.base.margin,
              w.f(w.base.e));
  std::printf("max |F_a f| = %.3e\n", verify_annihilation(w.f, a, 200, 64, 1).max_abs);
  std::printf("max |F_b f| = %.3e\n", verify_annihilation(w.f, b, 200, 64, 1).max_abs);
}
