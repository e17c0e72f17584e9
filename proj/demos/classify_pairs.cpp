// Verdicts for a handful of center pairs, finite and at infinity.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "funklab/funklab.hpp"

int main() {
  using namespace funklab;
  struct Row {
    const char* label;
    Center a, b;
  };
  const std::vector<Row> rows{
      {"a and its inversion", Center::finite(vec({0.5, 0, 0})), Center::finite(vec({2, 0, 0}))},
      {"interior + exterior", Center::finite(vec({0.3, 0, 0})), Center::finite(vec({5, 1, 0}))},
      {"collinear exterior", Center::finite(vec({1.5, 0, 0})), Center::finite(vec({3, 0, 0}))},
      {"irrational rotation", Center::finite(vec({2, 0, 0})), Center::finite(vec({0, 2, 0}))},
      {"rotation 2/3", Center::finite(vec({2, 0, 0})), Center::finite(vec({0, std::sqrt(7.0 / 3.0), 0}))},
      {"finite + direction", Center::finite(vec({2, 0, 0})), Center::infinite(vec({0, 1, 0}))},
      {"two directions, pi/3", Center::infinite(vec({1, 0, 0})),
       Center::infinite(vec({std::cos(M_PI / 3), std::sin(M_PI / 3), 0}))},
  };
  for (const Row& r : rows) {
    const InjectivityVerdict v = decide_centers(r.a, r.b);
    std::printf("%-22s %-14s %-11s", r.label, std::string(to_string(v.verdict)).c_str(),
                v.cls ? std::string(to_string(v.cls->type)).c_str() : "-");
    if (v.verdict == Verdict::NonInjective) std::printf(" period %d", v.period);
    std::printf("\n");
  }
}
