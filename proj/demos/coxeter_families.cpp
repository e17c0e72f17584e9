// Slice-transform families: finite reflection groups give a product witness.

#include <cmath>
#include <cstdio>
#include <vector>

#include "funklab/funklab.hpp"

int main() {
  using namespace funklab;
  const double phi_golden = (1 + std::sqrt(5.0)) / 2;
  const std::vector<std::pair<const char*, std::vector<Vec>>> families{
      {"dihedral pi/4", {vec({1, 0, 0}), vec({std::cos(M_PI / 4), std::sin(M_PI / 4), 0})}},
      {"B3", {vec({1, 0, 0}), vec({1, -1, 0}), vec({0, 1, -1})}},
      {"H3", {vec({1, 0, 0}), vec({phi_golden / 2, 0.5, (phi_golden - 1) / 2}), vec({0, 1, 0})}},
      {"one radian", {vec({1, 0, 0}), vec({std::cos(1.0), std::sin(1.0), 0})}},
  };
  for (const auto& [label, normals] : families) {
    const InjectivityVerdict v = decide_slice_family(normals);
    std::printf("%-14s %-14s", label, std::string(to_string(v.verdict)).c_str());
    if (v.witness) {
      double worst = 0.0;
      for (const Vec& b : normals) {
        worst = std::max(worst, verify_annihilation(*v.witness, Center::infinite(b), 50, 64, 2).max_abs);
      }
      std::printf(" %zu mirrors, witness max |Pi f| %.2e", v.mirrors.size(), worst);
    } else {
      std::printf(" %s", v.notes.empty() ? "" : v.notes.front().c_str());
    }
    std::printf("\n");
  }
}
