#pragma once

// Recomputes the published reference values of the invariants: the defect
// prism, the hypersimplex Δ(3,6), the unit cube and its lattice pyramids,
// and the two-fold pyramid over the square.

#include <string>
#include <vector>

#include "defectpoly/constructions.hpp"
#include "defectpoly/invariants.hpp"

namespace defectpoly {

struct ReproCheck {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
};

inline std::vector<ReproCheck> reproduce_reference_values(const EvaluationConvention& conv = {}) {
  std::vector<ReproCheck> checks;
  auto add = [&](std::string name, std::string expected, std::string computed) {
    const bool pass = expected == computed;
    checks.push_back({std::move(name), std::move(expected), std::move(computed), pass});
  };
  auto ct = [&](const Polytope& p, unsigned long t) { return ct_invariant_under(p, t, conv).get_str(); };
  auto fpoly = [&](const Polytope& p) {
    std::string out;
    for (const auto& c : f_poly_under(p, conv)) {
      if (!out.empty()) out += ' ';
      out += c.get_str();
    }
    return out;
  };

  const Polytope prism_triangle = prism(simplex(2));
  add("SMOOTH prism(simplex(2))", "1", is_smooth(prism_triangle) ? "1" : "0");
  add("c1 prism(simplex(2))", "0", ct(prism_triangle, 1));
  add("c1 hypersimplex(3,6)", "136", ct(hypersimplex(3, 6), 1));

  const Polytope c = cube(3);
  add("c0 cube(3)", "-2", ct(c, 0));
  add("c1 cube(3)", "4", ct(c, 1));
  const char* pyramid_values[] = {"-1", "-2", "-6"};
  for (std::size_t r = 1; r <= 3; ++r)
    add("c" + std::to_string(r) + " pyr^" + std::to_string(r) + "(cube(3))", pyramid_values[r - 1],
        ct(r_fold_pyramid(c, r), r));

  add("f_poly cube(3)", "24 36 24 4", fpoly(c));
  add("f_poly pyr^1(cube(3))", "120 192 114 32 -1", fpoly(r_fold_pyramid(c, 1)));
  add("f_poly pyr^3(cube(3))", "5040 9060 5538 1698 188 -3 0", fpoly(r_fold_pyramid(c, 3)));
  add("f_poly pyr^5(cube(3))", "362880 717696 491304 163056 28086 1490 -15 0 0",
      fpoly(r_fold_pyramid(c, 5)));

  add("c1 pyr^2(cube(2))", "0", ct(r_fold_pyramid(cube(2), 2), 1));
  return checks;
}

}  // namespace defectpoly
