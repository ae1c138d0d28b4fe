// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "defectpoly/constructions.hpp"
#include "defectpoly/invariants.hpp"
#include "defectpoly/repro.hpp"
#include "support.hpp"

namespace {

using namespace defectpoly;
using Clock = std::chrono::steady_clock;

constexpr std::size_t min_property_cases = 100;
constexpr std::size_t unimodular_images_per_polytope = 50;

int failures = 0;

void line(bool pass, const std::string& id, const std::string& text) {
  std::cout << (pass ? "PASS" : "FAIL") << "  " << id << "  " << text << std::endl;
  if (!pass) ++failures;
}

/// Runs `body`, which reports whether its values matched, under a time limit.
void golden(const std::string& id, const std::string& what, double limit_seconds,
            const std::function<std::string()>& body) {
  const auto start = Clock::now();
  std::string mismatch;
  try {
    mismatch = body();
  } catch (const std::exception& e) {
    mismatch = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream text;
  text.precision(3);
  text << what << "  [" << std::fixed << seconds << " s, limit " << limit_seconds << " s]";
  if (!mismatch.empty()) text << "  " << mismatch;
  line(mismatch.empty() && seconds < limit_seconds, id, text.str());
}

std::string expect(const std::string& label, const std::string& expected, const std::string& got) {
  return expected == got ? "" : label + ": expected " + expected + ", got " + got + "; ";
}

std::string joined(const std::vector<Integer>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.get_str();
  return s;
}

/// Property suite: `cases` counts checked instances, `bad` the failures.
struct Tally {
  std::size_t cases = 0;
  std::size_t bad = 0;
  std::string first_failure;

  void check(bool ok, const std::string& where) {
    ++cases;
    if (!ok && bad++ == 0) first_failure = where;
  }
};

void property(const std::string& id, const std::string& what, const std::function<void(Tally&)>& body) {
  Tally tally;
  try {
    body(tally);
  } catch (const std::exception& e) {
    ++tally.bad;
    tally.first_failure = std::string("exception: ") + e.what();
  }
  std::ostringstream text;
  text << what << "  [" << tally.cases << " cases, " << tally.bad << " failed]";
  if (tally.bad) text << "  first: " << tally.first_failure;
  line(tally.bad == 0 && tally.cases >= min_property_cases, id, text.str());
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(DEFECTPOLY_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<Polytope> random_pool(std::mt19937& rng, std::size_t per_dim) {
  std::vector<Polytope> pool;
  for (std::size_t d = 1; d <= 3; ++d)
    for (const auto& p : testing::random_polytopes(rng, per_dim, d, 2, d + 3)) pool.push_back(p);
  return pool;
}

std::vector<testing::NamedPolytope> named(const std::vector<Polytope>& pool, const std::string& prefix) {
  std::vector<testing::NamedPolytope> out;
  for (std::size_t i = 0; i < pool.size(); ++i)
    out.push_back({prefix + "#" + std::to_string(i), pool[i]});
  return out;
}

void golden_values() {
  golden("1.1", "prism(simplex(2)): smooth, c1 = 0", 1.0, [] {
    const Polytope p = prism(simplex(2));
    return expect("smooth", "1", is_smooth(p) ? "1" : "0") +
           expect("c1", "0", ct_invariant(p, 1).get_str());
  });
  golden("1.2", "hypersimplex(3,6): c1 = 136", 30.0, [] {
    return expect("c1", "136", ct_invariant(hypersimplex(3, 6), 1).get_str());
  });
  golden("1.3", "cube(3): c0 = -2, c1 = 4", 1.0, [] {
    const Polytope c = cube(3);
    return expect("c0", "-2", ct_invariant(c, 0).get_str()) + expect("c1", "4", ct_invariant(c, 1).get_str());
  });
  golden("1.4", "pyr^r(cube(3)): c_r = -1, -2, -6 for r = 1, 2, 3", 5.0, [] {
    const char* want[] = {"-1", "-2", "-6"};
    std::string m;
    for (std::size_t r = 1; r <= 3; ++r)
      m += expect("r=" + std::to_string(r), want[r - 1], ct_invariant(r_fold_pyramid(cube(3), r), r).get_str());
    return m;
  });
  golden("1.5", "f_poly of cube(3), pyr^1, pyr^3, pyr^5", 180.0, [] {
    const Polytope c = cube(3);
    return expect("cube", "24 36 24 4", joined(f_poly(c))) +
           expect("pyr^1", "120 192 114 32 -1", joined(f_poly(r_fold_pyramid(c, 1)))) +
           expect("pyr^3", "5040 9060 5538 1698 188 -3 0", joined(f_poly(r_fold_pyramid(c, 3)))) +
           expect("pyr^5", "362880 717696 491304 163056 28086 1490 -15 0 0",
                  joined(f_poly(r_fold_pyramid(c, 5))));
  });
  golden("1.6", "pyr^2(cube(2)): c1 = 0", 1.0, [] {
    return expect("c1", "0", ct_invariant(r_fold_pyramid(cube(2), 2), 1).get_str());
  });
  const int code = run_binary("repro");
  line(code == 0, "1.7", "defectpoly repro exits 0 with every check PASS  [exit " + std::to_string(code) + "]");
}

void property_suites() {
  std::mt19937 rng(20240601);
  const auto corpus = testing::corpus();
  std::vector<testing::NamedPolytope> wide = corpus;
  for (auto& np : named(random_pool(rng, 30), "random")) wide.push_back(np);

  property("2.1", "c_r(pyr^r P) = r! c_0(P) + (-1)^(d+1) r!, r <= 3", [&](Tally& t) {
    std::vector<testing::NamedPolytope> family;
    for (std::size_t d = 1; d <= 4; ++d) family.push_back({"simplex" + std::to_string(d), simplex(d)});
    for (std::size_t d = 1; d <= 3; ++d) family.push_back({"cube" + std::to_string(d), cube(d)});
    for (std::size_t d = 1; d <= 3; ++d) family.push_back({"prism simplex" + std::to_string(d), prism(simplex(d))});
    for (std::size_t d = 1; d <= 2; ++d) family.push_back({"prism cube" + std::to_string(d), prism(cube(d))});
    Polytope seg_power = testing::segment();
    for (std::size_t k = 2; k <= 3; ++k) {
      seg_power = product(seg_power, testing::segment());
      family.push_back({"segment^" + std::to_string(k), seg_power});
    }
    family.push_back({"segment x simplex2", product(testing::segment(), simplex(2))});
    family.push_back({"segment x segment(0,2)", product(testing::segment(), dilate(testing::segment(), 2))});
    for (auto& np : named(random_pool(rng, 8), "random")) family.push_back(np);
    for (const auto& [name, p] : family) {
      const Integer c0 = ct_invariant(p, 0);
      for (std::size_t r = 1; r <= 3; ++r)
        t.check(ct_invariant(r_fold_pyramid(p, r), r) == pyramid_ct_closed_form(c0, p.dim(), r),
                name + " r=" + std::to_string(r));
    }
  });

  property("2.2", "f-coefficients: leading = c_1, constant = (dim+1)!", [&](Tally& t) {
    for (const auto& [name, p] : wide) {
      const auto f = f_poly(p);
      t.check(f.back() == ct_invariant(p, 1) && f.front() == factorial(p.dim() + 1), name);
    }
  });

  property("2.3", "Ehrhart polynomial at t = k+1, k+2 equals box-scan counts", [&](Tally& t) {
    for (const auto& [name, p] : wide) {
      const Polynomial e = ehrhart(p);
      for (long s = static_cast<long>(p.dim()) + 1; s <= static_cast<long>(p.dim()) + 2; ++s)
        t.check(e(Rational(s)) == testing::oracle_count(p, s), name + " t=" + std::to_string(s));
    }
  });

  property("2.4", "c_t (t = 0..2) and lvol invariant under unimodular maps + translations", [&](Tally& t) {
    for (const auto& [name, p] : corpus) {
      const Integer c[] = {ct_invariant(p, 0), ct_invariant(p, 1), ct_invariant(p, 2)};
      const Integer vol = normalized_volume(p);
      for (std::size_t i = 0; i < unimodular_images_per_polytope; ++i) {
        const Polytope q = unimodular_image(p, testing::random_unimodular(rng, p.ambient_dim()),
                                            testing::random_vector(rng, p.ambient_dim(), -6, 6));
        t.check(ct_invariant(q, 0) == c[0] && ct_invariant(q, 1) == c[1] && ct_invariant(q, 2) == c[2] &&
                    normalized_volume(q) == vol,
                name + " image " + std::to_string(i));
      }
    }
  });

  property("2.5", "Euler relation sum (-1)^k f_k = 1 on every face lattice", [&](Tally& t) {
    for (const auto& [name, p] : wide) {
      t.check(p.face_lattice().euler_characteristic() == 1, name);
      // Each face is a polytope in its own right.
      p.face_lattice().for_each_face([&](FaceId id, const Face& f) {
        if (id.dim < 2 || id.dim == p.dim()) return;
        t.check(testing::face_polytope(p, f).face_lattice().euler_characteristic() == 1,
                name + " face " + std::to_string(id.dim) + ":" + std::to_string(id.index));
      });
    }
  });

  property("2.6", "lowest- and highest-index pulling give the same lvol on every face", [&](Tally& t) {
    for (const auto& [name, p] : wide)
      p.face_lattice().for_each_face([&](FaceId id, const Face&) {
        t.check(normalized_volume_by_pulling(p, id, PullOrder::lowest_index) ==
                    normalized_volume_by_pulling(p, id, PullOrder::highest_index),
                name + " face " + std::to_string(id.dim) + ":" + std::to_string(id.index));
      });
  });

  property("2.7", "prism(simplex(2)) lattice-equivalent to the Cayley join of three segments", [&](Tally& t) {
    const Polytope s = testing::segment();
    const Polytope a = prism(simplex(2));
    const Polytope b = cayley({s, s, s});
    t.check(lattice_equivalent(a, b), "plain");
    // The same statement for random unimodular images of both sides.
    for (std::size_t i = 1; i < min_property_cases; ++i) {
      const Polytope ai = unimodular_image(a, testing::random_unimodular(rng, 3), testing::random_vector(rng, 3, -5, 5));
      const Polytope bi = unimodular_image(b, testing::random_unimodular(rng, 4), testing::random_vector(rng, 4, -5, 5));
      t.check(lattice_equivalent(ai, bi), "image " + std::to_string(i));
    }
  });
}

void negative_controls() {
  const std::pair<const char*, EvaluationConvention> mutations[] = {
      {"sign", {false, VolumeNormalization::lattice}},
      {"volume", {true, VolumeNormalization::euclidean}},
  };
  for (const auto& [name, conv] : mutations) {
    std::size_t flipped = 0;
    for (const auto& c : reproduce_reference_values(conv)) flipped += !c.pass;
    const int code = run_binary(std::string("repro --mutate ") + name);
    line(flipped >= 1 && code == 1, std::string("3.") + (name[0] == 's' ? "1" : "2"),
         std::string("mutating the ") + (name[0] == 's' ? "sign alternation" : "volume normalization") +
             " flips golden values  [" + std::to_string(flipped) + " flipped, repro exit " +
             std::to_string(code) + "]");
  }
}

}  // namespace

int main() {
  golden_values();
  property_suites();
  negative_controls();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
