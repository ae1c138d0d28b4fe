#pragma once

// Shared test corpus, random generators and brute-force oracles.  The
// oracles deliberately avoid the library's algorithms: determinants by
// cofactor expansion, ranks by minors, facets by supporting hyperplanes
// through vertex subsets, lattice points by scanning a box.

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "defectpoly/constructions.hpp"
#include "defectpoly/exact_linalg.hpp"
#include "defectpoly/invariants.hpp"
#include "defectpoly/lattice_geom.hpp"
#include "defectpoly/polytope.hpp"

namespace defectpoly::testing {

struct NamedPolytope {
  std::string name;
  Polytope polytope;
};

inline Polytope segment() { return cube(1); }
inline Polytope point(std::size_t ambient = 1) { return Polytope::from_vertices(IntMatrix(1, ambient)); }

/// Small, varied polytopes: standard families, pyramids, Cayley joins and a
/// few lower-dimensional ones.
inline std::vector<NamedPolytope> corpus() {
  std::vector<NamedPolytope> c;
  c.push_back({"point", point()});
  for (std::size_t d = 1; d <= 4; ++d) c.push_back({"simplex(" + std::to_string(d) + ")", simplex(d)});
  for (std::size_t d = 1; d <= 3; ++d) c.push_back({"cube(" + std::to_string(d) + ")", cube(d)});
  c.push_back({"prism(simplex(2))", prism(simplex(2))});
  c.push_back({"prism(simplex(3))", prism(simplex(3))});
  c.push_back({"segment x segment", product(segment(), segment())});
  c.push_back({"segment x simplex(2)", product(segment(), simplex(2))});
  c.push_back({"hypersimplex(2,4)", hypersimplex(2, 4)});
  c.push_back({"hypersimplex(1,3)", hypersimplex(1, 3)});
  c.push_back({"pyr(cube(2))", lattice_pyramid(cube(2))});
  c.push_back({"pyr^2(cube(2))", r_fold_pyramid(cube(2), 2)});
  c.push_back({"pyr(cube(3))", lattice_pyramid(cube(3))});
  c.push_back({"dilate(simplex(2),2)", dilate(simplex(2), 2)});
  c.push_back({"cayley(seg,seg,seg)", cayley({segment(), segment(), segment()})});
  c.push_back({"cayley(seg,seg,pt,pt)", cayley({segment(), segment(), point(), point()})});
  c.push_back({"edge (0,0)-(2,2)", Polytope::from_vertices(IntMatrix{{0, 0}, {2, 2}})});
  c.push_back({"triangle (0,0),(2,1),(1,3)", Polytope::from_vertices(IntMatrix{{0, 0}, {2, 1}, {1, 3}})});
  c.push_back({"Reeve-like tetrahedron", Polytope::from_vertices(IntMatrix{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 3}})});
  return c;
}

/// Random lattice polytopes: conv of 1..max_points points of [0, box]^d.
inline std::vector<Polytope> random_polytopes(std::mt19937& rng, std::size_t count, std::size_t d,
                                              int box, std::size_t max_points) {
  std::uniform_int_distribution<int> coord(0, box);
  std::uniform_int_distribution<std::size_t> npoints(1, max_points);
  std::vector<Polytope> out;
  while (out.size() < count) {
    IntMatrix m(npoints(rng), d);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = coord(rng);
    out.push_back(Polytope::from_vertices(m));
  }
  return out;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> entry(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  return m;
}

/// Unimodular matrix: the transform of the Hermite form of a random matrix,
/// mixed with a random signed permutation.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t d) {
  IntMatrix u = hnf(random_matrix(rng, d, d, -2, 2)).U;
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  IntMatrix p(d, d);
  std::bernoulli_distribution flip(0.5);
  for (std::size_t i = 0; i < d; ++i) p(i, perm[i]) = flip(rng) ? 1 : -1;
  return u * p;
}

inline IntVector random_vector(std::mt19937& rng, std::size_t d, int lo, int hi) {
  std::uniform_int_distribution<int> entry(lo, hi);
  IntVector v(d);
  for (auto& x : v) x = entry(rng);
  return v;
}

// ---------------------------------------------------------------------------
// Oracles

inline Integer oracle_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(i - 1, cc++) = a(i, c);
    const Integer term = a(0, j) * oracle_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

inline IntMatrix submatrix(const IntMatrix& a, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) {
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = a(rows[i], cols[j]);
  return m;
}

/// gcd of the absolute values of all k×k minors.
inline Integer oracle_minor_gcd(const IntMatrix& a, std::size_t k) {
  Integer g = 0;
  for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& r) {
    for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& c) {
      const Integer m = oracle_det(submatrix(a, r, c));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
    });
  });
  return g;
}

/// Largest k with a nonzero k×k minor.
inline std::size_t oracle_rank(const IntMatrix& a) {
  for (std::size_t k = std::min(a.rows(), a.cols()); k > 0; --k)
    if (oracle_minor_gcd(a, k) != 0) return k;
  return 0;
}

/// Affine rank of a set of points (rows), via minors.
inline std::size_t oracle_affine_rank(const IntMatrix& pts, const std::vector<std::size_t>& idx) {
  if (idx.size() <= 1) return 0;
  IntMatrix d(idx.size() - 1, pts.cols());
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = 0; j < pts.cols(); ++j) d(i - 1, j) = pts(idx[i], j) - pts(idx[0], j);
  return oracle_rank(d);
}

/// Facets of a full-dimensional point set in Z^d as sets of tight point
/// indices: hyperplanes through d affinely independent points that support
/// the whole set and contain d affinely independent points.
inline std::set<std::vector<std::size_t>> oracle_facet_incidences(const IntMatrix& pts) {
  const std::size_t n = pts.rows();
  const std::size_t d = pts.cols();
  std::set<std::vector<std::size_t>> facets;
  if (d == 0) return facets;
  for_each_subset(n, d, [&](const std::vector<std::size_t>& s) {
    // Normal = generalized cross product of the d-1 difference vectors.
    IntMatrix diffs(d - 1, d);
    for (std::size_t i = 1; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) diffs(i - 1, j) = pts(s[i], j) - pts(s[0], j);
    IntVector normal(d);
    bool nonzero = false;
    for (std::size_t j = 0; j < d; ++j) {
      IntMatrix m(d - 1, d - 1);
      for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t c = 0, cc = 0; c < d; ++c)
          if (c != j) m(i, cc++) = diffs(i, c);
      normal[j] = oracle_det(m);
      if (j % 2) normal[j] = -normal[j];
      if (normal[j] != 0) nonzero = true;
    }
    if (!nonzero) return;
    bool pos = false, neg = false;
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < n; ++i) {
      Integer v = 0;
      for (std::size_t j = 0; j < d; ++j) v += normal[j] * (pts(i, j) - pts(s[0], j));
      if (v > 0) pos = true;
      if (v < 0) neg = true;
      if (v == 0) tight.push_back(i);
    }
    if (pos && neg) return;
    if (oracle_affine_rank(pts, tight) + 1 == d) facets.insert(tight);
  });
  return facets;
}

/// f-vector (top face included) from all intersections of facet vertex sets.
inline std::vector<std::size_t> oracle_f_vector(const IntMatrix& pts,
                                                const std::set<std::vector<std::size_t>>& facets) {
  const std::size_t n = pts.rows();
  std::set<std::vector<std::size_t>> faces(facets.begin(), facets.end());
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<std::size_t>> current(faces.begin(), faces.end());
    for (const auto& a : current)
      for (const auto& f : facets) {
        std::vector<std::size_t> x;
        std::set_intersection(a.begin(), a.end(), f.begin(), f.end(), std::back_inserter(x));
        if (!x.empty() && faces.insert(x).second) grew = true;
      }
  }
  faces.insert(all);
  const std::size_t d = oracle_affine_rank(pts, all);
  std::vector<std::size_t> f(d + 1, 0);
  for (const auto& face : faces) ++f[oracle_affine_rank(pts, face)];
  return f;
}

/// |Z^d ∩ tP| by scanning the dilated bounding box and testing membership
/// of x/t against the H-representation.
inline Integer oracle_count(const Polytope& p, long t) {
  if (t == 0) return 1;
  const std::size_t d = p.ambient_dim();
  std::vector<long> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = hi[j] = p.vertices()(0, j).get_si();
    for (std::size_t i = 1; i < p.n_vertices(); ++i) {
      lo[j] = std::min(lo[j], p.vertices()(i, j).get_si());
      hi[j] = std::max(hi[j], p.vertices()(i, j).get_si());
    }
    lo[j] *= t;
    hi[j] *= t;
  }
  Integer count = 0;
  std::vector<long> x(lo);
  RatVector scaled(d);
  for (;;) {
    for (std::size_t j = 0; j < d; ++j) {
      scaled[j] = Rational(Integer(x[j]), Integer(t));
      scaled[j].canonicalize();
    }
    if (p.contains(scaled)) ++count;
    std::size_t j = 0;
    while (j < d && x[j] == hi[j]) {
      x[j] = lo[j];
      ++j;
    }
    if (j == d) break;
    ++x[j];
  }
  return count;
}

/// The face of p as a polytope of its own.
inline Polytope face_polytope(const Polytope& p, const Face& f) {
  IntMatrix m(f.vertices.size(), p.ambient_dim());
  for (std::size_t i = 0; i < f.vertices.size(); ++i)
    std::copy(p.vertices().row(f.vertices[i]).begin(), p.vertices().row(f.vertices[i]).end(),
              m.row(i).begin());
  return Polytope::from_vertices(m);
}

}  // namespace defectpoly::testing
