#pragma once

// Standard lattice polytopes and the constructions used to build the
// counter-examples: prisms, lattice pyramids, hypersimplices, Cayley joins.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "defectpoly/exact_linalg.hpp"
#include "defectpoly/lattice_geom.hpp"
#include "defectpoly/polytope.hpp"

namespace defectpoly {

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// conv{0, e_1, ..., e_d}
inline Polytope simplex(std::size_t d) {
  IntMatrix v(d + 1, d);
  for (std::size_t i = 0; i < d; ++i) v(i + 1, i) = 1;
  return Polytope::from_vertices(v);
}

/// The 0/1 cube, vertices in binary counting order with coordinate 0 fastest.
inline Polytope cube(std::size_t d) {
  if (d < 1) throw DomainError("cube: dimension must be at least 1");
  if (d >= 8 * sizeof(std::size_t) - 1) throw DomainError("cube: dimension too large");
  const std::size_t n = std::size_t{1} << d;
  IntMatrix v(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) v(i, j) = (i >> j) & 1U;
  return Polytope::from_vertices(v);
}

/// All (v, w) for vertices v of P and w of Q; P's index varies slowest.
inline Polytope product(const Polytope& p, const Polytope& q) {
  const std::size_t dp = p.ambient_dim();
  const std::size_t dq = q.ambient_dim();
  IntMatrix v(p.n_vertices() * q.n_vertices(), dp + dq);
  std::size_t r = 0;
  for (std::size_t i = 0; i < p.n_vertices(); ++i)
    for (std::size_t j = 0; j < q.n_vertices(); ++j, ++r) {
      std::copy(p.vertices().row(i).begin(), p.vertices().row(i).end(), v.row(r).begin());
      std::copy(q.vertices().row(j).begin(), q.vertices().row(j).end(), v.row(r).begin() + dp);
    }
  return Polytope::from_vertices(v);
}

/// P × {0} followed by P × {1}.
inline Polytope prism(const Polytope& p) {
  const std::size_t n = p.n_vertices();
  const std::size_t d = p.ambient_dim();
  IntMatrix v(2 * n, d + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < 2; ++h) {
      auto row = v.row(h * n + i);
      std::copy(p.vertices().row(i).begin(), p.vertices().row(i).end(), row.begin());
      row[d] = static_cast<long>(h);
    }
  return Polytope::from_vertices(v);
}

/// conv(P × {0} ∪ (v_0, 1)) with v_0 the first vertex of P.
inline Polytope lattice_pyramid(const Polytope& p) {
  const std::size_t n = p.n_vertices();
  const std::size_t d = p.ambient_dim();
  IntMatrix v(n + 1, d + 1);
  for (std::size_t i = 0; i < n; ++i)
    std::copy(p.vertices().row(i).begin(), p.vertices().row(i).end(), v.row(i).begin());
  std::copy(p.vertices().row(0).begin(), p.vertices().row(0).end(), v.row(n).begin());
  v(n, d) = 1;
  return Polytope::from_vertices(v);
}

inline Polytope r_fold_pyramid(Polytope p, std::size_t r) {
  for (; r > 0; --r) p = lattice_pyramid(p);
  return p;
}

/// Δ(k, n): 0/1 vectors of length n with exactly k ones, in lexicographically
/// decreasing order (1 1 1 0 0 0 first).
inline Polytope hypersimplex(std::size_t k, std::size_t n) {
  if (k < 1 || k + 1 > n) throw DomainError("hypersimplex: need 1 <= k <= n - 1");
  std::vector<int> mask(n, 0);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(k), 1);
  std::vector<std::vector<Integer>> rows;
  do {
    rows.emplace_back(mask.begin(), mask.end());
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return Polytope::from_vertices(IntMatrix::from_rows(rows));
}

/// General Cayley join conv(Q_0 × {e_0}, ..., Q_k × {e_k}) in R^{m+k+1}.
/// No strictness (common normal fan) is required of the factors.
inline Polytope cayley(std::span<const Polytope> factors) {
  if (factors.empty()) throw DomainError("cayley: need at least one factor");
  const std::size_t m = factors.front().ambient_dim();
  for (const auto& q : factors)
    if (q.ambient_dim() != m) throw DomainError("cayley: factors live in different ambient dimensions");
  const std::size_t markers = factors.size();
  IntMatrix v(0, m + markers);
  for (std::size_t j = 0; j < markers; ++j)
    for (std::size_t i = 0; i < factors[j].n_vertices(); ++i) {
      IntVector row(m + markers);
      std::copy(factors[j].vertices().row(i).begin(), factors[j].vertices().row(i).end(), row.begin());
      row[m + j] = 1;
      v.append_row(row);
    }
  return Polytope::from_vertices(v);
}

inline Polytope cayley(std::initializer_list<Polytope> factors) {
  const std::vector<Polytope> f(factors);
  return cayley(std::span<const Polytope>(f));
}

/// Vertices U·v + s.  U must be unimodular.
inline Polytope unimodular_image(const Polytope& p, const IntMatrix& u, std::span<const Integer> s) {
  const std::size_t d = p.ambient_dim();
  if (u.rows() != d || u.cols() != d || s.size() != d)
    throw DimensionError("unimodular_image: shapes do not match the ambient dimension");
  if (abs(det(u)) != 1) throw DomainError("unimodular_image: matrix is not unimodular");
  IntMatrix v(p.n_vertices(), d);
  for (std::size_t i = 0; i < p.n_vertices(); ++i) {
    const IntVector x = u * p.vertices().row(i);
    for (std::size_t j = 0; j < d; ++j) v(i, j) = x[j] + s[j];
  }
  return Polytope::from_vertices(v);
}

inline Polytope unimodular_image(const Polytope& p, const IntMatrix& u, const IntVector& s) {
  return unimodular_image(p, u, std::span<const Integer>(s));
}

inline constexpr std::size_t default_vertex_cap = 10;

/// Vertex cap for lattice_equivalent: DEFECTPOLY_VERTEX_CAP when set to a
/// positive integer, otherwise default_vertex_cap.
inline std::size_t vertex_cap_from_environment() {
  if (const char* env = std::getenv("DEFECTPOLY_VERTEX_CAP")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return default_vertex_cap;
}

namespace detail {

struct VertexFingerprint {
  std::size_t degree;
  std::size_t facets;
  friend auto operator<=>(const VertexFingerprint&, const VertexFingerprint&) = default;
};

inline std::vector<VertexFingerprint> fingerprints(const Polytope& p) {
  const auto adj = vertex_neighbours(p);
  std::vector<VertexFingerprint> out(p.n_vertices());
  const IntMatrix coords = all_chart_coordinates(p);
  for (std::size_t v = 0; v < p.n_vertices(); ++v) {
    std::size_t facets = 0;
    for (const auto& h : p.chart_facets())
      if (h.evaluate(coords.row(v)) == 0) ++facets;
    out[v] = {adj[v].size(), facets};
  }
  return out;
}

}  // namespace detail

/// True iff some bijection of the vertex sets extends to an affine lattice
/// isomorphism between the charts of aff(P) and aff(Q).  Backtracks over the
/// images of an affine basis of P, pruned by (degree, facet count)
/// fingerprints; every candidate is checked for integrality, unimodularity
/// and that it maps the vertex set of P onto that of Q.
inline bool lattice_equivalent(const Polytope& p, const Polytope& q,
                               std::size_t vertex_cap = vertex_cap_from_environment()) {
  if (p.n_vertices() > vertex_cap || q.n_vertices() > vertex_cap)
    throw CapacityError("lattice_equivalent: vertex count exceeds the cap of " +
                        std::to_string(vertex_cap));
  if (p.n_vertices() != q.n_vertices() || p.dim() != q.dim()) return false;
  if (p.face_lattice().f_vector() != q.face_lattice().f_vector()) return false;
  const std::size_t n = p.n_vertices();
  const std::size_t k = p.dim();
  if (k == 0) return true;

  const IntMatrix yp = detail::all_chart_coordinates(p);
  const IntMatrix yq = detail::all_chart_coordinates(q);
  const auto fp = detail::fingerprints(p);
  const auto fq = detail::fingerprints(q);
  {
    auto a = fp, b = fq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }

  // Affine basis of P: vertex 0 plus k vertices with independent differences.
  std::vector<std::size_t> basis{0};
  {
    RatMatrix acc(0, k);
    for (std::size_t i = 1; i < n && basis.size() < k + 1; ++i) {
      RatMatrix trial = acc;
      RatVector diff(k);
      for (std::size_t j = 0; j < k; ++j) diff[j] = yp(i, j) - yp(0, j);
      trial.append_row(diff);
      if (rank(trial) > acc.rows()) {
        acc = std::move(trial);
        basis.push_back(i);
      }
    }
  }
  IntMatrix dp(k, k);  // rows: basis differences in P
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < k; ++j) dp(r, j) = yp(basis[r + 1], j) - yp(basis[0], j);
  const RatMatrix dp_rat = to_rational(dp);

  std::set<IntVector> target;
  for (std::size_t i = 0; i < n; ++i) target.insert(yq.row_vector(i));

  // Find M (k×k) with dp · M = dq, i.e. the linear part acting on row vectors.
  auto try_images = [&](const std::vector<std::size_t>& image) {
    IntMatrix m(k, k);
    for (std::size_t col = 0; col < k; ++col) {
      RatVector rhs(k);
      for (std::size_t r = 0; r < k; ++r) rhs[r] = yq(image[r + 1], col) - yq(image[0], col);
      const auto x = solve(dp_rat, rhs);
      if (!x) return false;
      for (std::size_t r = 0; r < k; ++r) {
        if ((*x)[r].get_den() != 1) return false;
        m(r, col) = (*x)[r].get_num();
      }
    }
    if (abs(det(m)) != 1) return false;
    std::set<IntVector> mapped;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector y(k);
      for (std::size_t col = 0; col < k; ++col) {
        y[col] = yq(image[0], col);
        for (std::size_t r = 0; r < k; ++r) y[col] += (yp(i, r) - yp(basis[0], r)) * m(r, col);
      }
      if (!target.count(y)) return false;
      mapped.insert(std::move(y));
    }
    return mapped.size() == n;
  };

  std::vector<std::size_t> image;
  std::vector<char> taken(n, 0);
  std::function<bool(std::size_t)> assign = [&](std::size_t slot) -> bool {
    if (slot == basis.size()) return try_images(image);
    for (std::size_t c = 0; c < n; ++c) {
      if (taken[c] || fp[basis[slot]] != fq[c]) continue;
      taken[c] = 1;
      image.push_back(c);
      if (assign(slot + 1)) return true;
      image.pop_back();
      taken[c] = 0;
    }
    return false;
  };
  return assign(0);
}

}  // namespace defectpoly
