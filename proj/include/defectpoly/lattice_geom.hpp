#pragma once

// Lattice geometry of faces: the lattice Z^F of a face, normalized volume,
// lattice points, Ehrhart polynomials, smoothness and lattice width.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "defectpoly/chart.hpp"
#include "defectpoly/double_description.hpp"
#include "defectpoly/exact_linalg.hpp"
#include "defectpoly/parallel.hpp"
#include "defectpoly/polynomial.hpp"
#include "defectpoly/polytope.hpp"

namespace defectpoly {

/// Chart of Z^d ∩ aff(F), origin at the face's lowest-indexed vertex.
inline AffineLatticeChart chart(const Polytope& p, FaceId id) {
  return AffineLatticeChart::through(p.vertices(), p.face_lattice().face(id).vertices);
}

// ---------------------------------------------------------------------------
// Normalized volume

enum class PullOrder { lowest_index, highest_index };

/// A simplex as vertex indices of the parent polytope; the pulled apex first.
using Simplex = std::vector<std::size_t>;

namespace detail {

inline std::vector<Simplex> pull_face(const FaceLattice& lattice, FaceId id, PullOrder order,
                                      const std::vector<std::vector<std::vector<Simplex>>>& below) {
  const Face& face = lattice.face(id);
  if (id.dim == 0) return {{face.vertices.front()}};
  const std::size_t apex =
      order == PullOrder::lowest_index ? face.vertices.front() : face.vertices.back();
  std::vector<Simplex> out;
  for (std::size_t facet : lattice.facets_of(id)) {
    const Face& g = lattice.faces_of_dim(id.dim - 1)[facet];
    if (std::binary_search(g.vertices.begin(), g.vertices.end(), apex)) continue;
    for (const Simplex& s : below[id.dim - 1][facet]) {
      Simplex cone{apex};
      cone.insert(cone.end(), s.begin(), s.end());
      out.push_back(std::move(cone));
    }
  }
  return out;
}

/// Pulling triangulations of every face with dimension <= max_dim.
inline std::vector<std::vector<std::vector<Simplex>>> pull_all(const FaceLattice& lattice,
                                                               PullOrder order,
                                                               std::size_t max_dim) {
  std::vector<std::vector<std::vector<Simplex>>> tri(max_dim + 1);
  for (std::size_t k = 0; k <= max_dim; ++k) {
    tri[k].resize(lattice.faces_of_dim(k).size());
    parallel_for(tri[k].size(),
                 [&](std::size_t i) { tri[k][i] = pull_face(lattice, {k, i}, order, tri); });
  }
  return tri;
}

inline Integer simplex_volume(const AffineLatticeChart& c, const IntMatrix& vertices,
                              const Simplex& s) {
  const std::size_t k = c.dim();
  if (k == 0) return 1;
  const IntVector base = c.coordinates(vertices.row(s[0]));
  IntMatrix edges(k, k);
  for (std::size_t i = 1; i <= k; ++i) {
    const IntVector y = c.coordinates(vertices.row(s[i]));
    for (std::size_t j = 0; j < k; ++j) edges(i - 1, j) = y[j] - base[j];
  }
  return abs(det(std::move(edges)));
}

inline Integer triangulated_volume(const Polytope& p, FaceId id, const std::vector<Simplex>& tri) {
  const AffineLatticeChart c = chart(p, id);
  Integer vol = 0;
  for (const auto& s : tri) vol += simplex_volume(c, p.vertices(), s);
  return vol;
}

}  // namespace detail

/// Pulling triangulation of a face: cone the pulled vertex over the
/// triangulations of the facets of F that miss it.
inline std::vector<Simplex> pulling_triangulation(const Polytope& p, FaceId id,
                                                  PullOrder order = PullOrder::lowest_index) {
  const auto& lattice = p.face_lattice();
  if (id.dim == 0) return {{lattice.face(id).vertices.front()}};
  const auto tri = detail::pull_all(lattice, order, id.dim - 1);
  return detail::pull_face(lattice, id, order, tri);
}

/// Normalized volume of a face computed from a pulling triangulation in the
/// given order, uncached.  Independent of the order chosen.
inline Integer normalized_volume_by_pulling(const Polytope& p, FaceId id, PullOrder order) {
  return detail::triangulated_volume(p, id, pulling_triangulation(p, id, order));
}

/// lvol for every face, indexed like the face lattice.  Cached on p.
inline const std::vector<std::vector<Integer>>& face_volumes(const Polytope& p) {
  return p.face_data().volumes.get([&] {
    const auto& lattice = p.face_lattice();
    const auto tri = detail::pull_all(lattice, PullOrder::lowest_index, lattice.dim());
    std::vector<std::vector<Integer>> vol(lattice.dim() + 1);
    for (std::size_t k = 0; k <= lattice.dim(); ++k) {
      vol[k].resize(tri[k].size());
      parallel_for(vol[k].size(), [&](std::size_t i) {
        vol[k][i] = k == 0 ? Integer(1) : detail::triangulated_volume(p, {k, i}, tri[k][i]);
      });
    }
    return vol;
  });
}

/// lvol(F): volume in the lattice Z^F, a unimodular simplex having volume 1.
inline Integer normalized_volume(const Polytope& p, FaceId id) {
  return face_volumes(p)[id.dim][id.index];
}

inline Integer normalized_volume(const Polytope& p) {
  return normalized_volume(p, p.face_lattice().top());
}

// ---------------------------------------------------------------------------
// Lattice points

/// Integer points of the dilation t·Q of a full-dimensional polytope
/// Q = { y : constant + normal·y >= 0 } ⊆ [lo, hi].  Depth-first over the
/// coordinates; each coordinate range is cut down by propagating the
/// halfspaces over the remaining box, which is exact at the last coordinate.
class DilatedPointEnumerator {
 public:
  DilatedPointEnumerator(std::vector<Halfspace> halfspaces, IntVector lo, IntVector hi,
                         const Integer& t)
      : halfspaces_(std::move(halfspaces)), lo_(std::move(lo)), hi_(std::move(hi)) {
    const std::size_t k = lo_.size();
    for (auto& x : lo_) x *= t;
    for (auto& x : hi_) x *= t;
    rest_.assign(halfspaces_.size(), IntVector(k + 1));
    for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
      halfspaces_[i].constant *= t;
      for (std::size_t j = k; j-- > 0;) {
        const Integer& c = halfspaces_[i].normal[j];
        const Integer best = c >= 0 ? Integer(c * hi_[j]) : Integer(c * lo_[j]);
        rest_[i][j] = rest_[i][j + 1] + best;
      }
    }
  }

  Integer count() {
    Integer total = 0;
    run(nullptr, &total);
    return total;
  }

  void for_each(const std::function<void(const IntVector&)>& visit) {
    run(&visit, nullptr);
  }

 private:
  void run(const std::function<void(const IntVector&)>* visit, Integer* total) {
    const std::size_t k = lo_.size();
    if (k == 0) {
      for (const auto& h : halfspaces_)
        if (h.constant < 0) return;
      if (total) *total += 1;
      if (visit) (*visit)(IntVector{});
      return;
    }
    sums_.assign(k + 1, IntVector(halfspaces_.size()));
    for (std::size_t i = 0; i < halfspaces_.size(); ++i) sums_[0][i] = halfspaces_[i].constant;
    point_.assign(k, 0);
    descend(0, visit, total);
  }

  void descend(std::size_t j, const std::function<void(const IntVector&)>* visit, Integer* total) {
    const std::size_t k = lo_.size();
    Integer lower = lo_[j];
    Integer upper = hi_[j];
    Integer bound, q;
    for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
      const Integer& c = halfspaces_[i].normal[j];
      bound = sums_[j][i] + rest_[i][j + 1];
      if (c == 0) {
        if (bound < 0) return;
      } else if (c > 0) {
        bound = -bound;
        mpz_cdiv_q(q.get_mpz_t(), bound.get_mpz_t(), c.get_mpz_t());
        if (q > lower) lower = q;
      } else {
        const Integer neg = -c;
        mpz_fdiv_q(q.get_mpz_t(), bound.get_mpz_t(), neg.get_mpz_t());
        if (q < upper) upper = q;
      }
    }
    if (lower > upper) return;
    if (j + 1 == k && total && !visit) {
      *total += upper - lower + 1;
      return;
    }
    for (std::size_t i = 0; i < halfspaces_.size(); ++i)
      sums_[j + 1][i] = sums_[j][i] + halfspaces_[i].normal[j] * lower;
    for (Integer y = lower; y <= upper; ++y) {
      point_[j] = y;
      if (j + 1 == k) {
        if (total) *total += 1;
        (*visit)(point_);
      } else {
        descend(j + 1, visit, total);
      }
      for (std::size_t i = 0; i < halfspaces_.size(); ++i) sums_[j + 1][i] += halfspaces_[i].normal[j];
    }
  }

  std::vector<Halfspace> halfspaces_;
  IntVector lo_, hi_;
  std::vector<IntVector> rest_;  // rest_[i][j]: max of Σ_{l>=j} normal_l·y_l over the box
  std::vector<IntVector> sums_;
  IntVector point_;
};

namespace detail {

/// Full-dimensional chart image of a face: vertex coordinates, halfspaces, box.
struct ChartPolytope {
  IntMatrix coords;
  std::vector<Halfspace> halfspaces;
  IntVector lo, hi;

  explicit ChartPolytope(IntMatrix y) : coords(std::move(y)) {
    const std::size_t k = coords.cols();
    halfspaces = facets_of_full_dimensional(coords);
    lo.resize(k);
    hi.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      lo[j] = hi[j] = coords(0, j);
      for (std::size_t i = 1; i < coords.rows(); ++i) {
        if (coords(i, j) < lo[j]) lo[j] = coords(i, j);
        if (coords(i, j) > hi[j]) hi[j] = coords(i, j);
      }
    }
  }

  Integer count(const Integer& t) const { return DilatedPointEnumerator(halfspaces, lo, hi, t).count(); }
};

inline ChartPolytope chart_polytope(const Polytope& p, FaceId id) {
  const Face& face = p.face_lattice().face(id);
  return ChartPolytope(chart(p, id).coordinates(p.vertices(), face.vertices));
}

inline IntMatrix all_chart_coordinates(const Polytope& p) {
  std::vector<std::size_t> all(p.n_vertices());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return p.chart().coordinates(p.vertices(), all);
}

}  // namespace detail

/// Lattice points of P, lexicographically sorted.
inline std::vector<IntVector> lattice_points(const Polytope& p) {
  const detail::ChartPolytope cp(detail::all_chart_coordinates(p));
  std::vector<IntVector> out;
  DilatedPointEnumerator(p.chart_facets(), cp.lo, cp.hi, Integer(1))
      .for_each([&](const IntVector& y) { out.push_back(p.chart().point(y)); });
  std::sort(out.begin(), out.end());
  return out;
}

/// |Z^d ∩ t·P| without listing the points.
inline Integer count_lattice_points(const Polytope& p, const Integer& t = 1) {
  if (t < 0) throw DomainError("count_lattice_points: negative dilation factor");
  if (t == 0) return 1;
  const detail::ChartPolytope cp(detail::all_chart_coordinates(p));
  return DilatedPointEnumerator(p.chart_facets(), cp.lo, cp.hi, t).count();
}

inline Polytope dilate(const Polytope& p, const Integer& t) {
  if (t < 1) throw DomainError("dilate: factor must be at least 1");
  IntMatrix v = p.vertices();
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (auto& x : v.row(i)) x *= t;
  return Polytope::from_vertices(v);
}

// ---------------------------------------------------------------------------
// Ehrhart polynomials

/// ehr(F, t) = |Z^d ∩ tF|, interpolated from the counts at t = 0..dim F.
/// Uncached.
inline Polynomial ehrhart_polynomial(const Polytope& p, FaceId id) {
  if (id.dim == 0) return {{Rational(1)}};
  const detail::ChartPolytope cp = detail::chart_polytope(p, id);
  IntVector counts{Integer(1)};
  for (std::size_t t = 1; t <= id.dim; ++t) counts.push_back(cp.count(Integer(static_cast<long>(t))));
  return interpolate_at_naturals(std::span<const Integer>(counts));
}

/// Ehrhart polynomials of every face, indexed like the face lattice.  Cached on p.
inline const std::vector<std::vector<Polynomial>>& face_ehrhart(const Polytope& p) {
  return p.face_data().ehrhart.get([&] {
    const auto& lattice = p.face_lattice();
    std::vector<std::pair<std::size_t, std::size_t>> work;
    std::vector<std::vector<Polynomial>> out(lattice.dim() + 1);
    for (std::size_t k = 0; k <= lattice.dim(); ++k) {
      out[k].resize(lattice.faces_of_dim(k).size());
      for (std::size_t i = 0; i < out[k].size(); ++i) work.emplace_back(k, i);
    }
    // Largest faces first so the expensive counts start early.
    std::reverse(work.begin(), work.end());
    parallel_for(work.size(), [&](std::size_t w) {
      const auto [k, i] = work[w];
      out[k][i] = ehrhart_polynomial(p, {k, i});
    });
    return out;
  });
}

inline Polynomial ehrhart(const Polytope& p, FaceId id) { return face_ehrhart(p)[id.dim][id.index]; }

/// Ehrhart polynomial of P itself.
inline Polynomial ehrhart(const Polytope& p) {
  return ehrhart_polynomial(p, p.face_lattice().top());
}

// ---------------------------------------------------------------------------
// Smoothness and width

/// Simple, and at every vertex the primitive edge directions form a basis of
/// the lattice of aff(P).
inline bool is_smooth(const Polytope& p) {
  if (!is_simple(p)) return false;
  const std::size_t k = p.dim();
  if (k == 0) return true;
  const IntMatrix coords = detail::all_chart_coordinates(p);
  const auto adj = vertex_neighbours(p);
  for (std::size_t v = 0; v < p.n_vertices(); ++v) {
    IntMatrix edges(k, k);
    for (std::size_t e = 0; e < k; ++e) {
      IntVector dir(k);
      for (std::size_t j = 0; j < k; ++j) dir[j] = coords(adj[v][e], j) - coords(v, j);
      dir = primitive_part(dir);
      std::copy(dir.begin(), dir.end(), edges.row(e).begin());
    }
    if (abs(det(std::move(edges))) != 1) return false;
  }
  return true;
}

/// max w·x - min w·x over the vertices.
inline Integer width(const Polytope& p, std::span<const Integer> w) {
  if (w.size() != p.ambient_dim()) throw DimensionError("width: direction has wrong dimension");
  if (std::all_of(w.begin(), w.end(), [](const Integer& x) { return x == 0; }))
    throw DomainError("width: zero direction");
  Integer lo, hi;
  for (std::size_t i = 0; i < p.n_vertices(); ++i) {
    const Integer value = dot<Integer>(w, p.vertices().row(i));
    if (i == 0 || value < lo) lo = value;
    if (i == 0 || value > hi) hi = value;
  }
  return hi - lo;
}

inline Integer width(const Polytope& p, const IntVector& w) {
  return width(p, std::span<const Integer>(w));
}

/// Bounded heuristic search for a lattice direction of width one.  Scans the
/// primitive chart functionals with entries in [-bound, bound] in order of
/// increasing max-norm and returns the first hit lifted to an ambient
/// integer functional.  Absence only means no witness within the bound.
inline std::optional<IntVector> search_width_one(const Polytope& p, unsigned bound) {
  if (bound < 1) throw DomainError("search_width_one: bound must be at least 1");
  const std::size_t k = p.dim();
  if (k == 0) return std::nullopt;
  const IntMatrix coords = detail::all_chart_coordinates(p);

  auto chart_width = [&](const IntVector& u) {
    Integer lo, hi;
    for (std::size_t i = 0; i < coords.rows(); ++i) {
      const Integer value = dot<Integer>(std::span<const Integer>(u), coords.row(i));
      if (i == 0 || value < lo) lo = value;
      if (i == 0 || value > hi) hi = value;
    }
    return Integer(hi - lo);
  };

  const long b = static_cast<long>(bound);
  for (long norm = 1; norm <= b; ++norm) {
    std::vector<long> u(k, -norm);
    for (;;) {
      long max_abs = 0;
      bool positive_lead = false;
      for (long x : u) {
        max_abs = std::max(max_abs, std::abs(x));
      }
      for (long x : u)
        if (x != 0) {
          positive_lead = x > 0;
          break;
        }
      if (max_abs == norm && positive_lead) {
        IntVector candidate(u.begin(), u.end());
        if (primitive_part(candidate) == candidate && chart_width(candidate) == 1)
          return p.chart().lift_functional(candidate);
      }
      std::size_t j = k;
      while (j-- > 0) {
        if (u[j] < norm) {
          ++u[j];
          break;
        }
        u[j] = -norm;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
  }
  return std::nullopt;
}

}  // namespace defectpoly
