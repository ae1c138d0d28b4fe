#pragma once

// Lattice polytopes given by integer vertices: H-representation, affine
// hull and the full face lattice.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "defectpoly/chart.hpp"
#include "defectpoly/double_description.hpp"
#include "defectpoly/exact_linalg.hpp"
#include "defectpoly/polynomial.hpp"

namespace defectpoly {

/// constant + normal·x >= 0 (inequality) or == 0 (equation).
struct Inequality {
  Integer constant;
  IntVector normal;

  Integer evaluate(std::span<const Integer> x) const {
    return constant + dot<Integer>(std::span<const Integer>(normal), x);
  }
  Rational evaluate(std::span<const Rational> x) const {
    if (x.size() != normal.size()) throw DimensionError("inequality: point has wrong dimension");
    Rational s = constant;
    for (std::size_t i = 0; i < x.size(); ++i) s += normal[i] * x[i];
    return s;
  }
};

struct HRep {
  std::vector<Inequality> inequalities;  // one per facet
  std::vector<Inequality> equations;     // affine hull
};

struct Face {
  std::vector<std::size_t> vertices;  // sorted indices into the parent polytope
  std::size_t dim = 0;
};

struct FaceId {
  std::size_t dim = 0;
  std::size_t index = 0;
  friend auto operator<=>(const FaceId&, const FaceId&) = default;
};

/// Hasse diagram of the nonempty faces, P itself included as the top node.
class FaceLattice {
 public:
  FaceLattice() = default;
  FaceLattice(std::vector<std::vector<Face>> levels,
              std::vector<std::vector<std::vector<std::size_t>>> facets)
      : levels_(std::move(levels)), facets_(std::move(facets)) {}

  std::size_t dim() const { return levels_.size() - 1; }

  /// The k-faces; empty when k exceeds the dimension.
  std::span<const Face> faces_of_dim(std::size_t k) const {
    if (k >= levels_.size()) return {};
    return levels_[k];
  }

  const Face& face(FaceId id) const { return levels_[id.dim][id.index]; }
  FaceId top() const { return {dim(), 0}; }

  /// Facets of a face, as indices into faces_of_dim(id.dim - 1).
  std::span<const std::size_t> facets_of(FaceId id) const { return facets_[id.dim][id.index]; }

  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& level : levels_) f.push_back(level.size());
    return f;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& level : levels_) n += level.size();
    return n;
  }

  /// Σ_k (-1)^k f_k, which is 1 for every polytope when the top face is counted.
  long euler_characteristic() const {
    long chi = 0;
    for (std::size_t k = 0; k < levels_.size(); ++k)
      chi += (k % 2 == 0 ? 1L : -1L) * static_cast<long>(levels_[k].size());
    return chi;
  }

  template <typename Fn>
  void for_each_face(Fn&& fn) const {
    for (std::size_t k = 0; k < levels_.size(); ++k)
      for (std::size_t i = 0; i < levels_[k].size(); ++i) fn(FaceId{k, i}, levels_[k][i]);
  }

 private:
  std::vector<std::vector<Face>> levels_;
  std::vector<std::vector<std::vector<std::size_t>>> facets_;
};

/// Value computed at most once, safe for concurrent readers.
template <typename T>
class WriteOnce {
 public:
  template <typename Make>
  const T& get(Make&& make) const {
    std::call_once(flag_, [&] { value_.emplace(make()); });
    return *value_;
  }

 private:
  mutable std::once_flag flag_;
  mutable std::optional<T> value_;
};

/// Per-face results memoized on a polytope by the lattice geometry layer.
struct FaceDataCache {
  WriteOnce<std::vector<std::vector<Integer>>> volumes;
  WriteOnce<std::vector<std::vector<Polynomial>>> ehrhart;
};

class Polytope;
FaceLattice build_face_lattice(const Polytope& p);

/// Immutable lattice polytope.  Copies share the vertex data and caches.
class Polytope {
 public:
  /// Strips duplicate and non-extreme rows; surviving rows keep their order.
  /// Indices of the dropped input rows go to `discarded` when given.
  static Polytope from_vertices(const IntMatrix& rows,
                                std::vector<std::size_t>* discarded = nullptr) {
    if (rows.rows() == 0) throw DomainError("polytope needs at least one point");

    std::vector<std::size_t> unique;
    {
      std::set<IntVector> seen;
      for (std::size_t i = 0; i < rows.rows(); ++i) {
        if (seen.insert(rows.row_vector(i)).second) {
          unique.push_back(i);
        } else if (discarded) {
          discarded->push_back(i);
        }
      }
    }

    auto chart = AffineLatticeChart::through(rows, unique);
    IntMatrix coords = chart.coordinates(rows, unique);
    auto halfspaces = facets_of_full_dimensional(coords);

    std::vector<std::size_t> extreme;
    for (std::size_t i = 0; i < unique.size(); ++i) {
      RatMatrix tight(0, chart.dim());
      for (const auto& h : halfspaces)
        if (h.evaluate(coords.row(i)) == 0) tight.append_row(to_rational(h.normal));
      if (rank(tight) == chart.dim()) extreme.push_back(i);
    }

    if (extreme.size() == unique.size()) {
      IntMatrix kept(unique.size(), rows.cols());
      for (std::size_t i = 0; i < unique.size(); ++i)
        std::copy(rows.row(unique[i]).begin(), rows.row(unique[i]).end(), kept.row(i).begin());
      return Polytope(std::move(kept), std::move(chart), std::move(halfspaces));
    }

    IntMatrix kept(extreme.size(), rows.cols());
    for (std::size_t i = 0, e = 0; i < unique.size(); ++i) {
      if (e < extreme.size() && extreme[e] == i) {
        std::copy(rows.row(unique[i]).begin(), rows.row(unique[i]).end(), kept.row(e).begin());
        ++e;
      } else if (discarded) {
        discarded->push_back(unique[i]);
      }
    }
    if (discarded) std::sort(discarded->begin(), discarded->end());
    return from_vertices(kept);
  }

  const IntMatrix& vertices() const { return state_->vertices; }
  IntVector vertex(std::size_t i) const { return state_->vertices.row_vector(i); }
  std::size_t n_vertices() const { return state_->vertices.rows(); }
  std::size_t ambient_dim() const { return state_->vertices.cols(); }
  std::size_t dim() const { return state_->chart.dim(); }

  /// Chart of Z^d ∩ aff(P) with origin at vertex 0.
  const AffineLatticeChart& chart() const { return state_->chart; }

  /// Facet halfspaces in chart coordinates.
  const std::vector<Halfspace>& chart_facets() const { return state_->chart_facets; }

  const HRep& facets() const { return state_->hrep; }

  const FaceLattice& face_lattice() const {
    return state_->lattice.get([this] { return build_face_lattice(*this); });
  }

  bool contains(std::span<const Rational> x) const {
    for (const auto& eq : facets().equations)
      if (eq.evaluate(x) != 0) return false;
    for (const auto& ineq : facets().inequalities)
      if (ineq.evaluate(x) < 0) return false;
    return true;
  }
  bool contains(std::span<const Integer> x) const {
    const RatVector r = to_rational(x);
    return contains(std::span<const Rational>(r));
  }
  bool contains(const RatVector& x) const { return contains(std::span<const Rational>(x)); }
  bool contains(const IntVector& x) const { return contains(std::span<const Integer>(x)); }

  FaceDataCache& face_data() const { return state_->face_data; }

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.vertices() == b.vertices();
  }

 private:
  struct State {
    IntMatrix vertices;
    AffineLatticeChart chart;
    std::vector<Halfspace> chart_facets;
    HRep hrep;
    WriteOnce<FaceLattice> lattice;
    mutable FaceDataCache face_data;
  };

  Polytope(IntMatrix vertices, AffineLatticeChart chart, std::vector<Halfspace> halfspaces)
      : state_(std::make_shared<State>()) {
    state_->vertices = std::move(vertices);
    state_->chart = std::move(chart);
    state_->chart_facets = std::move(halfspaces);
    state_->hrep = ambient_hrep(state_->chart, state_->chart_facets);
  }

  static HRep ambient_hrep(const AffineLatticeChart& chart, const std::vector<Halfspace>& halfspaces) {
    HRep out;
    const IntVector& origin = chart.origin();
    for (const auto& h : halfspaces) {
      IntVector w = chart.lift_functional(h.normal);
      Integer constant = h.constant - dot(w, origin);
      out.inequalities.push_back({std::move(constant), std::move(w)});
    }
    const IntMatrix kernel = chart.dim() == 0 ? IntMatrix::identity(chart.ambient_dim())
                                              : integer_kernel(chart.basis());
    for (std::size_t i = 0; i < kernel.rows(); ++i) {
      IntVector c = kernel.row_vector(i);
      Integer constant = -dot(c, origin);
      out.equations.push_back({std::move(constant), std::move(c)});
    }
    return out;
  }

  std::shared_ptr<State> state_;
};

inline std::span<const Face> faces_of_dim(const FaceLattice& lattice, std::size_t k) {
  return lattice.faces_of_dim(k);
}

/// Top-down closure: the facets of a face G are the maximal nonempty proper
/// intersections of G with the facets of P.
inline FaceLattice build_face_lattice(const Polytope& p) {
  using Bits = boost::dynamic_bitset<>;
  const std::size_t n = p.n_vertices();
  const std::size_t d = p.dim();
  const IntMatrix coords = [&] {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return p.chart().coordinates(p.vertices(), all);
  }();

  std::vector<Bits> incidence;
  for (const auto& h : p.chart_facets()) {
    Bits b(n);
    for (std::size_t v = 0; v < n; ++v)
      if (h.evaluate(coords.row(v)) == 0) b.set(v);
    incidence.push_back(std::move(b));
  }

  auto to_indices = [](const Bits& b) {
    std::vector<std::size_t> idx;
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) idx.push_back(i);
    return idx;
  };

  std::vector<std::vector<Face>> levels(d + 1);
  std::vector<std::vector<std::vector<std::size_t>>> facets(d + 1);

  std::vector<Bits> current{Bits(n).set()};
  levels[d].push_back({to_indices(current.front()), d});
  facets[d].resize(1);

  for (std::size_t k = d; k > 0; --k) {
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> below;  // face -> parents
    for (std::size_t g = 0; g < current.size(); ++g) {
      std::vector<Bits> candidates;
      for (const auto& inc : incidence) {
        Bits c = current[g] & inc;
        if (c.none() || c == current[g]) continue;
        if (std::find(candidates.begin(), candidates.end(), c) == candidates.end())
          candidates.push_back(std::move(c));
      }
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < candidates.size() && maximal; ++j)
          if (i != j && candidates[i].is_proper_subset_of(candidates[j])) maximal = false;
        if (maximal) below[to_indices(candidates[i])].push_back(g);
      }
    }
    // std::map orders the level by sorted vertex-index lists.
    std::vector<Bits> next;
    levels[k - 1].reserve(below.size());
    facets[k - 1].resize(below.size());
    std::size_t index = 0;
    for (const auto& [verts, parents] : below) {
      Bits b(n);
      for (auto v : verts) b.set(v);
      next.push_back(std::move(b));
      levels[k - 1].push_back({verts, k - 1});
      for (auto parent : parents) facets[k][parent].push_back(index);
      ++index;
    }
    current = std::move(next);
  }
  return FaceLattice(std::move(levels), std::move(facets));
}

/// Every vertex lies on exactly dim(P) edges.
inline bool is_simple(const Polytope& p) {
  const auto& lattice = p.face_lattice();
  if (p.dim() == 0) return true;
  std::vector<std::size_t> degree(p.n_vertices(), 0);
  for (const auto& edge : lattice.faces_of_dim(1))
    for (auto v : edge.vertices) ++degree[v];
  return std::all_of(degree.begin(), degree.end(), [&](std::size_t x) { return x == p.dim(); });
}

/// Vertex neighbours along edges, per vertex, in increasing index order.
inline std::vector<std::vector<std::size_t>> vertex_neighbours(const Polytope& p) {
  std::vector<std::vector<std::size_t>> adj(p.n_vertices());
  if (p.dim() == 0) return adj;
  for (const auto& edge : p.face_lattice().faces_of_dim(1)) {
    adj[edge.vertices[0]].push_back(edge.vertices[1]);
    adj[edge.vertices[1]].push_back(edge.vertices[0]);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

inline bool contains(const Polytope& p, const RatVector& x) { return p.contains(x); }

}  // namespace defectpoly
