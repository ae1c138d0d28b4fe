#pragma once

// Incremental double description method, exact integer arithmetic.
//
// extreme_rays() computes the extreme rays of the pointed cone
// { x : A x >= 0 }.  Applied to the homogenized points (1, y) of a
// full-dimensional configuration it yields the facet normals of the
// configuration's convex hull.

#include <boost/dynamic_bitset.hpp>

#include <vector>

#include "defectpoly/exact_linalg.hpp"

namespace defectpoly {

/// constant + normal·y >= 0
struct Halfspace {
  Integer constant;
  IntVector normal;

  Integer evaluate(std::span<const Integer> y) const {
    return constant + dot<Integer>(std::span<const Integer>(normal), y);
  }
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

namespace detail {

struct DDRay {
  IntVector x;
  boost::dynamic_bitset<> zeros;  // processed constraint rows tight at x
};

inline IntVector integral_primitive(const RatVector& v) {
  Integer lcm = 1;
  for (const auto& c : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rational scaled = v[i] * lcm;
    out[i] = scaled.get_num();
  }
  return primitive_part(out);
}

}  // namespace detail

/// Extreme rays (primitive, in insertion-dependent order) of { x : A x >= 0 }.
/// A must have full column rank, so the cone is pointed.
inline std::vector<IntVector> extreme_rays(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (n == 0) return {};

  // Initial simplicial cone from the first independent rows in input order.
  std::vector<std::size_t> initial;
  std::vector<char> used(m, 0);
  {
    RatMatrix acc(0, n);
    std::size_t current_rank = 0;
    for (std::size_t i = 0; i < m && initial.size() < n; ++i) {
      RatMatrix trial = acc;
      trial.append_row(to_rational(a.row(i)));
      const std::size_t r = rank(trial);
      if (r > current_rank) {
        acc = std::move(trial);
        current_rank = r;
        initial.push_back(i);
        used[i] = 1;
      }
    }
    if (initial.size() < n) throw DomainError("extreme_rays: constraint matrix lacks full column rank");
  }

  RatMatrix base(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base(i, j) = a(initial[i], j);

  std::vector<detail::DDRay> rays;
  for (std::size_t j = 0; j < n; ++j) {
    RatVector unit(n);
    unit[j] = 1;
    const auto column = solve(base, unit);
    detail::DDRay ray{detail::integral_primitive(*column), boost::dynamic_bitset<>(m)};
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) ray.zeros.set(initial[i]);
    rays.push_back(std::move(ray));
  }

  for (std::size_t row = 0; row < m; ++row) {
    if (used[row]) continue;
    const auto constraint = a.row(row);

    std::vector<Integer> value(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<detail::DDRay> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      value[r] = dot<Integer>(std::span<const Integer>(rays[r].x), constraint);
      if (value[r] > 0) {
        pos.push_back(r);
      } else if (value[r] < 0) {
        neg.push_back(r);
      } else {
        next.push_back(rays[r]);
        next.back().zeros.set(row);
      }
    }
    for (std::size_t r : pos) next.push_back(rays[r]);

    // Combinatorial adjacency test on the processed constraints.
    auto adjacent = [&](std::size_t p, std::size_t q) {
      const boost::dynamic_bitset<> common = rays[p].zeros & rays[q].zeros;
      if (common.count() + 2 < n) return false;
      for (std::size_t r = 0; r < rays.size(); ++r) {
        if (r == p || r == q) continue;
        if (common.is_subset_of(rays[r].zeros)) return false;
      }
      return true;
    };

    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        if (!adjacent(p, q)) continue;
        IntVector x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = value[p] * rays[q].x[j] - value[q] * rays[p].x[j];
        detail::DDRay ray{primitive_part(x), rays[p].zeros & rays[q].zeros};
        ray.zeros.set(row);
        next.push_back(std::move(ray));
      }
    rays = std::move(next);
    used[row] = 1;
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.x));
  return out;
}

/// Facet halfspaces of the convex hull of the rows of `points`, which must
/// affinely span R^k (k = points.cols()).  Normals are primitive.
inline std::vector<Halfspace> facets_of_full_dimensional(const IntMatrix& points) {
  const std::size_t k = points.cols();
  if (k == 0) return {};
  IntMatrix homogenized(points.rows(), k + 1);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    homogenized(i, 0) = 1;
    for (std::size_t j = 0; j < k; ++j) homogenized(i, j + 1) = points(i, j);
  }
  std::vector<Halfspace> out;
  for (auto& ray : extreme_rays(homogenized)) {
    Halfspace h{ray[0], IntVector(ray.begin() + 1, ray.end())};
    out.push_back(std::move(h));
  }
  // Deterministic order independent of the insertion history.
  std::sort(out.begin(), out.end(), [](const Halfspace& x, const Halfspace& y) {
    if (x.normal != y.normal) return x.normal < y.normal;
    return x.constant < y.constant;
  });
  return out;
}

}  // namespace defectpoly
