#pragma once

// Integer coordinates on the affine lattice Z^d ∩ aff(points).

#include <span>
#include <vector>

#include "defectpoly/exact_linalg.hpp"

namespace defectpoly {

/// Affine lattice chart: x = origin + basis^T y with y integral.  The rows
/// of `basis` generate exactly Z^d ∩ lin(points - origin).
class AffineLatticeChart {
 public:
  AffineLatticeChart() = default;

  AffineLatticeChart(IntVector origin, IntMatrix basis)
      : origin_(std::move(origin)), basis_(std::move(basis)) {
    if (basis_.rows() > 0) {
      const SmithDecomposition smith = snf(basis_);
      if (smith.rank != basis_.rows()) throw DomainError("chart basis is not independent");
      for (std::size_t i = 0; i < smith.rank; ++i)
        if (smith.S(i, i) != 1) throw DomainError("chart basis is not saturated");
      u_ = smith.U;
      v_ = smith.V;
    }
  }

  /// Chart through `points[indices]` with origin at the first listed point.
  static AffineLatticeChart through(const IntMatrix& points, std::span<const std::size_t> indices) {
    if (indices.empty()) throw DomainError("chart of an empty point set");
    const auto origin = points.row(indices.front());
    IntMatrix diffs(indices.size() - 1, points.cols());
    for (std::size_t i = 1; i < indices.size(); ++i)
      for (std::size_t j = 0; j < points.cols(); ++j)
        diffs(i - 1, j) = points(indices[i], j) - origin[j];
    return {IntVector(origin.begin(), origin.end()), saturate(diffs)};
  }

  static AffineLatticeChart through(const IntMatrix& points) {
    std::vector<std::size_t> all(points.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return through(points, all);
  }

  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return origin_.size(); }
  const IntVector& origin() const { return origin_; }
  const IntMatrix& basis() const { return basis_; }

  /// Chart coordinates of an integer point of the affine lattice.
  /// Throws DomainError when x is not on the lattice.
  IntVector coordinates(std::span<const Integer> x) const {
    if (x.size() != ambient_dim()) throw DimensionError("chart: point has wrong dimension");
    const std::size_t d = ambient_dim();
    const std::size_t k = dim();
    IntVector z(d);
    for (std::size_t j = 0; j < d; ++j) z[j] = x[j] - origin_[j];
    if (k == 0) {
      for (const auto& c : z)
        if (c != 0) throw DomainError("chart: point is off the affine lattice");
      return {};
    }
    // basis = U^-1 [I 0] V^-1, so basis^T y = z gives y = U^T (V^T z)[0:k].
    IntVector w(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) w[i] += v_(j, i) * z[j];
    for (std::size_t i = k; i < d; ++i)
      if (w[i] != 0) throw DomainError("chart: point is off the affine lattice");
    IntVector y(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) y[i] += u_(j, i) * w[j];
    return y;
  }

  IntVector coordinates(const IntVector& x) const {
    return coordinates(std::span<const Integer>(x));
  }

  /// Chart coordinates of every row of `points`, as a matrix.
  IntMatrix coordinates(const IntMatrix& points, std::span<const std::size_t> indices) const {
    IntMatrix out(indices.size(), dim());
    for (std::size_t i = 0; i < indices.size(); ++i) {
      const IntVector y = coordinates(points.row(indices[i]));
      std::copy(y.begin(), y.end(), out.row(i).begin());
    }
    return out;
  }

  IntVector point(std::span<const Integer> y) const {
    if (y.size() != dim()) throw DimensionError("chart: coordinate vector has wrong length");
    IntVector x = origin_;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < ambient_dim(); ++j) x[j] += y[i] * basis_(i, j);
    return x;
  }

  /// An integer ambient functional w with w·(basis row i) = u_i, so that
  /// w·(x - origin) = u·y on the chart.
  IntVector lift_functional(std::span<const Integer> u) const {
    if (u.size() != dim()) throw DimensionError("chart: functional has wrong length");
    const std::size_t d = ambient_dim();
    const std::size_t k = dim();
    IntVector padded(d);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) padded[i] += u_(i, j) * u[j];
    return v_ * padded;
  }

 private:
  IntVector origin_;
  IntMatrix basis_;
  IntMatrix u_;  // Smith transforms of basis_: u_ * basis_ * v_ = [I 0]
  IntMatrix v_;
};

}  // namespace defectpoly
