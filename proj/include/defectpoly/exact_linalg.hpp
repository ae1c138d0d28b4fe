#pragma once

// Exact linear algebra over GMP integers and rationals.
//
// Everything here is fraction-free where it matters (determinants, normal
// forms) and never touches fixed-width arithmetic.  Matrices are small
// (tens of rows), so the algorithms are the textbook ones.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace defectpoly {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense row-major matrix.  Zero rows or zero columns are allowed.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows,
                          std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }

  void append_row(std::span<const T> values) {
    if (rows_ == 0 && data_.empty()) cols_ = values.size();
    if (values.size() != cols_) throw DimensionError("row length mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (auto& x : row(i)) x = -x;
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [first, first + count) as a new matrix.
  Matrix row_block(std::size_t first, std::size_t count) const {
    Matrix m(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
      std::copy(row(first + i).begin(), row(first + i).end(), m.row(i).begin());
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, std::span<const T> x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector shape mismatch");
  std::vector<T> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  return a * std::span<const T>(x);
}

template <typename T>
T dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
  return dot<Integer>(std::span<const Integer>(a), std::span<const Integer>(b));
}

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  return r;
}

inline RatVector to_rational(std::span<const Integer> v) {
  return {v.begin(), v.end()};
}

inline Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

/// Bareiss fraction-free elimination; every division is exact.
inline Integer det(IntMatrix a) {
  if (!a.is_square()) throw DimensionError("det of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
      }
      a(i, k) = 0;
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace detail {

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    const Rational inv = 1 / a(r, c);
    for (auto& x : a.row(r)) x *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      a.add_row_multiple(i, r, Rational(-a(i, c)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(RatMatrix a) { return detail::rref(a).size(); }
inline std::size_t rank(const IntMatrix& a) { return rank(to_rational(a)); }

/// Some exact solution of A x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
inline std::optional<RatVector> solve(const RatMatrix& a, std::span<const Rational> b) {
  if (a.rows() != b.size()) throw DimensionError("solve: row count differs from rhs length");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = detail::rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

inline std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  return solve(a, std::span<const Rational>(b));
}

struct HermiteDecomposition {
  IntMatrix H;  // row-style Hermite normal form
  IntMatrix U;  // unimodular, U * A == H
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const { return pivot_columns.size(); }
};

/// Row-style Hermite normal form: pivots strictly move right, are positive,
/// and entries above each pivot lie in [0, pivot).
inline HermiteDecomposition hnf(const IntMatrix& a) {
  HermiteDecomposition out{a, IntMatrix::identity(a.rows()), {}};
  IntMatrix& h = out.H;
  IntMatrix& u = out.U;
  const std::size_t m = h.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < m; ++c) {
    bool have_pivot = false;
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == m) break;
      have_pivot = true;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
        h.add_row_multiple(i, r, Integer(-q));
        u.add_row_multiple(i, r, Integer(-q));
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!have_pivot) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (q == 0) continue;
      h.add_row_multiple(i, r, Integer(-q));
      u.add_row_multiple(i, r, Integer(-q));
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  return out;
}

struct SmithDecomposition {
  IntMatrix S;          // diagonal, d_1 | d_2 | ... , then zeros
  IntMatrix U;          // unimodular, U * A * V == S
  IntMatrix V;          // unimodular
  IntMatrix V_inverse;  // tracked alongside V
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

/// Smith normal form by repeated gcd reduction of rows and columns.
inline SmithDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithDecomposition out{a, IntMatrix::identity(m), IntMatrix::identity(n),
                         IntMatrix::identity(n), 0};
  IntMatrix& s = out.S;
  IntMatrix& u = out.U;
  IntMatrix& v = out.V;
  IntMatrix& vi = out.V_inverse;

  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    s.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
  };
  // col[dst] += f * col[src] on S and V; the inverse is row[src] -= f * row[dst].
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    s.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
    vi.add_row_multiple(src, dst, Integer(-f));
  };
  auto col_swap = [&](std::size_t a1, std::size_t b1) {
    s.swap_cols(a1, b1);
    v.swap_cols(a1, b1);
    vi.swap_rows(a1, b1);
  };
  auto row_swap = [&](std::size_t a1, std::size_t b1) {
    s.swap_rows(a1, b1);
    u.swap_rows(a1, b1);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s(i, j) != 0 && (bi == m || abs(s(i, j)) < abs(s(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) {
        out.rank = t;
        return out;
      }
      row_swap(t, bi);
      col_swap(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        row_add(i, t, Integer(-q));
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        col_add(j, t, Integer(-q));
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility chain: fold an offending row into the pivot row.
      std::size_t offender = m;
      for (std::size_t i = t + 1; i < m && offender == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            offender = i;
            break;
          }
      if (offender == m) break;
      row_add(t, offender, Integer(1));
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
    out.rank = t + 1;
  }
  return out;
}

/// Directed primitive vector: divided by the gcd, orientation preserved.
inline IntVector primitive_part(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) throw DomainError("primitive_part of the zero vector");
  IntVector out(v.begin(), v.end());
  if (g != 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

/// Undirected primitive direction: divided by the gcd, first nonzero entry positive.
inline IntVector primitive_direction(std::span<const Integer> v) {
  IntVector out = primitive_part(v);
  auto first = std::find_if(out.begin(), out.end(), [](const Integer& x) { return x != 0; });
  if (*first < 0)
    for (auto& x : out) x = -x;
  return out;
}

inline IntVector primitive_part(const IntVector& v) {
  return primitive_part(std::span<const Integer>(v));
}
inline IntVector primitive_direction(const IntVector& v) {
  return primitive_direction(std::span<const Integer>(v));
}

/// Canonical lattice basis (HNF rows) of span_Q(rows) ∩ Z^d.
inline IntMatrix saturate(const IntMatrix& vectors) {
  if (vectors.rows() == 0) return IntMatrix(0, vectors.cols());
  const SmithDecomposition smith = snf(vectors);
  const IntMatrix basis = smith.V_inverse.row_block(0, smith.rank);
  return hnf(basis).H;
}

/// Lattice basis (HNF rows) of { x in Z^n : A x = 0 }.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return IntMatrix::identity(n);
  const SmithDecomposition smith = snf(a);
  IntMatrix kernel(n - smith.rank, n);
  for (std::size_t k = smith.rank; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) kernel(k - smith.rank, i) = smith.V(i, k);
  if (kernel.rows() == 0) return kernel;
  return hnf(kernel).H;
}

/// Some integer solution of A x = b, or nullopt if none exists over Z.
inline std::optional<IntVector> solve_integer(const IntMatrix& a, std::span<const Integer> b) {
  if (a.rows() != b.size()) throw DimensionError("solve_integer: row count differs from rhs length");
  const SmithDecomposition smith = snf(a);
  const IntVector ub = smith.U * b;
  IntVector y(a.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < smith.rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), smith.S(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), smith.S(i, i).get_mpz_t());
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return smith.V * y;
}

inline std::string to_string(const Integer& x) { return x.get_str(); }
inline std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace defectpoly
