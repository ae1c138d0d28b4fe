#pragma once

#include <span>
#include <string>
#include <vector>

#include "defectpoly/exact_linalg.hpp"

namespace defectpoly {

/// Univariate polynomial with exact rational coefficients, ascending degree.
struct Polynomial {
  std::vector<Rational> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  Rational operator()(const Rational& t) const {
    Rational value = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) value = value * t + *it;
    return value;
  }

  bool has_integer_coefficients() const {
    for (const auto& c : coeffs)
      if (c.get_den() != 1) return false;
    return true;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// The unique polynomial of degree < values.size() through (i, values[i]),
/// i = 0, 1, ...  Newton divided differences, then expanded.
inline Polynomial interpolate_at_naturals(std::span<const Rational> values) {
  const std::size_t n = values.size();
  std::vector<Rational> diff(values.begin(), values.end());
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      diff[i] = (diff[i] - diff[i - 1]) / Rational(static_cast<long>(level));

  // Horner on the Newton basis: p = d0 + (t-0)(d1 + (t-1)(d2 + ...)).
  std::vector<Rational> p;
  for (std::size_t i = n; i-- > 0;) {
    // p <- p * (t - i) + diff[i]
    std::vector<Rational> next(p.size() + 1);
    for (std::size_t j = 0; j < p.size(); ++j) {
      next[j + 1] += p[j];
      next[j] -= p[j] * Rational(static_cast<long>(i));
    }
    next[0] += diff[i];
    p = std::move(next);
  }
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return {p};
}

inline Polynomial interpolate_at_naturals(std::span<const Integer> values) {
  const RatVector v(values.begin(), values.end());
  return interpolate_at_naturals(std::span<const Rational>(v));
}

inline std::string to_string(const Polynomial& p) {
  std::string out;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (i) out += ' ';
    out += p.coeffs[i].get_str();
  }
  return out;
}

}  // namespace defectpoly
