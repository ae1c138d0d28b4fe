#pragma once

// The alternating face-volume sums c_t(P), the Ehrhart-convolution
// polynomial f(P, t), the pyramid closed form and the defect predicate.

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "defectpoly/exact_linalg.hpp"
#include "defectpoly/lattice_geom.hpp"
#include "defectpoly/polytope.hpp"

namespace defectpoly {

enum class VolumeNormalization {
  lattice,    // lvol: unimodular simplex has volume 1
  euclidean,  // lvol / k!, the plain chart volume
};

/// How the face sums are weighted.  The default is the only correct one;
/// the alternatives exist so tests can check that a broken sign pattern or
/// volume scale is caught by the reference values.
struct EvaluationConvention {
  bool alternating_sign = true;
  VolumeNormalization volume = VolumeNormalization::lattice;
};

namespace detail {
inline int stratum_sign(std::size_t d, std::size_t k, const EvaluationConvention& conv) {
  if (!conv.alternating_sign) return 1;
  return (d - k) % 2 == 0 ? 1 : -1;
}
}  // namespace detail

/// c_t(P) = Σ_k (-1)^(d-k) (k+t)!/k! Σ_{F k-face} lvol(F), d = dim P.
inline Rational ct_invariant_under(const Polytope& p, unsigned long t,
                                   const EvaluationConvention& conv) {
  const auto& volumes = face_volumes(p);
  const std::size_t d = p.dim();
  Rational c = 0;
  for (std::size_t k = 0; k <= d; ++k) {
    Integer stratum = 0;
    for (const auto& v : volumes[k]) stratum += v;
    Rational term = stratum;
    term *= factorial(k + t);
    term /= factorial(k);
    if (conv.volume == VolumeNormalization::euclidean) term /= factorial(k);
    c += detail::stratum_sign(d, k, conv) * term;
  }
  return c;
}

inline Integer ct_invariant(const Polytope& p, unsigned long t) {
  const Rational c = ct_invariant_under(p, t, {});
  if (c.get_den() != 1) throw std::logic_error("ct_invariant: non-integral result");
  return c.get_num();
}

/// Coefficients (ascending) of
/// f(P, t) = Σ_k (-1)^(d-k) (k+1)! Σ_{F k-face} ehr(F, t) t^(d-k).
inline std::vector<Rational> f_poly_under(const Polytope& p, const EvaluationConvention& conv) {
  const auto& lattice = p.face_lattice();
  const auto& ehr = face_ehrhart(p);
  const std::size_t d = p.dim();
  std::vector<Rational> f(d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    std::vector<Rational> stratum(k + 1);
    for (std::size_t i = 0; i < lattice.faces_of_dim(k).size(); ++i) {
      const auto& coeffs = ehr[k][i].coeffs;
      for (std::size_t j = 0; j < coeffs.size(); ++j) stratum[j] += coeffs[j];
    }
    const Integer weight = detail::stratum_sign(d, k, conv) * factorial(k + 1);
    for (std::size_t j = 0; j <= k; ++j) f[j + d - k] += weight * stratum[j];
  }
  return f;
}

/// f(P, t), ascending; the last entry is the leading coefficient.
inline std::vector<Integer> f_poly(const Polytope& p) {
  const auto f = f_poly_under(p, {});
  std::vector<Integer> out;
  out.reserve(f.size());
  for (const auto& c : f) {
    if (c.get_den() != 1) throw std::logic_error("f_poly: non-integral coefficient");
    out.push_back(c.get_num());
  }
  return out;
}

/// r!·c_0(P) + (-1)^(d+1)·r!, the value of c_r on the r-fold lattice pyramid
/// over a d-dimensional P with c_0(P) = c0.
inline Integer pyramid_ct_closed_form(const Integer& c0, std::size_t d, std::size_t r) {
  if (r == 0) throw DomainError("pyramid_ct_closed_form: r must be positive");
  const Integer rf = factorial(r);
  return rf * c0 + ((d + 1) % 2 == 0 ? rf : Integer(-rf));
}

/// Smooth with c_1 = 0.
inline bool is_defect(const Polytope& p) { return is_smooth(p) && ct_invariant(p, 1) == 0; }

struct InvariantReport {
  std::size_t dim = 0;
  std::size_t ambient_dim = 0;
  std::size_t n_vertices = 0;
  std::vector<std::size_t> f_vector;
  bool is_simple = false;
  bool is_smooth = false;
  Integer c0;
  Integer c1;
  std::vector<std::pair<unsigned long, Integer>> ct;  // requested extra t values
  std::vector<Integer> f_coefficients;
  bool is_defect = false;
};

inline InvariantReport report(const Polytope& p, std::span<const unsigned long> extra_t = {}) {
  InvariantReport r;
  r.dim = p.dim();
  r.ambient_dim = p.ambient_dim();
  r.n_vertices = p.n_vertices();
  r.f_vector = p.face_lattice().f_vector();
  r.is_simple = is_simple(p);
  r.is_smooth = r.is_simple && defectpoly::is_smooth(p);
  r.c0 = ct_invariant(p, 0);
  r.c1 = ct_invariant(p, 1);
  for (auto t : extra_t) r.ct.emplace_back(t, ct_invariant(p, t));
  r.f_coefficients = f_poly(p);
  r.is_defect = r.is_smooth && r.c1 == 0;
  return r;
}

}  // namespace defectpoly
