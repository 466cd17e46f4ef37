#pragma once

#include <vector>

#include "spdmean/spaces.hpp"
#include "spdmean/spectral.hpp"
#include "spdmean/weight.hpp"

namespace spdmean {

/// An ordered, nonempty list of same-dimension SPD matrices.
using SpdTuple = std::vector<Matrix>;

namespace detail {

inline void require_tuple(const SpdTuple& a, const char* where) {
  if (a.empty()) throw EmptyInput(std::string(where) + ": empty tuple");
  for (const Matrix& m : a) require_same_shape(a.front(), m, where);
}

inline void require_matching_weight(const Weight& w, std::size_t n, const char* where) {
  if (static_cast<std::size_t>(w.size()) != n)
    throw DimensionMismatch(std::string(where) + ": weight length differs from tuple length");
}

}  // namespace detail

/// Inductive mean S_k: fold the points through geodesics, moving from the
/// running value toward the k-th point a fraction 1/k of the way. S_1 is the
/// point itself and S_2 the midpoint. Order-dependent by construction.
template <NpcSpace S>
typename S::Point inductive_mean(const S& space, const std::vector<typename S::Point>& points) {
  if (points.empty()) throw EmptyInput("inductive_mean: empty point list");
  typename S::Point s = points.front();
  for (std::size_t k = 2; k <= points.size(); ++k)
    s = space.geodesic(s, points[k - 1], 1.0 / static_cast<double>(k));
  return s;
}

/// Weighted arithmetic mean sum_i w_i A_i.
inline Matrix arithmetic_mean(const Weight& w, const SpdTuple& a) {
  detail::require_tuple(a, "arithmetic_mean");
  detail::require_matching_weight(w, a.size(), "arithmetic_mean");
  Matrix sum = Matrix::Zero(a.front().rows(), a.front().cols());
  for (std::size_t i = 0; i < a.size(); ++i) sum += w[static_cast<Eigen::Index>(i)] * a[i];
  return symmetrize(sum);
}

/// Weighted harmonic mean (sum_i w_i A_i^{-1})^{-1}, inverses through the
/// spectral path.
inline Matrix harmonic_mean(const Weight& w, const SpdTuple& a) {
  detail::require_tuple(a, "harmonic_mean");
  detail::require_matching_weight(w, a.size(), "harmonic_mean");
  Matrix sum = Matrix::Zero(a.front().rows(), a.front().cols());
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += w[static_cast<Eigen::Index>(i)] * spd_inverse(a[i]);
  return spd_inverse(symmetrize(sum));
}

/// Two-variable weighted geometric mean with weights (1-t, t); the geodesic
/// point A #_t B.
inline Matrix two_var_weighted_mean(const Matrix& a, const Matrix& b, double t) {
  return spd_geodesic(a, b, t);
}

}  // namespace spdmean
