#pragma once

#include <cmath>
#include <concepts>

#include "spdmean/spectral.hpp"
#include "spdmean/types.hpp"

namespace spdmean {

/// A metric space with weighted geodesic means: a distance d and, for each
/// t in [0, 1], the point x #_t y at parameter t on the geodesic from x to y.
/// Points are value types; instances are stateless and freely copyable.
template <typename S>
concept NpcSpace = requires(const S& s, const typename S::Point& x, const typename S::Point& y,
                            double t) {
  { s.distance(x, y) } -> std::convertible_to<double>;
  { s.geodesic(x, y, t) } -> std::convertible_to<typename S::Point>;
};

namespace detail {

inline void require_unit_interval(double t, const char* where) {
  if (!(t >= 0.0 && t <= 1.0))
    throw InvalidParameter(std::string(where) + ": t must lie in [0, 1]");
}

}  // namespace detail

/// Trace-metric distance between positive definite matrices:
/// the Euclidean norm of the log-eigenvalues of A^{-1/2} B A^{-1/2}, which is
/// similar to A^{-1} B, so the eigensolver only ever sees symmetric input.
inline double spd_distance(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "spd_distance");
  if (a == b) return 0.0;
  const Matrix s = spd_inv_sqrt(a);
  auto dec = eigh(symmetrize(s * b * s));
  detail::require_pd(dec.eigenvalues, "spd_distance");
  return dec.eigenvalues.array().log().matrix().norm();
}

/// A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2} for t in [0, 1].
inline Matrix spd_geodesic(const Matrix& a, const Matrix& b, double t) {
  detail::require_unit_interval(t, "spd_geodesic");
  require_same_shape(a, b, "spd_geodesic");
  if (t == 0.0 || a == b) return a;
  if (t == 1.0) return b;
  auto dec = eigh(a);
  detail::require_pd(dec.eigenvalues, "spd_geodesic");
  const Matrix root = detail::rebuild(dec, [](double x) { return std::sqrt(x); });
  const Matrix inv_root = detail::rebuild(dec, [](double x) { return 1.0 / std::sqrt(x); });
  const Matrix inner = spd_pow(symmetrize(inv_root * b * inv_root), t);
  return symmetrize(root * inner * root);
}

inline double euclid_distance(const Vector& x, const Vector& y) {
  require_same_shape(x, y, "euclid_distance");
  return (x - y).norm();
}

inline Vector euclid_geodesic(const Vector& x, const Vector& y, double t) {
  detail::require_unit_interval(t, "euclid_geodesic");
  require_same_shape(x, y, "euclid_geodesic");
  if (t == 0.0 || x == y) return x;
  if (t == 1.0) return y;
  return (1.0 - t) * x + t * y;
}

namespace detail {

inline void require_positive_entries(const Vector& v, const char* where) {
  if (!all_finite(v) || (v.array() <= 0.0).any())
    throw InvalidInput(std::string(where) + ": entries must be positive and finite");
}

}  // namespace detail

/// Log metric on the positive orthant, the commuting diagonal slice of the
/// SPD cone: distances and geodesics match the matrix ones on diagonals.
inline double orthant_distance(const Vector& a, const Vector& b) {
  detail::require_positive_entries(a, "orthant_distance");
  detail::require_positive_entries(b, "orthant_distance");
  require_same_shape(a, b, "orthant_distance");
  return (a.array().log() - b.array().log()).matrix().norm();
}

inline Vector orthant_geodesic(const Vector& a, const Vector& b, double t) {
  detail::require_unit_interval(t, "orthant_geodesic");
  detail::require_positive_entries(a, "orthant_geodesic");
  detail::require_positive_entries(b, "orthant_geodesic");
  require_same_shape(a, b, "orthant_geodesic");
  if (t == 0.0 || a == b) return a;
  if (t == 1.0) return b;
  return ((1.0 - t) * a.array().log() + t * b.array().log()).exp();
}

/// The cone of positive definite matrices with the trace metric.
struct SpdSpace {
  using Point = Matrix;
  double distance(const Point& a, const Point& b) const { return spd_distance(a, b); }
  Point geodesic(const Point& a, const Point& b, double t) const {
    return spd_geodesic(a, b, t);
  }
};

/// Euclidean space; its geodesics are straight lines, so the
/// semiparallelogram inequality holds with equality.
struct EuclideanSpace {
  using Point = Vector;
  double distance(const Point& x, const Point& y) const { return euclid_distance(x, y); }
  Point geodesic(const Point& x, const Point& y, double t) const {
    return euclid_geodesic(x, y, t);
  }
};

/// The positive orthant under the log metric.
struct OrthantSpace {
  using Point = Vector;
  double distance(const Point& a, const Point& b) const { return orthant_distance(a, b); }
  Point geodesic(const Point& a, const Point& b, double t) const {
    return orthant_geodesic(a, b, t);
  }
};

static_assert(NpcSpace<SpdSpace>);
static_assert(NpcSpace<EuclideanSpace>);
static_assert(NpcSpace<OrthantSpace>);

/// Signed slack of the weighted semiparallelogram inequality at (x, y, z, t):
///   (1-t) d^2(x,z) + t d^2(y,z) - t(1-t) d^2(x,y) - d^2(x #_t y, z).
/// Nonnegative (up to roundoff) in any NPC space; zero in Euclidean space.
template <NpcSpace S>
double check_semiparallelogram(const S& space, const typename S::Point& x,
                               const typename S::Point& y, const typename S::Point& z,
                               double t) {
  const double dxz = space.distance(x, z);
  const double dyz = space.distance(y, z);
  const double dxy = space.distance(x, y);
  const double dmz = space.distance(space.geodesic(x, y, t), z);
  return (1.0 - t) * dxz * dxz + t * dyz * dyz - t * (1.0 - t) * dxy * dxy - dmz * dmz;
}

}  // namespace spdmean
