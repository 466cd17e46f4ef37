#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spdmean/means.hpp"
#include "spdmean/random.hpp"
#include "spdmean/spaces.hpp"

namespace spdmean {

struct SolverConfig {
  double tolerance = 1e-10;  // Frobenius norm of the residual
  int max_iterations = 200;
  double step_size = 1.0;  // theta in (0, 1]

  void validate() const {
    if (!(tolerance > 0.0)) throw InvalidParameter("SolverConfig: tolerance must be > 0");
    if (max_iterations < 1) throw InvalidParameter("SolverConfig: max_iterations must be >= 1");
    if (!(step_size > 0.0 && step_size <= 1.0))
      throw InvalidParameter("SolverConfig: step_size must lie in (0, 1]");
  }
};

struct KarcherResult {
  Matrix mean;
  int iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
};

/// Weighted sum of squared distances F(z) = sum_i w_i d^2(z, x_i), the
/// functional whose unique minimizer is the weighted least squares mean.
template <NpcSpace S>
double objective(const S& space, const Weight& w, const std::vector<typename S::Point>& points,
                 const typename S::Point& z) {
  if (static_cast<std::size_t>(w.size()) != points.size())
    throw DimensionMismatch("objective: weight length differs from point count");
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = space.distance(z, points[i]);
    sum += w[static_cast<Eigen::Index>(i)] * d * d;
  }
  return sum;
}

namespace detail {

// One pass computing R(X) = sum_i w_i log(X^{-1/2} A_i X^{-1/2}) and
// F(X) = sum_i w_i ||log(X^{-1/2} A_i X^{-1/2})||_F^2; the same logs feed both.
struct ResidualObjective {
  Matrix residual;
  double objective = 0.0;
};

inline ResidualObjective residual_and_objective(const Weight& w, const SpdTuple& a,
                                                const Matrix& x) {
  const Matrix s = spd_inv_sqrt(x);
  Matrix r = Matrix::Zero(x.rows(), x.cols());
  double f = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Matrix li = spd_log(symmetrize(s * a[i] * s));
    const double wi = w[static_cast<Eigen::Index>(i)];
    r += wi * li;
    f += wi * li.squaredNorm();
  }
  return {symmetrize(r), f};
}

}  // namespace detail

/// Residual of the stationarity equation at X, in the symmetrized form
/// R(X) = sum_i w_i log(X^{-1/2} A_i X^{-1/2}); R vanishes exactly at the
/// weighted least squares mean.
inline Matrix karcher_residual(const Weight& w, const SpdTuple& a, const Matrix& x) {
  detail::require_tuple(a, "karcher_residual");
  detail::require_matching_weight(w, a.size(), "karcher_residual");
  require_same_shape(a.front(), x, "karcher_residual");
  return detail::residual_and_objective(w, a, x).residual;
}

/// Fixed-point solver for the weighted least squares mean: starting from the
/// arithmetic mean, iterate X <- X^{1/2} exp(theta R(X)) X^{1/2} until the
/// residual norm falls below the tolerance. If a step raises the objective,
/// theta is halved for that step, at most six times, and the last candidate
/// is accepted. Non-convergence is reported through the flag, not thrown.
inline KarcherResult solve_fixed_point(const Weight& w, const SpdTuple& a,
                                       const SolverConfig& cfg = {}) {
  cfg.validate();
  detail::require_tuple(a, "solve_fixed_point");
  detail::require_matching_weight(w, a.size(), "solve_fixed_point");

  KarcherResult result;
  result.mean = arithmetic_mean(w, a);
  auto state = detail::residual_and_objective(w, a, result.mean);
  result.residual_norm = state.residual.norm();

  while (result.residual_norm > cfg.tolerance && result.iterations < cfg.max_iterations) {
    auto dec = eigh(result.mean);
    detail::require_pd(dec.eigenvalues, "solve_fixed_point");
    const Matrix root = detail::rebuild(dec, [](double v) { return std::sqrt(v); });

    double theta = cfg.step_size;
    Matrix candidate;
    detail::ResidualObjective next;
    for (int halving = 0;; ++halving) {
      candidate = symmetrize(root * sym_exp(theta * state.residual) * root);
      next = detail::residual_and_objective(w, a, candidate);
      if (next.objective <= state.objective || halving == 6) break;
      theta *= 0.5;
    }
    result.mean = candidate;
    state = next;
    result.residual_norm = state.residual.norm();
    ++result.iterations;
  }
  result.converged = result.residual_norm <= cfg.tolerance;
  return result;
}

struct WalkConfig {
  std::uint64_t seed = 0;
  long steps = 10000;
  long record_every = 100;

  void validate() const {
    if (steps < 1) throw InvalidParameter("WalkConfig: steps must be >= 1");
    if (record_every < 1) throw InvalidParameter("WalkConfig: record_every must be >= 1");
  }
};

/// Recorded trajectory of one stochastic inductive-mean walk. Indices are
/// stored 0-based for every step; points (and distances to the reference,
/// when one was given) are kept at steps k with k % record_every == 0 plus
/// the final step.
template <typename P>
struct WalkTrace {
  std::vector<long> recorded_ks;
  std::vector<P> recorded_points;
  std::vector<int> sampled_indices;
  std::vector<double> distances_to_reference;

  std::size_t position_of(long k) const {
    for (std::size_t i = 0; i < recorded_ks.size(); ++i)
      if (recorded_ks[i] == k) return i;
    throw InvalidParameter("WalkTrace: step " + std::to_string(k) + " was not recorded");
  }
};

/// Index sampled from the weight by inverse CDF: the first index whose
/// cumulative weight strictly exceeds the uniform draw u in [0, 1).
inline int sample_index(const Weight& w, double u) {
  double cum = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    cum += w[i];
    if (cum > u) return static_cast<int>(i);
  }
  return static_cast<int>(w.size() - 1);  // cumulative roundoff fell short of u
}

/// The stochastic inductive-mean walk: sample i_k i.i.d. with P(i) = w_i,
/// set s_1 = x_{i_1} and s_k = s_{k-1} #_{1/k} x_{i_k}. The sequence
/// converges almost surely to the weighted least squares mean of the points.
/// Bit-reproducible for a fixed (seed, inputs).
template <NpcSpace S>
WalkTrace<typename S::Point> sturm_walk(const S& space, const Weight& w,
                                        const std::vector<typename S::Point>& points,
                                        const WalkConfig& cfg,
                                        const typename S::Point* reference = nullptr) {
  cfg.validate();
  if (points.empty()) throw EmptyInput("sturm_walk: empty point list");
  if (static_cast<std::size_t>(w.size()) != points.size())
    throw DimensionMismatch("sturm_walk: weight length differs from point count");

  WalkTrace<typename S::Point> trace;
  trace.sampled_indices.reserve(static_cast<std::size_t>(cfg.steps));
  SplitMix64 rng(cfg.seed);

  typename S::Point s = points.front();  // overwritten at k = 1
  for (long k = 1; k <= cfg.steps; ++k) {
    const int idx = sample_index(w, rng.next_double());
    trace.sampled_indices.push_back(idx);
    if (k == 1)
      s = points[static_cast<std::size_t>(idx)];
    else
      s = space.geodesic(s, points[static_cast<std::size_t>(idx)],
                         1.0 / static_cast<double>(k));
    if (k % cfg.record_every == 0 || k == cfg.steps) {
      trace.recorded_ks.push_back(k);
      trace.recorded_points.push_back(s);
      if (reference) trace.distances_to_reference.push_back(space.distance(s, *reference));
    }
  }
  return trace;
}

/// Diagonal-coupling upper bound sum_i w_i d(x_i, y_i) on the Wasserstein
/// distance between the two weighted point measures; it dominates the
/// distance between their least squares means.
template <NpcSpace S>
double wasserstein_upper_bound(const S& space, const Weight& w,
                               const std::vector<typename S::Point>& xs,
                               const std::vector<typename S::Point>& ys) {
  if (xs.size() != ys.size())
    throw DimensionMismatch("wasserstein_upper_bound: tuple lengths differ");
  if (static_cast<std::size_t>(w.size()) != xs.size())
    throw DimensionMismatch("wasserstein_upper_bound: weight length differs from tuple length");
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    sum += w[static_cast<Eigen::Index>(i)] * space.distance(xs[i], ys[i]);
  return sum;
}

}  // namespace spdmean
