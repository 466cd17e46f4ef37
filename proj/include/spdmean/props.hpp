#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "spdmean/karcher.hpp"
#include "spdmean/means.hpp"
#include "spdmean/random.hpp"

namespace spdmean {

/// Outcome of one randomized property check. `worst_slack` is the largest
/// violation measure observed over all trials (negative means every trial
/// held the property with margin); a trial fails when its violation exceeds
/// the check's tolerance, and the report passes iff no trial failed.
struct TrialReport {
  std::string property;
  int trials = 0;
  int failures = 0;
  double worst_slack = -std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  std::string dims;  // instance sizes exercised; diagnostic only
  bool pass = false;

  /// Stable serialization: property,trials,failures,worst_slack,seed,pass
  std::string to_line() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.17g,%llu,%s", property.c_str(), trials,
                  failures, worst_slack, static_cast<unsigned long long>(seed),
                  pass ? "true" : "false");
    return buf;
  }
};

namespace detail {

class ViolationTracker {
 public:
  explicit ViolationTracker(double tolerance) : tolerance_(tolerance) {}

  void add(double violation) {
    ++trials_;
    if (violation > tolerance_) ++failures_;
    worst_ = std::max(worst_, violation);
  }

  TrialReport report(std::string property, std::uint64_t seed, std::string dims) const {
    TrialReport r;
    r.property = std::move(property);
    r.trials = trials_;
    r.failures = failures_;
    r.worst_slack = worst_;
    r.seed = seed;
    r.dims = std::move(dims);
    r.pass = failures_ == 0;
    return r;
  }

 private:
  double tolerance_;
  int trials_ = 0;
  int failures_ = 0;
  double worst_ = -std::numeric_limits<double>::infinity();
};

inline Weight random_weight(int n, SplitMix64& rng) {
  Vector u(n);
  for (int i = 0; i < n; ++i) u(i) = 0.1 + rng.next_double();
  return Weight(Vector(u / u.sum()));
}

inline int pick(const std::vector<int>& choices, SplitMix64& rng) {
  return choices[static_cast<std::size_t>(rng.next_u64() % choices.size())];
}

struct Instance {
  Weight w;
  SpdTuple a;
};

inline Instance draw_instance(SplitMix64& rng, const std::vector<int>& dims,
                              const std::vector<int>& n_range, double condition_cap) {
  const int m = pick(dims, rng);
  const int n = pick(n_range, rng);
  Instance inst{random_weight(n, rng), {}};
  inst.a.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) inst.a.push_back(random_spd(m, condition_cap, rng));
  return inst;
}

inline SpdTuple dominating_tuple(const SpdTuple& a, SplitMix64& rng) {
  SpdTuple b;
  b.reserve(a.size());
  for (const Matrix& ai : a) {
    const Matrix g = 0.5 * random_matrix(ai.rows(), ai.cols(), rng);
    b.push_back(symmetrize(ai + g.transpose() * g));
  }
  return b;
}

inline std::string dims_label(const std::vector<int>& dims, const std::vector<int>& n_range) {
  std::string s = "m=";
  for (std::size_t i = 0; i < dims.size(); ++i)
    s += (i ? "|" : "") + std::to_string(dims[i]);
  s += " n=";
  for (std::size_t i = 0; i < n_range.size(); ++i)
    s += (i ? "|" : "") + std::to_string(n_range[i]);
  return s;
}

inline void require_trials(int trials) {
  if (trials < 1) throw InvalidParameter("property check: trials must be >= 1");
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

/// Monotonicity of the least squares mean: A_i <= B_i for all i implies
/// G(w;A) <= G(w;B). Dominating tuples are built as B_i = A_i + G_i^T G_i.
inline TrialReport check_monotonicity(int trials, const std::vector<int>& dims,
                                      const std::vector<int>& n_range, std::uint64_t seed,
                                      double tolerance = 1e-8, double condition_cap = 100.0) {
  detail::require_trials(trials);
  detail::ViolationTracker tracker(tolerance);
  for (int k = 0; k < trials; ++k) {
    SplitMix64 rng = stream(seed, static_cast<std::uint64_t>(k));
    auto inst = detail::draw_instance(rng, dims, n_range, condition_cap);
    const SpdTuple b = detail::dominating_tuple(inst.a, rng);
    const Matrix ga = solve_fixed_point(inst.w, inst.a).mean;
    const Matrix gb = solve_fixed_point(inst.w, b).mean;
    tracker.add(-loewner_margin(ga, gb));
  }
  return tracker.report("monotonicity", seed, detail::dims_label(dims, n_range));
}

/// Joint concavity: t G(A) + (1-t) G(B) <= G(tA + (1-t)B).
inline TrialReport check_concavity(int trials, const std::vector<int>& dims,
                                   const std::vector<int>& n_range, std::uint64_t seed,
                                   double tolerance = 1e-8, double condition_cap = 100.0) {
  detail::require_trials(trials);
  detail::ViolationTracker tracker(tolerance);
  for (int k = 0; k < trials; ++k) {
    SplitMix64 rng = stream(seed, static_cast<std::uint64_t>(k));
    auto inst = detail::draw_instance(rng, dims, n_range, condition_cap);
    SpdTuple b;
    for (const Matrix& ai : inst.a)
      b.push_back(random_spd(ai.rows(), condition_cap, rng));
    const double t = rng.next_double();
    SpdTuple mixed;
    for (std::size_t i = 0; i < inst.a.size(); ++i)
      mixed.push_back(symmetrize(t * inst.a[i] + (1.0 - t) * b[i]));
    const Matrix lhs = t * solve_fixed_point(inst.w, inst.a).mean +
                       (1.0 - t) * solve_fixed_point(inst.w, b).mean;
    const Matrix rhs = solve_fixed_point(inst.w, mixed).mean;
    tracker.add(-loewner_margin(symmetrize(lhs), rhs));
  }
  return tracker.report("concavity", seed, detail::dims_label(dims, n_range));
}

/// AGH sandwich: harmonic <= G <= arithmetic in the Loewner order.
inline TrialReport check_agh(int trials, const std::vector<int>& dims,
                             const std::vector<int>& n_range, std::uint64_t seed,
                             double tolerance = 1e-8, double condition_cap = 100.0) {
  detail::require_trials(trials);
  detail::ViolationTracker tracker(tolerance);
  for (int k = 0; k < trials; ++k) {
    SplitMix64 rng = stream(seed, static_cast<std::uint64_t>(k));
    auto inst = detail::draw_instance(rng, dims, n_range, condition_cap);
    const Matrix g = solve_fixed_point(inst.w, inst.a).mean;
    const double lower = -loewner_margin(harmonic_mean(inst.w, inst.a), g);
    const double upper = -loewner_margin(g, arithmetic_mean(inst.w, inst.a));
    tracker.add(std::max(lower, upper));
  }
  return tracker.report("agh", seed, detail::dims_label(dims, n_range));
}

/// Non-expansiveness: d(G(A), G(B)) <= sum_i w_i d(A_i, B_i).
inline TrialReport check_nonexpansive(int trials, const std::vector<int>& dims,
                                      const std::vector<int>& n_range, std::uint64_t seed,
                                      double tolerance = 1e-8, double condition_cap = 100.0) {
  detail::require_trials(trials);
  detail::ViolationTracker tracker(tolerance);
  const SpdSpace space;
  for (int k = 0; k < trials; ++k) {
    SplitMix64 rng = stream(seed, static_cast<std::uint64_t>(k));
    auto inst = detail::draw_instance(rng, dims, n_range, condition_cap);
    SpdTuple b;
    for (const Matrix& ai : inst.a)
      b.push_back(random_spd(ai.rows(), condition_cap, rng));
    const Matrix ga = solve_fixed_point(inst.w, inst.a).mean;
    const Matrix gb = solve_fixed_point(inst.w, b).mean;
    tracker.add(spd_distance(ga, gb) - wasserstein_upper_bound(space, inst.w, inst.a, b));
  }
  return tracker.report("nonexpansive", seed, detail::dims_label(dims, n_range));
}

namespace detail {

// Commuting tuple A_i = Q^T D_i Q sharing one rotation, plus the closed-form
// weighted geometric mean Q^T (prod D_i^{w_i}) Q.
inline double axiom_p1_violation(SplitMix64& rng, const std::vector<int>& dims,
                                 const std::vector<int>& n_range) {
  const int m = pick(dims, rng);
  const int n = pick(n_range, rng);
  const Weight w = random_weight(n, rng);
  const Matrix q = random_orthogonal(m, rng);
  SpdTuple a;
  Vector log_closed = Vector::Zero(m);
  for (int i = 0; i < n; ++i) {
    Vector d(m);
    for (int j = 0; j < m; ++j) d(j) = std::exp(2.0 * rng.next_double() - 1.0);
    a.push_back(symmetrize(q.transpose() * d.asDiagonal() * q));
    log_closed += w[i] * d.array().log().matrix();
  }
  const Matrix closed =
      symmetrize(q.transpose() * log_closed.array().exp().matrix().asDiagonal() * q);
  return spd_distance(solve_fixed_point(w, a).mean, closed);
}

inline double axiom_p2_violation(SplitMix64& rng, const std::vector<int>& dims,
                                 const std::vector<int>& n_range) {
  auto inst = draw_instance(rng, dims, n_range, 100.0);
  SpdTuple scaled;
  double log_factor = 0.0;
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    const double ai = std::exp(2.0 * rng.next_double() - 1.0);
    scaled.push_back(Matrix(ai * inst.a[i]));
    log_factor += inst.w[static_cast<Eigen::Index>(i)] * std::log(ai);
  }
  const Matrix expected = std::exp(log_factor) * solve_fixed_point(inst.w, inst.a).mean;
  return spd_distance(solve_fixed_point(inst.w, scaled).mean, Matrix(expected));
}

inline double axiom_p3_violation(SplitMix64& rng, const std::vector<int>& dims,
                                 const std::vector<int>& n_range) {
  auto inst = draw_instance(rng, dims, n_range, 100.0);
  const std::size_t n = inst.a.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n - 1; i > 0; --i)  // Fisher-Yates on the SplitMix64 stream
    std::swap(perm[i], perm[rng.next_u64() % (i + 1)]);
  Vector wp(static_cast<Eigen::Index>(n));
  SpdTuple ap;
  for (std::size_t i = 0; i < n; ++i) {
    wp(static_cast<Eigen::Index>(i)) = inst.w[static_cast<Eigen::Index>(perm[i])];
    ap.push_back(inst.a[perm[i]]);
  }
  return spd_distance(solve_fixed_point(Weight(wp), ap).mean,
                      solve_fixed_point(inst.w, inst.a).mean);
}

// Continuity through the quantitative route: perturb each A_i a trace-metric
// distance of exactly 1e-3 and check the non-expansive bound on the means.
inline double axiom_p5_violation(SplitMix64& rng, const std::vector<int>& dims,
                                 const std::vector<int>& n_range) {
  auto inst = draw_instance(rng, dims, n_range, 100.0);
  const SpdSpace space;
  SpdTuple b;
  for (const Matrix& ai : inst.a) {
    Matrix h = symmetrize(random_matrix(ai.rows(), ai.cols(), rng));
    h *= 1e-3 / h.norm();
    const Matrix root = spd_sqrt(ai);
    b.push_back(symmetrize(root * sym_exp(h) * root));
  }
  const Matrix ga = solve_fixed_point(inst.w, inst.a).mean;
  const Matrix gb = solve_fixed_point(inst.w, b).mean;
  return spd_distance(ga, gb) - wasserstein_upper_bound(space, inst.w, inst.a, b);
}

inline double axiom_p6_violation(SplitMix64& rng, const std::vector<int>& dims,
                                 const std::vector<int>& n_range) {
  auto inst = draw_instance(rng, dims, n_range, 100.0);
  const Eigen::Index m = inst.a.front().rows();
  Matrix mtx = random_matrix(m, m, rng);
  while (std::abs(Eigen::PartialPivLU<Matrix>(mtx).determinant()) <= 1e-6)
    mtx = random_matrix(m, m, rng);
  SpdTuple conj;
  for (const Matrix& ai : inst.a) conj.push_back(congruence(mtx, ai));
  return spd_distance(solve_fixed_point(inst.w, conj).mean,
                      congruence(mtx, solve_fixed_point(inst.w, inst.a).mean));
}

inline double axiom_p8_violation(SplitMix64& rng, const std::vector<int>& dims,
                                 const std::vector<int>& n_range) {
  auto inst = draw_instance(rng, dims, n_range, 100.0);
  SpdTuple inverted;
  for (const Matrix& ai : inst.a) inverted.push_back(spd_inverse(ai));
  return spd_distance(spd_inverse(solve_fixed_point(inst.w, inverted).mean),
                      solve_fixed_point(inst.w, inst.a).mean);
}

inline double axiom_p9_violation(SplitMix64& rng, const std::vector<int>& dims,
                                 const std::vector<int>& n_range) {
  auto inst = draw_instance(rng, dims, n_range, 100.0);
  double log_det_inputs = 0.0;
  for (std::size_t i = 0; i < inst.a.size(); ++i)
    log_det_inputs += inst.w[static_cast<Eigen::Index>(i)] * log_det_spd(inst.a[i]);
  return std::abs(log_det_spd(solve_fixed_point(inst.w, inst.a).mean) - log_det_inputs);
}

template <typename Fn>
TrialReport run_axiom(const char* id, int trials, const std::vector<int>& dims,
                      const std::vector<int>& n_range, std::uint64_t seed, double tolerance,
                      Fn&& violation) {
  ViolationTracker tracker(tolerance);
  for (int k = 0; k < trials; ++k) {
    SplitMix64 rng = stream(seed, static_cast<std::uint64_t>(k));
    tracker.add(violation(rng, dims, n_range));
  }
  return tracker.report(id, seed, dims_label(dims, n_range));
}

}  // namespace detail

/// The ten weighted-geometric-mean axioms, one report per axiom. P4, P7 and
/// P10 delegate to the dedicated monotonicity/concavity/AGH checks; P5 is
/// certified through the stronger quantitative non-expansive bound.
inline std::vector<TrialReport> check_axioms(int trials, const std::vector<int>& dims,
                                             const std::vector<int>& n_range,
                                             std::uint64_t seed) {
  detail::require_trials(trials);
  std::vector<TrialReport> reports;
  reports.push_back(
      detail::run_axiom("P1", trials, dims, n_range, seed, 1e-8, detail::axiom_p1_violation));
  reports.push_back(
      detail::run_axiom("P2", trials, dims, n_range, seed, 1e-8, detail::axiom_p2_violation));
  reports.push_back(
      detail::run_axiom("P3", trials, dims, n_range, seed, 1e-8, detail::axiom_p3_violation));
  TrialReport p4 = check_monotonicity(trials, dims, n_range, seed);
  p4.property = "P4";
  reports.push_back(p4);
  reports.push_back(
      detail::run_axiom("P5", trials, dims, n_range, seed, 1e-8, detail::axiom_p5_violation));
  reports.push_back(
      detail::run_axiom("P6", trials, dims, n_range, seed, 1e-7, detail::axiom_p6_violation));
  TrialReport p7 = check_concavity(trials, dims, n_range, seed);
  p7.property = "P7";
  reports.push_back(p7);
  reports.push_back(
      detail::run_axiom("P8", trials, dims, n_range, seed, 1e-7, detail::axiom_p8_violation));
  reports.push_back(
      detail::run_axiom("P9", trials, dims, n_range, seed, 1e-8, detail::axiom_p9_violation));
  TrialReport p10 = check_agh(trials, dims, n_range, seed);
  p10.property = "P10";
  reports.push_back(p10);
  return reports;
}

/// One walk-convergence test instance: weighted points plus the
/// deterministically computed reference mean to measure against.
template <NpcSpace S>
struct WalkInstance {
  Weight w;
  std::vector<typename S::Point> points;
  typename S::Point reference;
};

/// Convergence of the stochastic walk on each instance: the median distance
/// to the reference mean at the final step must be at most `decay_factor`
/// times the median at step 100, and every terminal distance at most
/// `diameter_factor` times the instance diameter.
template <NpcSpace S>
TrialReport check_walk_convergence(const S& space, const std::vector<WalkInstance<S>>& instances,
                                   long steps, int repeats, std::uint64_t seed,
                                   double decay_factor = 0.25, double diameter_factor = 0.1) {
  if (instances.empty()) throw EmptyInput("check_walk_convergence: no instances");
  if (repeats < 1) throw InvalidParameter("check_walk_convergence: repeats must be >= 1");
  if (steps < 100) throw InvalidParameter("check_walk_convergence: need steps >= 100");

  detail::ViolationTracker tracker(0.0);
  std::string dims;
  for (const auto& inst : instances) {
    double diameter = 0.0;
    for (std::size_t i = 0; i < inst.points.size(); ++i)
      for (std::size_t j = i + 1; j < inst.points.size(); ++j)
        diameter = std::max(diameter, space.distance(inst.points[i], inst.points[j]));

    std::vector<double> early, terminal;
    for (int r = 0; r < repeats; ++r) {
      WalkConfig cfg;
      cfg.seed = seed ^ static_cast<std::uint64_t>(r);
      cfg.steps = steps;
      cfg.record_every = 100;
      const auto trace = sturm_walk(space, inst.w, inst.points, cfg, &inst.reference);
      early.push_back(trace.distances_to_reference[trace.position_of(100)]);
      terminal.push_back(trace.distances_to_reference.back());
    }
    const double median_ratio_excess =
        detail::median(terminal) - decay_factor * detail::median(early);
    const double diameter_excess =
        *std::max_element(terminal.begin(), terminal.end()) - diameter_factor * diameter;
    tracker.add(std::max(median_ratio_excess, diameter_excess));
    dims += (dims.empty() ? "" : ";") + std::string("n=") + std::to_string(inst.points.size());
  }
  return tracker.report("walk", seed, dims);
}

}  // namespace spdmean
