#pragma once

#include <cmath>
#include <cstdint>

#include "spdmean/types.hpp"

namespace spdmean {

/// SplitMix64: 64-bit shift/multiply generator (Steele, Lea, Vigna).
/// Chosen over std::mt19937 + distributions because its output stream is
/// identical on every platform, which the reproducibility contracts require.
/// Parallel work derives independent streams as SplitMix64(seed ^ index).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 significant bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate by Box-Muller; consumes two uniforms.
  double next_normal() {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
};

/// Stream for trial `index` under suite seed `seed`.
inline SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(seed ^ index);
}

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, SplitMix64& rng) {
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.next_normal();
  return g;
}

/// Orthogonal factor of the QR decomposition of a Gaussian matrix.
inline Matrix random_orthogonal(Eigen::Index m, SplitMix64& rng) {
  Matrix g = random_matrix(m, m, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ();
}

/// Random SPD matrix Q^T D Q with eigenvalues log-uniform in
/// [1/sqrt(kappa), sqrt(kappa)], so the condition number is at most kappa.
inline Matrix random_spd(Eigen::Index m, double condition_cap, SplitMix64& rng) {
  if (m < 1) throw InvalidParameter("random_spd: dimension must be >= 1");
  if (condition_cap < 1.0) throw InvalidParameter("random_spd: condition cap must be >= 1");
  const Matrix q = random_orthogonal(m, rng);
  const double half_span = 0.5 * std::log(condition_cap);
  Vector lambda(m);
  for (Eigen::Index i = 0; i < m; ++i)
    lambda(i) = std::exp(rng.next_double() * 2.0 * half_span - half_span);
  return symmetrize(q.transpose() * lambda.asDiagonal() * q);
}

/// Seed-taking overload; deterministic in (m, kappa, seed).
inline Matrix random_spd(Eigen::Index m, double condition_cap, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return random_spd(m, condition_cap, rng);
}

}  // namespace spdmean
