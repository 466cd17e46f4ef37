#pragma once

#include <cmath>
#include <limits>

#include "spdmean/eigh.hpp"
#include "spdmean/types.hpp"

namespace spdmean {

/// Relative floor below which an eigenvalue no longer counts as positive.
template <typename Scalar>
Scalar epsilon_psd(Scalar lambda_max) {
  return Scalar(1e-12) * lambda_max;
}

namespace detail {

template <typename Scalar>
void require_pd(const DenseVector<Scalar>& lambda, const char* where) {
  const Scalar lo = lambda(0);
  const Scalar hi = lambda(lambda.size() - 1);
  if (!(hi > Scalar(0)) || !(lo > epsilon_psd(hi)))
    throw NotPositiveDefinite(std::string(where) + ": matrix is not positive definite");
}

// Q f(Lambda) Q^T, symmetrized. `f` maps one eigenvalue.
template <typename Scalar, typename Fn>
DenseMatrix<Scalar> rebuild(const EigenDecompositionT<Scalar>& dec, Fn&& f) {
  DenseVector<Scalar> mapped(dec.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = f(dec.eigenvalues(i));
  return symmetrize(dec.rotation * mapped.asDiagonal() * dec.rotation.transpose());
}

}  // namespace detail

/// Principal square root of a positive definite matrix.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> spd_sqrt(const Eigen::MatrixBase<Derived>& a) {
  auto dec = eigh(a);
  detail::require_pd(dec.eigenvalues, "spd_sqrt");
  return detail::rebuild(dec, [](auto x) { return std::sqrt(x); });
}

/// Inverse square root of a positive definite matrix.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> spd_inv_sqrt(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  auto dec = eigh(a);
  detail::require_pd(dec.eigenvalues, "spd_inv_sqrt");
  return detail::rebuild(dec, [](auto x) { return Scalar(1) / std::sqrt(x); });
}

/// Matrix logarithm of a positive definite matrix; symmetric, not necessarily
/// definite.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> spd_log(const Eigen::MatrixBase<Derived>& a) {
  auto dec = eigh(a);
  detail::require_pd(dec.eigenvalues, "spd_log");
  return detail::rebuild(dec, [](auto x) { return std::log(x); });
}

/// Real matrix power A^t of a positive definite matrix.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> spd_pow(const Eigen::MatrixBase<Derived>& a,
                                              typename Derived::Scalar t) {
  auto dec = eigh(a);
  detail::require_pd(dec.eigenvalues, "spd_pow");
  return detail::rebuild(dec, [t](auto x) { return std::pow(x, t); });
}

/// Inverse of a positive definite matrix through the spectral path, so every
/// inversion shares one eigensolver code path.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> spd_inverse(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  auto dec = eigh(a);
  detail::require_pd(dec.eigenvalues, "spd_inverse");
  return detail::rebuild(dec, [](auto x) { return Scalar(1) / x; });
}

/// exp(S) for symmetric S; the result is positive definite.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> sym_exp(const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  auto dec = eigh(s);
  const Scalar lambda_max = dec.eigenvalues(dec.eigenvalues.size() - 1);
  if (lambda_max >= std::log(std::numeric_limits<Scalar>::max()))
    throw OverflowError("sym_exp: exp of largest eigenvalue overflows");
  return detail::rebuild(dec, [](auto x) { return std::exp(x); });
}

/// log det A = sum of log eigenvalues; requires A positive definite.
template <typename Derived>
typename Derived::Scalar log_det_spd(const Eigen::MatrixBase<Derived>& a) {
  auto dec = eigh(a);
  detail::require_pd(dec.eigenvalues, "log_det_spd");
  return dec.eigenvalues.array().log().sum();
}

/// True iff the smallest eigenvalue clears the relative positivity floor.
template <typename Derived>
bool is_positive_definite(const Eigen::MatrixBase<Derived>& s) {
  auto dec = eigh(s);
  const auto lo = dec.eigenvalues(0);
  const auto hi = dec.eigenvalues(dec.eigenvalues.size() - 1);
  return hi > 0 && lo > epsilon_psd(hi);
}

/// M A M^T for invertible M, symmetrized.
template <typename DerivedM, typename DerivedA>
DenseMatrix<typename DerivedA::Scalar> congruence(const Eigen::MatrixBase<DerivedM>& m,
                                                  const Eigen::MatrixBase<DerivedA>& a) {
  using Scalar = typename DerivedA::Scalar;
  if (m.rows() != m.cols()) throw InvalidInput("congruence: M must be square");
  require_same_shape(m, a, "congruence");
  Eigen::PartialPivLU<DenseMatrix<Scalar>> lu(m.derived());
  if (std::abs(lu.determinant()) <= Scalar(1e-12))
    throw SingularMatrix("congruence: |det M| <= 1e-12");
  return symmetrize(m * a * m.transpose());
}

/// Loewner order test: true iff lambda_min(B - A) >= -slack.
template <typename DerivedA, typename DerivedB>
bool loewner_leq(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                 typename DerivedA::Scalar slack) {
  if (slack < 0) throw InvalidParameter("loewner_leq: slack must be nonnegative");
  require_same_shape(a, b, "loewner_leq");
  auto dec = eigh(symmetrize(b - a));
  return dec.eigenvalues(0) >= -slack;
}

/// Smallest eigenvalue of B - A; nonnegative iff A <= B in the Loewner order.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar loewner_margin(const Eigen::MatrixBase<DerivedA>& a,
                                         const Eigen::MatrixBase<DerivedB>& b) {
  require_same_shape(a, b, "loewner_margin");
  return eigh(symmetrize(b - a)).eigenvalues(0);
}

}  // namespace spdmean
