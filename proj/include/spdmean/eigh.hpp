#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "spdmean/types.hpp"

namespace spdmean {

/// Spectral factorization S = Q diag(lambda) Q^T of a real symmetric matrix.
/// Eigenvalues are sorted ascending; the columns of `rotation` are the
/// matching orthonormal eigenvectors.
template <typename Scalar>
struct EigenDecompositionT {
  DenseMatrix<Scalar> rotation;
  DenseVector<Scalar> eigenvalues;

  DenseMatrix<Scalar> reconstruct() const {
    return rotation * eigenvalues.asDiagonal() * rotation.transpose();
  }
};

using EigenDecomposition = EigenDecompositionT<double>;

namespace detail {

template <typename Scalar>
Scalar off_diagonal_norm(const DenseMatrix<Scalar>& b) {
  Scalar sum = 0;
  for (Eigen::Index p = 0; p < b.rows(); ++p)
    for (Eigen::Index q = p + 1; q < b.cols(); ++q) sum += b(p, q) * b(p, q);
  return std::sqrt(Scalar(2) * sum);
}

}  // namespace detail

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// The lower triangle of `s` is authoritative; the strict upper triangle is
/// ignored. Sweeps stop when the off-diagonal Frobenius norm drops below
/// 1e-14 times the initial Frobenius norm of the input, or after 64 sweeps.
template <typename Derived>
EigenDecompositionT<typename Derived::Scalar> eigh(const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  if (s.rows() != s.cols())
    throw InvalidInput("eigh: matrix must be square");
  if (!all_finite(s)) throw InvalidInput("eigh: non-finite entry");

  const Eigen::Index m = s.rows();
  DenseMatrix<Scalar> b = DenseMatrix<Scalar>(s.derived()).template selfadjointView<Eigen::Lower>();
  DenseMatrix<Scalar> v = DenseMatrix<Scalar>::Identity(m, m);

  const Scalar stop = Scalar(1e-14) * b.norm();
  const int max_sweeps = 64;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (detail::off_diagonal_norm(b) <= stop) break;
    for (Eigen::Index p = 0; p < m - 1; ++p) {
      for (Eigen::Index q = p + 1; q < m; ++q) {
        const Scalar apq = b(p, q);
        if (apq == Scalar(0)) continue;

        // sym.schur2: pick t = tan(theta) zeroing b(p,q), |t| <= 1.
        const Scalar tau = (b(q, q) - b(p, p)) / (Scalar(2) * apq);
        Scalar t;
        if (std::abs(tau) > Scalar(1e150)) {
          t = Scalar(1) / (Scalar(2) * tau);
        } else {
          t = (tau >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
              (std::abs(tau) + std::sqrt(Scalar(1) + tau * tau));
        }
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar sn = t * c;

        const Scalar bpp = b(p, p) - t * apq;
        const Scalar bqq = b(q, q) + t * apq;
        b(p, p) = bpp;
        b(q, q) = bqq;
        b(p, q) = Scalar(0);
        b(q, p) = Scalar(0);
        for (Eigen::Index r = 0; r < m; ++r) {
          if (r == p || r == q) continue;
          const Scalar brp = b(r, p);
          const Scalar brq = b(r, q);
          b(r, p) = c * brp - sn * brq;
          b(r, q) = sn * brp + c * brq;
          b(p, r) = b(r, p);
          b(q, r) = b(r, q);
        }
        for (Eigen::Index r = 0; r < m; ++r) {
          const Scalar vrp = v(r, p);
          const Scalar vrq = v(r, q);
          v(r, p) = c * vrp - sn * vrq;
          v(r, q) = sn * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&b](Eigen::Index i, Eigen::Index j) { return b(i, i) < b(j, j); });

  EigenDecompositionT<Scalar> dec;
  dec.eigenvalues.resize(m);
  dec.rotation.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    dec.eigenvalues(i) = b(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    dec.rotation.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return dec;
}

}  // namespace spdmean
