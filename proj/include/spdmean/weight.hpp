#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "spdmean/types.hpp"

namespace spdmean {

/// A positive probability vector (w_1, ..., w_n): every entry >= 1e-9 and the
/// total within 1e-12 of one. Immutable after construction.
class Weight {
 public:
  explicit Weight(Vector entries) : entries_(std::move(entries)) { validate(); }
  Weight(std::initializer_list<double> entries)
      : entries_(Eigen::Map<const Vector>(entries.begin(),
                                          static_cast<Eigen::Index>(entries.size()))) {
    validate();
  }

  static Weight uniform(Eigen::Index n) {
    if (n < 1) throw InvalidInput("Weight: need at least one entry");
    return Weight(Vector::Constant(n, 1.0 / static_cast<double>(n)));
  }

  Eigen::Index size() const { return entries_.size(); }
  double operator[](Eigen::Index i) const { return entries_(i); }
  const Vector& entries() const { return entries_; }

 private:
  void validate() const {
    if (entries_.size() < 1) throw InvalidInput("Weight: need at least one entry");
    if (!all_finite(entries_)) throw InvalidInput("Weight: non-finite entry");
    if ((entries_.array() < 1e-9).any())
      throw InvalidInput("Weight: every entry must be >= 1e-9");
    if (std::abs(entries_.sum() - 1.0) > 1e-12)
      throw InvalidInput("Weight: entries must sum to 1 within 1e-12");
  }

  Vector entries_;
};

}  // namespace spdmean
