#pragma once

#include <cstddef>
#include <span>

#include "linfproj/matrix.hpp"

namespace linfproj {

/// A k-dimensional subspace E of l_inf^n given by k linearly independent
/// basis rows. Immutable once constructed.
class Subspace {
 public:
  /// Throws DimensionError when the basis is empty, has more rows than
  /// columns or has the wrong width, and RankError when the rows are
  /// linearly dependent.
  Subspace(std::size_t ambient_dim, Mat basis);

  /// The whole space l_inf^n with the coordinate basis.
  static Subspace full(std::size_t n);

  [[nodiscard]] std::size_t ambient_dim() const { return ambient_dim_; }
  [[nodiscard]] std::size_t dim() const { return basis_.rows(); }
  [[nodiscard]] const Mat& basis() const { return basis_; }

  /// True iff v is an exact rational combination of the basis rows.
  [[nodiscard]] bool contains(std::span<const Rat> v) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t ambient_dim_;
  Mat basis_;
};

/// Free-function spelling of Subspace::contains.
inline bool subspace_contains(const Subspace& s, std::span<const Rat> v) {
  return s.contains(v);
}

}  // namespace linfproj
