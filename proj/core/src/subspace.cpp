#include "linfproj/subspace.hpp"

#include <string>
#include <utility>

#include "linfproj/errors.hpp"

namespace linfproj {

Subspace::Subspace(std::size_t ambient_dim, Mat basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (ambient_dim_ == 0) throw DimensionError("ambient dimension must be positive");
  if (basis_.cols() != ambient_dim_) {
    throw DimensionError("basis rows have length " + std::to_string(basis_.cols()) +
                         ", expected " + std::to_string(ambient_dim_));
  }
  if (basis_.rows() == 0 || basis_.rows() > ambient_dim_) {
    throw DimensionError("subspace dimension must lie in [1, ambient_dim]");
  }
  if (rank(basis_) != basis_.rows()) {
    throw RankError("basis of " + std::to_string(basis_.rows()) +
                    " rows is linearly dependent");
  }
}

Subspace Subspace::full(std::size_t n) { return Subspace(n, Mat::identity(n)); }

bool Subspace::contains(std::span<const Rat> v) const {
  if (v.size() != ambient_dim_) throw DimensionError("vector length mismatch");
  std::vector<Vec> rows = basis_.to_rows();
  rows.emplace_back(v.begin(), v.end());
  return rank(Mat::from_rows(rows)) == dim();
}

}  // namespace linfproj
