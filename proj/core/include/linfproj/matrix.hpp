#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "linfproj/rat.hpp"

namespace linfproj {

using Vec = std::vector<Rat>;

/// Dense exact matrix, read as an operator l_inf^cols -> l_inf^rows.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws DimensionError unless entries.size() == rows*cols.
  Mat(std::size_t rows, std::size_t cols, std::vector<Rat> entries);
  /// Nested-list literal; throws DimensionError on ragged rows.
  Mat(std::initializer_list<std::initializer_list<Rat>> rows);

  static Mat identity(std::size_t n);
  /// Stacks rows; throws DimensionError on ragged input.
  static Mat from_rows(const std::vector<Vec>& rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  [[nodiscard]] std::span<const Rat> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  [[nodiscard]] Vec row_vec(std::size_t r) const;
  [[nodiscard]] Vec col_vec(std::size_t c) const;
  [[nodiscard]] std::vector<Vec> to_rows() const;

  [[nodiscard]] Mat transpose() const;

  /// Sub-block starting at (r0, c0).
  [[nodiscard]] Mat block(std::size_t r0, std::size_t c0, std::size_t nrows,
                          std::size_t ncols) const;

  Mat& operator+=(const Mat& rhs);
  Mat& operator-=(const Mat& rhs);
  Mat& operator*=(const Rat& s);

  friend Mat operator+(Mat lhs, const Mat& rhs) { return lhs += rhs; }
  friend Mat operator-(Mat lhs, const Mat& rhs) { return lhs -= rhs; }
  friend Mat operator*(Mat lhs, const Rat& s) { return lhs *= s; }
  friend Mat operator*(const Rat& s, Mat rhs) { return rhs *= s; }
  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

/// Exact matrix product A*B; throws DimensionError when A.cols != B.rows.
Mat mat_compose(const Mat& a, const Mat& b);
inline Mat operator*(const Mat& a, const Mat& b) { return mat_compose(a, b); }

/// Matrix-vector product.
Vec matvec(const Mat& m, std::span<const Rat> x);

/// Exact infinity->infinity operator norm together with a sign vector on
/// which it is attained.
struct NormWitness {
  Rat value;
  std::vector<int> witness;  // entries are +1 or -1
  std::size_t row = 0;       // the maximizing row
};

/// Max over rows of the absolute row sum. The witness is the sign pattern of
/// the maximizing row (+1 where the entry is zero), so ||M w||_inf == value.
NormWitness inf_op_norm(const Mat& m);

/// Sup norm of a vector (0 for the empty vector).
Rat sup_norm(std::span<const Rat> x);

/// Block permutation U_sigma on (l_inf^d)^N flattened to l_inf^{dN}. Block j
/// of the input lands in block sigma[j] of the output, i.e.
/// U_sigma(z_0..z_{N-1}) = (z_{sigma^{-1}(0)}, ..., z_{sigma^{-1}(N-1)}).
/// sigma is 0-based; throws InvalidArgument unless it is a bijection.
Mat block_permutation(std::size_t num_blocks, std::size_t block_dim,
                      std::span<const std::size_t> sigma);

/// Concatenates equal-length blocks; throws DimensionError on ragged input.
Vec flatten_blocks(const std::vector<Vec>& blocks);

/// Rank by exact Gaussian elimination.
std::size_t rank(const Mat& m);

/// Inverse of a square matrix; throws RankError when singular.
Mat inverse(const Mat& m);

}  // namespace linfproj
