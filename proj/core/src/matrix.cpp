#include "linfproj/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "linfproj/errors.hpp"

namespace linfproj {

Mat::Mat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("matrix expects " + std::to_string(rows_ * cols_) +
                         " entries, got " + std::to_string(entries_.size()));
  }
}

Mat::Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Rat> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionError("ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Mat(rows.size(), cols, std::move(entries));
}

Vec Mat::row_vec(std::size_t r) const {
  const auto s = row(r);
  return {s.begin(), s.end()};
}

Vec Mat::col_vec(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<Vec> Mat::to_rows() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vec(r));
  return out;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nrows,
               std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) {
    throw DimensionError("block out of range");
  }
  Mat b(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t c = 0; c < ncols; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

Mat& Mat::operator+=(const Mat& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("matrix sum shape mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("matrix difference shape mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

Mat& Mat::operator*=(const Rat& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

Mat mat_compose(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("cannot compose " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " with " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Mat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rat& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

Vec matvec(const Mat& m, std::span<const Rat> x) {
  if (x.size() != m.cols()) throw DimensionError("vector length mismatch");
  Vec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero() && !x[j].is_zero()) y[i] += m(i, j) * x[j];
    }
  }
  return y;
}

NormWitness inf_op_norm(const Mat& m) {
  NormWitness best;
  best.witness.assign(m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rat sum;
    for (const Rat& e : m.row(i)) sum += abs(e);
    if (i == 0 || sum > best.value) {
      best.value = sum;
      best.row = i;
    }
  }
  for (std::size_t j = 0; j < m.cols() && m.rows() > 0; ++j) {
    best.witness[j] = m(best.row, j).sign() < 0 ? -1 : 1;
  }
  return best;
}

Rat sup_norm(std::span<const Rat> x) {
  Rat best;
  for (const Rat& e : x) best = std::max(best, abs(e));
  return best;
}

Mat block_permutation(std::size_t num_blocks, std::size_t block_dim,
                      std::span<const std::size_t> sigma) {
  if (sigma.size() != num_blocks) {
    throw InvalidArgument("permutation length does not match block count");
  }
  std::vector<bool> seen(num_blocks, false);
  for (std::size_t s : sigma) {
    if (s >= num_blocks || seen[s]) throw InvalidArgument("not a permutation");
    seen[s] = true;
  }
  const std::size_t n = num_blocks * block_dim;
  Mat u(n, n);
  for (std::size_t j = 0; j < num_blocks; ++j)
    for (std::size_t r = 0; r < block_dim; ++r)
      u(sigma[j] * block_dim + r, j * block_dim + r) = 1;
  return u;
}

Vec flatten_blocks(const std::vector<Vec>& blocks) {
  Vec out;
  if (blocks.empty()) return out;
  const std::size_t d = blocks.front().size();
  out.reserve(d * blocks.size());
  for (const auto& b : blocks) {
    if (b.size() != d) throw DimensionError("blocks have unequal dimension");
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

namespace {

// Reduces m in place to row echelon form and returns the rank.
std::size_t echelon(Mat& m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      const Rat f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const Mat& m) {
  Mat work = m;
  return echelon(work);
}

Mat inverse(const Mat& m) {
  if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Mat a = m;
  Mat inv = Mat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw RankError("matrix is singular");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const Rat pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const Rat f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace linfproj
