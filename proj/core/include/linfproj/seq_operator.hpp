#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "linfproj/rat.hpp"

namespace linfproj {

struct Term {
  std::size_t index = 0;
  Rat coef;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse list of (index, coefficient), sorted by index, no zero coefficients.
using Terms = std::vector<Term>;

/// Finitely supported sequence indexed by 0, 1, 2, ... (zeros not stored).
using FinSeq = std::map<std::size_t, Rat>;

/// Sorts by index, merges duplicates and drops zeros.
Terms canonicalize(Terms terms);

/// Removes explicitly stored zeros.
FinSeq prune(FinSeq v);

/// Sup norm of a finitely supported sequence.
Rat sup_norm(const FinSeq& v);

/// Unit vector e_j.
FinSeq unit(std::size_t j);

/// A linear map on finitely supported sequences given by a row- and
/// column-finite infinite matrix. row(i) lists the inputs that output i reads;
/// col(j) lists the outputs that input j feeds. Rules must be pure.
class SeqOperator {
 public:
  using Rule = std::function<Terms(std::size_t)>;

  SeqOperator(std::string descriptor, Rule row, Rule col);

  static SeqOperator identity();
  /// out[stride * i + offset] = in[i]; every other output is zero.
  static SeqOperator spread(std::size_t stride, std::size_t offset, std::string descriptor);
  /// out[i] = in[stride * i + offset].
  static SeqOperator gather(std::size_t stride, std::size_t offset, std::string descriptor);

  [[nodiscard]] Terms row(std::size_t i) const { return canonicalize((*impl_->row)(i)); }
  [[nodiscard]] Terms col(std::size_t j) const { return canonicalize((*impl_->col)(j)); }
  [[nodiscard]] const std::string& descriptor() const { return impl_->descriptor; }

  /// Exact evaluation via the column rule.
  [[nodiscard]] FinSeq apply(const FinSeq& v) const;

  /// Same operator under another name.
  [[nodiscard]] SeqOperator renamed(std::string descriptor) const;

 private:
  struct Impl {
    std::string descriptor;
    std::shared_ptr<const Rule> row;
    std::shared_ptr<const Rule> col;
  };
  std::shared_ptr<const Impl> impl_;
};

/// a after b.
SeqOperator compose(const SeqOperator& a, const SeqOperator& b);
SeqOperator operator+(const SeqOperator& a, const SeqOperator& b);
SeqOperator operator-(const SeqOperator& a, const SeqOperator& b);
SeqOperator operator*(const Rat& s, const SeqOperator& a);

/// Free-function spelling of SeqOperator::apply.
inline FinSeq evaluate(const SeqOperator& op, const FinSeq& v) { return op.apply(v); }

struct NormWindow {
  Rat lower;                    // max absolute row sum over rows < window
  bool stabilized = false;      // row patterns in [0, window) == in [0, window/2)
  std::size_t distinct_patterns = 0;
};

/// Scans rows 0..window-1. lower is an exact lower bound for the
/// inf->inf norm and equals it when every row pattern has been seen.
/// Throws InvalidArgument for window < 2.
NormWindow operator_norm_window(const SeqOperator& op, std::size_t window);

}  // namespace linfproj
