#include "linfproj/seq_operator.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "linfproj/errors.hpp"

namespace linfproj {

Terms canonicalize(Terms terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.index < y.index; });
  Terms out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().index == t.index) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
  return out;
}

FinSeq prune(FinSeq v) {
  std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
  return v;
}

Rat sup_norm(const FinSeq& v) {
  Rat best;
  for (const auto& [i, x] : v) best = std::max(best, abs(x));
  return best;
}

FinSeq unit(std::size_t j) { return FinSeq{{j, Rat(1)}}; }

SeqOperator::SeqOperator(std::string descriptor, Rule row, Rule col)
    : impl_(std::make_shared<const Impl>(
          Impl{std::move(descriptor), std::make_shared<const Rule>(std::move(row)),
               std::make_shared<const Rule>(std::move(col))})) {}

SeqOperator SeqOperator::identity() {
  auto rule = [](std::size_t i) { return Terms{{i, Rat(1)}}; };
  return SeqOperator("I", rule, rule);
}

SeqOperator SeqOperator::spread(std::size_t stride, std::size_t offset,
                                std::string descriptor) {
  if (stride == 0) throw InvalidArgument("spread stride must be positive");
  return SeqOperator(
      std::move(descriptor),
      [stride, offset](std::size_t i) {
        return i >= offset && (i - offset) % stride == 0 ? Terms{{(i - offset) / stride, Rat(1)}}
                                                         : Terms{};
      },
      [stride, offset](std::size_t j) { return Terms{{stride * j + offset, Rat(1)}}; });
}

SeqOperator SeqOperator::gather(std::size_t stride, std::size_t offset,
                                std::string descriptor) {
  if (stride == 0) throw InvalidArgument("gather stride must be positive");
  return SeqOperator(
      std::move(descriptor),
      [stride, offset](std::size_t i) { return Terms{{stride * i + offset, Rat(1)}}; },
      [stride, offset](std::size_t j) {
        return j >= offset && (j - offset) % stride == 0 ? Terms{{(j - offset) / stride, Rat(1)}}
                                                         : Terms{};
      });
}

FinSeq SeqOperator::apply(const FinSeq& v) const {
  FinSeq out;
  for (const auto& [j, x] : v) {
    if (x.is_zero()) continue;
    for (const Term& t : col(j)) out[t.index] += x * t.coef;
  }
  return prune(std::move(out));
}

SeqOperator SeqOperator::renamed(std::string descriptor) const {
  SeqOperator copy = *this;
  copy.impl_ = std::make_shared<const Impl>(
      Impl{std::move(descriptor), impl_->row, impl_->col});
  return copy;
}

namespace {

// (outer o inner) where both are given by the same-kind rule: the terms of
// outer at i are expanded through inner.
Terms chain(const SeqOperator::Rule& first, const SeqOperator::Rule& second,
            std::size_t i) {
  Terms out;
  for (const Term& t : canonicalize(first(i))) {
    for (Term u : canonicalize(second(t.index))) {
      u.coef *= t.coef;
      out.push_back(std::move(u));
    }
  }
  return out;
}

std::string wrap(const std::string& d) {
  return d.find_first_of("+-") == std::string::npos ? d : "(" + d + ")";
}

}  // namespace

SeqOperator compose(const SeqOperator& a, const SeqOperator& b) {
  const SeqOperator::Rule arow = [a](std::size_t i) { return a.row(i); };
  const SeqOperator::Rule brow = [b](std::size_t i) { return b.row(i); };
  const SeqOperator::Rule acol = [a](std::size_t j) { return a.col(j); };
  const SeqOperator::Rule bcol = [b](std::size_t j) { return b.col(j); };
  return SeqOperator(
      wrap(a.descriptor()) + "∘" + wrap(b.descriptor()),
      [arow, brow](std::size_t i) { return chain(arow, brow, i); },
      [acol, bcol](std::size_t j) { return chain(bcol, acol, j); });
}

SeqOperator operator+(const SeqOperator& a, const SeqOperator& b) {
  auto merge = [](Terms x, const Terms& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  return SeqOperator(
      a.descriptor() + " + " + b.descriptor(),
      [a, b, merge](std::size_t i) { return merge(a.row(i), b.row(i)); },
      [a, b, merge](std::size_t j) { return merge(a.col(j), b.col(j)); });
}

SeqOperator operator*(const Rat& s, const SeqOperator& a) {
  auto scale = [s](Terms t) {
    for (auto& x : t) x.coef *= s;
    return t;
  };
  return SeqOperator(
      s.to_string() + "·" + wrap(a.descriptor()),
      [a, scale](std::size_t i) { return scale(a.row(i)); },
      [a, scale](std::size_t j) { return scale(a.col(j)); });
}

SeqOperator operator-(const SeqOperator& a, const SeqOperator& b) {
  return (a + Rat(-1) * b).renamed(a.descriptor() + " - " + b.descriptor());
}

NormWindow operator_norm_window(const SeqOperator& op, std::size_t window) {
  if (window < 2) throw InvalidArgument("window must be at least 2");
  NormWindow res;
  std::set<std::vector<Rat>> first_half;
  std::set<std::vector<Rat>> all;
  for (std::size_t i = 0; i < window; ++i) {
    std::vector<Rat> pattern;
    Rat sum;
    for (const Term& t : op.row(i)) {
      sum += abs(t.coef);
      pattern.push_back(t.coef);
    }
    std::sort(pattern.begin(), pattern.end());
    res.lower = std::max(res.lower, sum);
    if (i < window / 2) first_half.insert(pattern);
    all.insert(std::move(pattern));
  }
  res.distinct_patterns = all.size();
  res.stabilized = all == first_half;
  return res;
}

}  // namespace linfproj
