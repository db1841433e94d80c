#include "linfproj/simplex.hpp"

#include <gmpxx.h>

#include <limits>
#include <optional>

#include "linfproj/errors.hpp"

namespace linfproj {

std::size_t LinearProgram::add_variable(bool free) {
  free_.push_back(free);
  objective_.emplace_back();
  return free_.size() - 1;
}

void LinearProgram::add_constraint(LinearConstraint c) {
  for (const auto& [var, coef] : c.terms) {
    if (var >= free_.size()) throw InvalidArgument("constraint uses unknown variable");
  }
  constraints_.push_back(std::move(c));
}

void LinearProgram::set_objective_coefficient(std::size_t var, Rat coef) {
  if (var >= free_.size()) throw InvalidArgument("objective uses unknown variable");
  objective_[var] = std::move(coef);
}

std::size_t LinearProgram::count(Sense sense) const {
  std::size_t n = 0;
  for (const auto& c : constraints_) n += c.sense == sense ? 1 : 0;
  return n;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau in canonical form: every row has exactly one basic column
// with coefficient 1, and the cost row holds reduced costs. The last column of
// each row is the right-hand side; the cost row stores -z there.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), a_(rows, std::vector<mpq_class>(cols + 1)), cost_(cols + 1),
        basis_(rows, kNone), excluded_(cols, false) {}

  std::vector<mpq_class>& row(std::size_t i) { return a_[i]; }
  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<bool>& excluded() { return excluded_; }
  const mpq_class& rhs(std::size_t i) const { return a_[i][cols_]; }
  std::size_t pivots() const { return pivots_; }

  // Reduced costs for cost vector c (indexed by column).
  void price(const std::vector<mpq_class>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) cost_[j] = j < cols_ ? c[j] : 0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const mpq_class& cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(a_[i][j]) != 0) cost_[j] -= cb * a_[i][j];
      }
    }
  }

  mpq_class objective_value() const { return -cost_[cols_]; }

  // Runs Bland's-rule iterations to optimality. Returns false if unbounded.
  bool optimize() {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!excluded_[j] && sgn(cost_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;

      std::size_t leave = kNone;
      mpq_class best_ratio;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (sgn(a_[i][enter]) <= 0) continue;
        mpq_class ratio = a_[i][cols_] / a_[i][enter];
        if (leave == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    ++pivots_;
    std::vector<mpq_class>& pr = a_[r];
    const mpq_class inv = 1 / pr[e];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(pr[j]) != 0) {
        pr[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<mpq_class>& target) {
      if (sgn(target[e]) == 0) return;
      const mpq_class f = target[e];
      for (std::size_t j : nz) target[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i != r) eliminate(a_[i]);
    }
    eliminate(cost_);
    basis_[r] = e;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<mpq_class>> a_;
  std::vector<mpq_class> cost_;
  std::vector<std::size_t> basis_;
  std::vector<bool> excluded_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpSolution solve_exact(const LinearProgram& lp) {
  // Column layout: structural columns (free variables split into a positive
  // and a negative part), then one slack per inequality, then artificials.
  const std::size_t nvar = lp.num_variables();
  std::vector<std::size_t> pos_col(nvar);
  std::vector<std::size_t> neg_col(nvar, kNone);
  std::size_t ncols = 0;
  for (std::size_t v = 0; v < nvar; ++v) {
    pos_col[v] = ncols++;
    if (lp.is_free(v)) neg_col[v] = ncols++;
  }
  const std::size_t structural = ncols;

  const auto& cons = lp.constraints();
  const std::size_t m = cons.size();
  std::vector<std::size_t> slack_col(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    if (cons[i].sense != Sense::kEqual) slack_col[i] = ncols++;
  }

  // Rows whose slack cannot serve as the initial basic variable get an
  // artificial column.
  std::vector<bool> negate(m, false);
  std::vector<std::size_t> art_col(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    negate[i] = cons[i].rhs.sign() < 0;
    const int slack_sign = cons[i].sense == Sense::kLessEq     ? 1
                           : cons[i].sense == Sense::kGreaterEq ? -1
                                                                : 0;
    const int effective = negate[i] ? -slack_sign : slack_sign;
    if (effective != 1) art_col[i] = ncols++;
  }

  Tableau t(m, ncols);
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = t.row(i);
    const int s = negate[i] ? -1 : 1;
    for (const auto& [var, coef] : cons[i].terms) {
      row[pos_col[var]] += s * coef.mpq();
      if (neg_col[var] != kNone) row[neg_col[var]] -= s * coef.mpq();
    }
    if (slack_col[i] != kNone) {
      row[slack_col[i]] = cons[i].sense == Sense::kLessEq ? s : -s;
    }
    row[ncols] = s * cons[i].rhs.mpq();
    if (art_col[i] != kNone) {
      row[art_col[i]] = 1;
      t.basis()[i] = art_col[i];
    } else {
      t.basis()[i] = slack_col[i];
    }
  }

  LpSolution sol;

  // Phase 1: minimize the sum of artificials.
  std::vector<mpq_class> phase1(ncols);
  bool any_artificial = false;
  for (std::size_t i = 0; i < m; ++i) {
    if (art_col[i] != kNone) {
      phase1[art_col[i]] = 1;
      any_artificial = true;
    }
  }
  if (any_artificial) {
    t.price(phase1);
    if (!t.optimize()) throw SolverIntegrityError("phase 1 reported unbounded");
    if (sgn(t.objective_value()) != 0) {
      sol.status = LpStatus::kInfeasible;
      sol.pivots = t.pivots();
      return sol;
    }
    std::vector<bool> is_art(ncols, false);
    for (std::size_t c : art_col)
      if (c != kNone) is_art[c] = true;
    // Drive remaining (zero-valued) artificials out of the basis; a row with
    // no non-artificial entry is redundant and is dropped.
    for (std::size_t i = t.rows(); i-- > 0;) {
      if (!is_art[t.basis()[i]]) continue;
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (!is_art[j] && sgn(t.row(i)[j]) != 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) {
        t.drop_row(i);
      } else {
        t.pivot(i, enter);
      }
    }
    for (std::size_t j = 0; j < ncols; ++j)
      if (is_art[j]) t.excluded()[j] = true;
  }

  // Phase 2.
  std::vector<mpq_class> cost(ncols);
  for (std::size_t v = 0; v < nvar; ++v) {
    cost[pos_col[v]] = lp.objective()[v].mpq();
    if (neg_col[v] != kNone) cost[neg_col[v]] = -lp.objective()[v].mpq();
  }
  t.price(cost);
  if (!t.optimize()) {
    sol.status = LpStatus::kUnbounded;
    sol.pivots = t.pivots();
    return sol;
  }

  std::vector<mpq_class> column_value(structural);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.basis()[i] < structural) column_value[t.basis()[i]] = t.rhs(i);
  }
  sol.status = LpStatus::kOptimal;
  sol.objective = Rat::from_mpq(t.objective_value());
  sol.values.resize(nvar);
  for (std::size_t v = 0; v < nvar; ++v) {
    mpq_class x = column_value[pos_col[v]];
    if (neg_col[v] != kNone) x -= column_value[neg_col[v]];
    sol.values[v] = Rat::from_mpq(std::move(x));
  }
  sol.pivots = t.pivots();
  return sol;
}

}  // namespace linfproj
