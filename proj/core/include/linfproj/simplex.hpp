#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "linfproj/matrix.hpp"
#include "linfproj/rat.hpp"

namespace linfproj {

enum class Sense { kLessEq, kGreaterEq, kEqual };

struct LinearConstraint {
  std::vector<std::pair<std::size_t, Rat>> terms;  // (variable, coefficient)
  Sense sense = Sense::kEqual;
  Rat rhs;
};

/// A minimization LP over rational data. Variables are either free or
/// constrained to be non-negative.
class LinearProgram {
 public:
  std::size_t add_variable(bool free);
  void add_constraint(LinearConstraint c);
  void set_objective_coefficient(std::size_t var, Rat coef);

  [[nodiscard]] std::size_t num_variables() const { return free_.size(); }
  [[nodiscard]] bool is_free(std::size_t var) const { return free_[var]; }
  [[nodiscard]] const std::vector<LinearConstraint>& constraints() const {
    return constraints_;
  }
  [[nodiscard]] const std::vector<Rat>& objective() const { return objective_; }

  /// Number of constraints with the given sense.
  [[nodiscard]] std::size_t count(Sense sense) const;

 private:
  std::vector<bool> free_;
  std::vector<Rat> objective_;
  std::vector<LinearConstraint> constraints_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rat objective;
  Vec values;              // one entry per LinearProgram variable
  std::size_t pivots = 0;  // over both phases
};

/// Two-phase primal simplex on a dense rational tableau. Entering and leaving
/// variables follow Bland's rule, so the method terminates on degenerate
/// problems and is deterministic for a fixed input.
LpSolution solve_exact(const LinearProgram& lp);

}  // namespace linfproj
