#include "linfproj/projection_lp.hpp"

#include <utility>

#include "linfproj/errors.hpp"

namespace linfproj {

ProjectionLP build_projection_lp(const Subspace& s) {
  ProjectionLP lp{s, {}};
  const std::size_t k = s.dim();
  const std::size_t n = s.ambient_dim();
  const Mat& b = s.basis();
  auto& prog = lp.program;

  for (std::size_t i = 0; i < k * n; ++i) prog.add_variable(/*free=*/true);
  for (std::size_t i = 0; i < n * n; ++i) prog.add_variable(/*free=*/false);
  prog.add_variable(/*free=*/false);
  prog.set_objective_coefficient(lp.t_var(), 1);

  // C B^T = I_k: (C B^T)[l][m] = sum_j C[l][j] * B[m][j].
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t m = 0; m < k; ++m) {
      LinearConstraint c;
      c.sense = Sense::kEqual;
      c.rhs = l == m ? 1 : 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b(m, j).is_zero()) c.terms.emplace_back(lp.c_var(l, j), b(m, j));
      }
      prog.add_constraint(std::move(c));
    }
  }

  // P[i][j] = sum_l B[l][i] * C[l][j];  +-P[i][j] - M[i][j] <= 0.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (int s_sign : {1, -1}) {
        LinearConstraint c;
        c.sense = Sense::kLessEq;
        for (std::size_t l = 0; l < k; ++l) {
          if (!b(l, i).is_zero()) c.terms.emplace_back(lp.c_var(l, j), s_sign * b(l, i));
        }
        c.terms.emplace_back(lp.m_var(i, j), -1);
        prog.add_constraint(std::move(c));
      }
    }
  }

  // sum_j M[i][j] - t <= 0.
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint c;
    c.sense = Sense::kLessEq;
    for (std::size_t j = 0; j < n; ++j) c.terms.emplace_back(lp.m_var(i, j), 1);
    c.terms.emplace_back(lp.t_var(), -1);
    prog.add_constraint(std::move(c));
  }
  return lp;
}

LpOptimum solve_lp_exact(const ProjectionLP& lp) {
  LpSolution sol = solve_exact(lp.program);
  if (sol.status == LpStatus::kInfeasible) {
    throw SolverIntegrityError("projection LP reported infeasible");
  }
  if (sol.status == LpStatus::kUnbounded) {
    throw SolverIntegrityError("projection LP reported unbounded");
  }
  return {std::move(sol.objective), std::move(sol.values), sol.pivots};
}

Mat coefficient_matrix(const ProjectionLP& lp, const Vec& assignment) {
  Mat c(lp.k(), lp.n());
  for (std::size_t l = 0; l < lp.k(); ++l)
    for (std::size_t j = 0; j < lp.n(); ++j) c(l, j) = assignment[lp.c_var(l, j)];
  return c;
}

Mat oblique_projection(const Subspace& s, const Mat& g) {
  if (g.rows() != s.dim() || g.cols() != s.ambient_dim()) {
    throw DimensionError("G must be k x n");
  }
  const Mat bt = s.basis().transpose();
  return bt * inverse(g * bt) * g;
}

bool is_projection_onto(const Mat& p, const Subspace& s) {
  const std::size_t n = s.ambient_dim();
  if (p.rows() != n || p.cols() != n) return false;
  if (p * p != p) return false;
  for (std::size_t r = 0; r < s.dim(); ++r) {
    const Vec b = s.basis().row_vec(r);
    if (matvec(p, b) != b) return false;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!s.contains(p.col_vec(j))) return false;
  }
  return true;
}

ProjectionConstantResult projection_constant(const Subspace& s) {
  const std::size_t k = s.dim();
  const std::size_t n = s.ambient_dim();
  ProjectionConstantResult res;

  if (k == n) {
    // The only projection onto the whole space is the identity; C = B^{-T}.
    res.projection = Mat::identity(n);
    res.minimizer_c = inverse(s.basis().transpose());
  } else {
    const ProjectionLP lp = build_projection_lp(s);
    const LpOptimum opt = solve_lp_exact(lp);
    res.minimizer_c = coefficient_matrix(lp, opt.assignment);
    res.projection = s.basis().transpose() * res.minimizer_c;
    res.lambda = opt.objective;
  }

  const NormWitness norm = inf_op_norm(res.projection);
  if (k == n) res.lambda = norm.value;
  res.witness = norm.witness;

  if (res.minimizer_c * s.basis().transpose() != Mat::identity(k)) {
    throw SolverIntegrityError("minimizer violates C B^T = I");
  }
  if (!is_projection_onto(res.projection, s)) {
    throw SolverIntegrityError("minimizer is not a projection onto E");
  }
  if (norm.value != res.lambda) {
    throw SolverIntegrityError("LP objective " + res.lambda.to_string() +
                               " differs from ||P|| = " + norm.value.to_string());
  }
  if (res.lambda < Rat(1)) {
    throw SolverIntegrityError("projection constant below 1");
  }
  return res;
}

}  // namespace linfproj
