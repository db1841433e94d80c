#pragma once

#include <cstddef>
#include <vector>

#include "linfproj/matrix.hpp"
#include "linfproj/simplex.hpp"
#include "linfproj/subspace.hpp"

namespace linfproj {

/// The minimal-projection problem for E = rowspace(B) in l_inf^n as an LP.
///
/// Variables: the k x n coefficient matrix C (free), majorants M (n x n,
/// non-negative) and the bound t. Projections onto E are exactly the maps
/// P = B^T C with C B^T = I_k; the LP minimizes t subject to
/// |P_ij| <= M_ij and sum_j M_ij <= t.
struct ProjectionLP {
  Subspace subspace;
  LinearProgram program;

  [[nodiscard]] std::size_t k() const { return subspace.dim(); }
  [[nodiscard]] std::size_t n() const { return subspace.ambient_dim(); }
  [[nodiscard]] std::size_t c_var(std::size_t row, std::size_t col) const {
    return row * n() + col;
  }
  [[nodiscard]] std::size_t m_var(std::size_t i, std::size_t j) const {
    return k() * n() + i * n() + j;
  }
  [[nodiscard]] std::size_t t_var() const { return k() * n() + n() * n(); }
};

ProjectionLP build_projection_lp(const Subspace& s);

struct LpOptimum {
  Rat objective;
  Vec assignment;  // indexed like ProjectionLP::program's variables
  std::size_t pivots = 0;
};

/// Solves the LP exactly. Infeasibility or unboundedness cannot happen for a
/// valid subspace and raises SolverIntegrityError.
LpOptimum solve_lp_exact(const ProjectionLP& lp);

/// Recovers C (k x n) from an LP assignment.
Mat coefficient_matrix(const ProjectionLP& lp, const Vec& assignment);

struct ProjectionConstantResult {
  Rat lambda;
  Mat minimizer_c;  // k x n
  Mat projection;   // n x n, equal to B^T C
  std::vector<int> witness;
  bool attained = true;  // finite-dimensional infima are always attained
};

/// Exact relative projection constant lambda(E, l_inf^n) together with a
/// minimal projection. Every returned identity (P^2 = P, P fixes the basis,
/// columns of P lie in E, ||P|| = lambda) is re-checked exactly; a failure
/// raises SolverIntegrityError. When k = n the answer is the identity and no
/// LP is solved.
ProjectionConstantResult projection_constant(const Subspace& s);

/// The projection onto E along ker(G): P = B^T (G B^T)^{-1} G for a k x n
/// matrix G with G B^T invertible. Throws RankError otherwise.
Mat oblique_projection(const Subspace& s, const Mat& g);

/// Checks that p is a projection of l_inf^n onto s, exactly.
bool is_projection_onto(const Mat& p, const Subspace& s);

}  // namespace linfproj
