#pragma once

#include <cstddef>
#include <optional>

#include "linfproj/matrix.hpp"
#include "linfproj/subspace.hpp"

namespace linfproj {

/// mu_N = 2 - 2/N, the norm of the centring projection on N blocks.
Rat centring_norm(std::size_t copies);

/// The zero-sum subspace Sigma_N(E) of (l_inf^d)^N: N-tuples of vectors of E
/// summing to zero.
struct ZeroSumSpace {
  Subspace base;
  std::size_t copies;
  Subspace space;  // inside l_inf^{d*N}, dim (N-1)*k
  Rat mu;

  [[nodiscard]] std::size_t block_dim() const { return base.ambient_dim(); }
  [[nodiscard]] std::size_t ambient_dim() const { return space.ambient_dim(); }
};

/// Basis rows are (b, 0, .., -b (block j), .., 0) for j = 1..N-1 (outer) and
/// each basis row b of E (inner). Throws InvalidArgument for N < 2.
ZeroSumSpace sigma_subspace(const Subspace& e, std::size_t copies);

/// S_N on (l_inf^d)^N: x_i -> x_i - (1/N) sum_j x_j blockwise.
Mat centring_projection(std::size_t block_dim, std::size_t copies);

struct CentringWitness {
  Vec x;      // (u, -u, ..., -u)
  Vec image;  // S_N x = (mu_N u, -(2/N) u, ..., -(2/N) u)
};

/// The extremal vector for ||S_N|| with u the first coordinate vector.
CentringWitness centring_witness(std::size_t block_dim, std::size_t copies);

/// Same construction for an arbitrary first-block vector u.
CentringWitness centring_witness(std::span<const Rat> u, std::size_t copies);

/// Block-diagonal matrix with N copies of the square matrix q.
Mat coordinatewise_lift(const Mat& q, std::size_t copies);

/// Largest N accepted by symmetrize (N! permutations are enumerated).
inline constexpr std::size_t kMaxSymmetrizeCopies = 6;

/// Average of U_sigma^{-1} P U_sigma over all block permutations sigma.
/// Requires P to be idempotent with every column blockwise summing to zero;
/// throws InvalidArgument otherwise (and for N > kMaxSymmetrizeCopies).
Mat symmetrize(const Mat& p, std::size_t block_dim, std::size_t copies);

/// True iff m commutes with every block permutation on N blocks (checked on
/// the generators (0 1) and (0 1 ... N-1)).
bool is_permutation_invariant(const Mat& m, std::size_t block_dim, std::size_t copies);

struct SymmetrizationDecomposition {
  Mat p_tilde;
  Mat a;  // block (0,0) of p_tilde
  Mat b;  // block (1,0) of p_tilde, shared by all off-diagonal output blocks
  Mat r;  // a - b, a projection of l_inf^d onto E
  Rat p_tilde_norm;
  Rat r_norm;
};

/// Reads A and B off P~ applied to block-1 inputs and verifies every
/// identity of the decomposition exactly:
///   A = ((N-1)/N) R,  B = -(1/N) R,  R^2 = R onto E,  P~ = R^ S_N,
///   ||P~|| = mu_N ||R||, the last also through the witness (u, -u, ..., -u)
///   with u a norm-attaining sign vector of R.
/// Throws NotSymmetrizedError if P~ is not permutation invariant or blocks
/// 2..N differ, and SolverIntegrityError if A + (N-1) B != 0 or another
/// identity fails.
SymmetrizationDecomposition extract_r(const Mat& p_tilde, const Subspace& e,
                                      std::size_t copies);

/// Size limits for exact LP solves.
struct LpBudget {
  std::size_t max_ambient = 12;
  std::size_t max_dim = 6;

  [[nodiscard]] bool admits(const Subspace& s) const {
    return s.ambient_dim() <= max_ambient && s.dim() <= max_dim;
  }
};

struct MultiplicationReport {
  std::size_t copies = 0;
  std::size_t ambient_dim = 0;  // of Sigma_N(E)
  Rat mu;
  std::optional<Rat> base_lambda;
  std::optional<Rat> sigma_lambda;
  std::optional<Rat> product;  // mu * base_lambda
  bool equal = false;
  bool inconclusive = false;   // an LP was over budget
};

/// Computes lambda(Sigma_N(E)) and mu_N * lambda(E) by exact LP and compares
/// them. LPs over budget are skipped and the report is marked inconclusive.
MultiplicationReport verify_multiplication_law(const Subspace& e, std::size_t copies,
                                               const LpBudget& budget = {});

}  // namespace linfproj
