#include "linfproj/zero_sum.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <string>
#include <vector>

#include "linfproj/errors.hpp"
#include "linfproj/projection_lp.hpp"

namespace linfproj {
namespace {

void require_copies(std::size_t copies) {
  if (copies < 2) throw InvalidArgument("number of copies must be at least 2");
}

bool columns_sum_to_zero_blockwise(const Mat& p, std::size_t d, std::size_t copies) {
  for (std::size_t c = 0; c < p.cols(); ++c) {
    for (std::size_t r = 0; r < d; ++r) {
      Rat sum;
      for (std::size_t blk = 0; blk < copies; ++blk) sum += p(blk * d + r, c);
      if (!sum.is_zero()) return false;
    }
  }
  return true;
}

std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& sigma) {
  std::vector<std::size_t> inv(sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) inv[sigma[j]] = j;
  return inv;
}

}  // namespace

Rat centring_norm(std::size_t copies) {
  require_copies(copies);
  return Rat(2) - Rat(2, static_cast<std::int64_t>(copies));
}

ZeroSumSpace sigma_subspace(const Subspace& e, std::size_t copies) {
  require_copies(copies);
  const std::size_t d = e.ambient_dim();
  std::vector<Vec> rows;
  rows.reserve((copies - 1) * e.dim());
  for (std::size_t j = 1; j < copies; ++j) {
    for (std::size_t r = 0; r < e.dim(); ++r) {
      Vec v(d * copies);
      for (std::size_t c = 0; c < d; ++c) {
        v[c] = e.basis()(r, c);
        v[j * d + c] = -e.basis()(r, c);
      }
      rows.push_back(std::move(v));
    }
  }
  return ZeroSumSpace{e, copies, Subspace(d * copies, Mat::from_rows(rows)),
                      centring_norm(copies)};
}

Mat centring_projection(std::size_t block_dim, std::size_t copies) {
  require_copies(copies);
  if (block_dim == 0) throw InvalidArgument("block dimension must be positive");
  const Rat avg(1, static_cast<std::int64_t>(copies));
  Mat s(block_dim * copies, block_dim * copies);
  for (std::size_t i = 0; i < copies; ++i)
    for (std::size_t j = 0; j < copies; ++j)
      for (std::size_t r = 0; r < block_dim; ++r)
        s(i * block_dim + r, j * block_dim + r) = (i == j ? Rat(1) : Rat(0)) - avg;
  return s;
}

CentringWitness centring_witness(std::span<const Rat> u, std::size_t copies) {
  require_copies(copies);
  std::vector<Vec> blocks(copies);
  blocks[0].assign(u.begin(), u.end());
  for (std::size_t j = 1; j < copies; ++j) {
    for (const Rat& x : u) blocks[j].push_back(-x);
  }
  CentringWitness w;
  w.x = flatten_blocks(blocks);
  w.image = matvec(centring_projection(u.size(), copies), w.x);
  return w;
}

CentringWitness centring_witness(std::size_t block_dim, std::size_t copies) {
  if (block_dim == 0) throw InvalidArgument("block dimension must be positive");
  Vec u(block_dim);
  u[0] = 1;
  return centring_witness(u, copies);
}

Mat coordinatewise_lift(const Mat& q, std::size_t copies) {
  if (!q.is_square()) throw DimensionError("coordinatewise lift needs a square matrix");
  const std::size_t d = q.rows();
  Mat out(d * copies, d * copies);
  for (std::size_t blk = 0; blk < copies; ++blk)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out(blk * d + r, blk * d + c) = q(r, c);
  return out;
}

Mat symmetrize(const Mat& p, std::size_t block_dim, std::size_t copies) {
  require_copies(copies);
  if (copies > kMaxSymmetrizeCopies) {
    throw InvalidArgument("symmetrization is limited to N <= " +
                          std::to_string(kMaxSymmetrizeCopies));
  }
  const std::size_t n = block_dim * copies;
  if (p.rows() != n || p.cols() != n) throw DimensionError("P must be dN x dN");
  if (p * p != p) throw InvalidArgument("P is not idempotent");
  if (!columns_sum_to_zero_blockwise(p, block_dim, copies)) {
    throw InvalidArgument("range of P is not inside the zero-sum set");
  }

  std::vector<std::size_t> sigma(copies);
  std::iota(sigma.begin(), sigma.end(), 0);
  Mat sum(n, n);
  std::int64_t count = 0;
  do {
    const Mat u = block_permutation(copies, block_dim, sigma);
    const Mat u_inv = block_permutation(copies, block_dim, inverse_permutation(sigma));
    sum += u_inv * p * u;
    ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return sum * Rat(1, count);
}

bool is_permutation_invariant(const Mat& m, std::size_t block_dim, std::size_t copies) {
  std::vector<std::size_t> swap01(copies);
  std::iota(swap01.begin(), swap01.end(), 0);
  std::swap(swap01[0], swap01[1]);
  std::vector<std::size_t> cycle(copies);
  for (std::size_t j = 0; j < copies; ++j) cycle[j] = (j + 1) % copies;
  for (const auto& sigma : {swap01, cycle}) {
    const Mat u = block_permutation(copies, block_dim, sigma);
    if (u * m != m * u) return false;
  }
  return true;
}

SymmetrizationDecomposition extract_r(const Mat& p_tilde, const Subspace& e,
                                      std::size_t copies) {
  require_copies(copies);
  const std::size_t d = e.ambient_dim();
  if (p_tilde.rows() != d * copies || p_tilde.cols() != d * copies) {
    throw DimensionError("P~ must be dN x dN");
  }
  if (!is_permutation_invariant(p_tilde, d, copies)) {
    throw NotSymmetrizedError("P~ does not commute with block permutations");
  }

  SymmetrizationDecomposition dec;
  dec.p_tilde = p_tilde;
  // Column block 0 of P~ is the action on e_1(z) = (z, 0, ..., 0).
  dec.a = p_tilde.block(0, 0, d, d);
  dec.b = p_tilde.block(d, 0, d, d);
  for (std::size_t blk = 2; blk < copies; ++blk) {
    if (p_tilde.block(blk * d, 0, d, d) != dec.b) {
      throw NotSymmetrizedError("output blocks 2..N of P~(e_1(z)) differ");
    }
  }
  const auto n_rat = static_cast<std::int64_t>(copies);
  if (dec.a + dec.b * Rat(n_rat - 1) != Mat(d, d)) {
    throw SolverIntegrityError("A + (N-1) B != 0: range of P~ is not zero-sum");
  }
  dec.r = dec.a - dec.b;

  if (dec.a != dec.r * Rat(n_rat - 1, n_rat) || dec.b != dec.r * Rat(-1, n_rat)) {
    throw SolverIntegrityError("A, B are not the prescribed multiples of R");
  }
  if (!is_projection_onto(dec.r, e)) {
    throw SolverIntegrityError("R is not a projection onto E");
  }
  if (coordinatewise_lift(dec.r, copies) * centring_projection(d, copies) != p_tilde) {
    throw SolverIntegrityError("P~ differs from R^ S_N");
  }

  const Rat mu = centring_norm(copies);
  const NormWitness r_norm = inf_op_norm(dec.r);
  dec.r_norm = r_norm.value;
  dec.p_tilde_norm = inf_op_norm(p_tilde).value;
  if (dec.p_tilde_norm != mu * dec.r_norm) {
    throw SolverIntegrityError("||P~|| != mu_N ||R||");
  }
  Vec u(r_norm.witness.begin(), r_norm.witness.end());
  const CentringWitness w = centring_witness(u, copies);
  if (sup_norm(w.x) != Rat(1) ||
      sup_norm(matvec(p_tilde, w.x)) != mu * dec.r_norm) {
    throw SolverIntegrityError("witness (u, -u, ..., -u) does not attain mu_N ||R||");
  }
  return dec;
}

MultiplicationReport verify_multiplication_law(const Subspace& e, std::size_t copies,
                                               const LpBudget& budget) {
  const ZeroSumSpace z = sigma_subspace(e, copies);
  MultiplicationReport rep;
  rep.copies = copies;
  rep.ambient_dim = z.ambient_dim();
  rep.mu = z.mu;

  auto lambda_of = [&budget](const Subspace& s) -> std::optional<Rat> {
    if (!budget.admits(s)) return std::nullopt;
    return projection_constant(s).lambda;
  };
  auto sigma_future = std::async(std::launch::async, lambda_of, std::cref(z.space));
  rep.base_lambda = lambda_of(e);
  rep.sigma_lambda = sigma_future.get();

  if (rep.base_lambda) rep.product = rep.mu * *rep.base_lambda;
  rep.inconclusive = !rep.base_lambda || !rep.sigma_lambda;
  rep.equal = !rep.inconclusive && *rep.sigma_lambda == *rep.product;
  return rep;
}

}  // namespace linfproj
