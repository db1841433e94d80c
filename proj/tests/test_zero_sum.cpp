#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "linfproj/errors.hpp"
#include "linfproj/projection_lp.hpp"
#include "linfproj/zero_sum.hpp"
#include "support/generators.hpp"

using namespace linfproj;

namespace {

std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// A random projection onto Sigma_N(E): oblique along a random complement.
Mat random_projection_onto(const Subspace& s) {
  for (;;) {
    try {
      return oblique_projection(s, testgen::random_mat(s.dim(), s.ambient_dim(), 2, 2));
    } catch (const RankError&) {
    }
  }
}

// R^ S_N written out entrywise: block (i, j) is (delta_ij - 1/N) R.
Mat lifted_times_centring(const Mat& r, std::size_t copies) {
  const std::size_t d = r.rows();
  Mat out(d * copies, d * copies);
  for (std::size_t i = 0; i < copies; ++i) {
    for (std::size_t j = 0; j < copies; ++j) {
      const Rat w = Rat(i == j ? 1 : 0) - Rat(1, static_cast<std::int64_t>(copies));
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) out(i * d + a, j * d + b) = w * r(a, b);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("centring norms") {
  CHECK(centring_norm(2) == Rat(1));
  CHECK(centring_norm(3) == Rat(4, 3));
  CHECK(centring_norm(8) == Rat(7, 4));
  CHECK_THROWS_AS(centring_norm(1), InvalidArgument);
  CHECK_THROWS_AS(centring_norm(0), InvalidArgument);
}

TEST_CASE("zero-sum subspaces") {
  const Subspace scalar = Subspace::full(1);
  const ZeroSumSpace z2 = sigma_subspace(scalar, 2);
  CHECK(z2.space == Subspace(2, Mat{{1, -1}}));

  const ZeroSumSpace z3 = sigma_subspace(scalar, 3);
  CHECK(z3.space.basis() == Mat{{1, -1, 0}, {1, 0, -1}});
  CHECK(z3.mu == Rat(4, 3));
  // Same space as the kernel of the coordinate sum: mutual containment.
  for (const auto& row : testgen::kernel_of_sum(3).basis().to_rows()) CHECK(z3.space.contains(row));

  const ZeroSumSpace zd = sigma_subspace(testgen::line({1, 1}), 2);
  CHECK(zd.space.dim() == 1);
  CHECK(zd.ambient_dim() == 4);
  CHECK(zd.space.contains(Vec{1, 1, -1, -1}));
  CHECK_FALSE(zd.space.contains(Vec{1, 1, 0, 0}));

  CHECK_THROWS_AS(sigma_subspace(scalar, 1), InvalidArgument);
}

TEST_CASE("property: zero-sum members sum to zero blockwise and dims are (N-1)k") {
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = static_cast<std::size_t>(testgen::uniform(1, 3));
    const auto k = static_cast<std::size_t>(testgen::uniform(1, static_cast<std::int64_t>(d)));
    const auto n = static_cast<std::size_t>(testgen::uniform(2, 4));
    const Subspace e = testgen::random_subspace(d, k);
    const ZeroSumSpace z = sigma_subspace(e, n);
    CHECK(z.space.dim() == (n - 1) * k);
    for (const auto& row : z.space.basis().to_rows()) {
      Vec total(d);
      for (std::size_t j = 0; j < n; ++j) {
        Vec block(row.begin() + static_cast<std::ptrdiff_t>(j * d),
                  row.begin() + static_cast<std::ptrdiff_t>((j + 1) * d));
        CHECK(e.contains(block));
        for (std::size_t a = 0; a < d; ++a) total[a] += block[a];
      }
      CHECK(total == Vec(d));
    }
  }
}

TEST_CASE("centring projection") {
  CHECK(centring_projection(1, 2) == Mat{{Rat(1, 2), Rat(-1, 2)}, {Rat(-1, 2), Rat(1, 2)}});
  CHECK(inf_op_norm(centring_projection(1, 2)).value == Rat(1));
  const Mat s3 = centring_projection(1, 3);
  CHECK(s3 == Mat{{Rat(2, 3), Rat(-1, 3), Rat(-1, 3)},
                  {Rat(-1, 3), Rat(2, 3), Rat(-1, 3)},
                  {Rat(-1, 3), Rat(-1, 3), Rat(2, 3)}});
  CHECK(inf_op_norm(s3).value == Rat(4, 3));
  const Mat s22 = centring_projection(2, 2);
  CHECK(s22 == Mat{{Rat(1, 2), 0, Rat(-1, 2), 0},
                   {0, Rat(1, 2), 0, Rat(-1, 2)},
                   {Rat(-1, 2), 0, Rat(1, 2), 0},
                   {0, Rat(-1, 2), 0, Rat(1, 2)}});
  CHECK(testgen::brute_force_norm(s22) == Rat(1));
}

TEST_CASE("property: S_N is an idempotent, invariant projection of norm 2 - 2/N") {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::size_t n = 2; n <= 8; ++n) {
      const Mat s = centring_projection(d, n);
      CHECK(s * s == s);
      CHECK(inf_op_norm(s).value == Rat(2) - Rat(2, static_cast<std::int64_t>(n)));
      if (d * n <= 12) CHECK(testgen::brute_force_norm(s) == centring_norm(n));
      CHECK(is_permutation_invariant(s, d, n));
      CHECK(is_projection_onto(s, sigma_subspace(Subspace::full(d), n).space));
    }
  }
}

TEST_CASE("centring witness") {
  const CentringWitness w3 = centring_witness(1, 3);
  CHECK(w3.x == Vec{1, -1, -1});
  CHECK(w3.image == Vec{Rat(4, 3), Rat(-2, 3), Rat(-2, 3)});
  CHECK(sup_norm(w3.image) == Rat(4, 3));

  const CentringWitness w2 = centring_witness(1, 2);
  CHECK(w2.x == Vec{1, -1});
  CHECK(w2.image == Vec{1, -1});

  const CentringWitness w24 = centring_witness(2, 4);
  CHECK(sup_norm(w24.image) == Rat(3, 2));
  CHECK(w24.image == matvec(centring_projection(2, 4), w24.x));

  const Vec u{Rat(1, 2), -1};
  const CentringWitness wu = centring_witness(u, 3);
  CHECK(wu.x == Vec{Rat(1, 2), -1, Rat(-1, 2), 1, Rat(-1, 2), 1});
  CHECK(sup_norm(wu.image) == Rat(4, 3) * sup_norm(u));
}

TEST_CASE("coordinatewise lift") {
  CHECK(coordinatewise_lift(Mat::identity(2), 3) == Mat::identity(6));
  const Mat q = coordinatewise_lift(Mat{{2}}, 3);
  CHECK(q == Mat{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  CHECK(inf_op_norm(q).value == Rat(2));
  for (int trial = 0; trial < 20; ++trial) {
    const Mat r = testgen::random_mat(2, 2, 5, 4);
    CHECK(inf_op_norm(coordinatewise_lift(r, 3)).value == inf_op_norm(r).value);
  }
  CHECK_THROWS_AS(coordinatewise_lift(Mat(2, 3), 2), DimensionError);
}

TEST_CASE("symmetrization by hand") {
  // N = 2, d = 1: a norm-2 projection onto span{(1,-1)}, x -> (3x_1/2 + x_2/2)(1,-1),
  // averaged with swap P swap.
  const Mat p{{Rat(3, 2), Rat(1, 2)}, {Rat(-3, 2), Rat(-1, 2)}};
  const Mat swap{{0, 1}, {1, 0}};
  REQUIRE(p * p == p);
  const Mat by_hand = Rat(1, 2) * (p + swap * p * swap);
  const Mat pt = symmetrize(p, 1, 2);
  CHECK(pt == by_hand);
  CHECK(pt == Mat{{Rat(1, 2), Rat(-1, 2)}, {Rat(-1, 2), Rat(1, 2)}});
  CHECK(inf_op_norm(pt).value == Rat(1));
  CHECK(inf_op_norm(p).value == Rat(2));

  // [[1,-1],[0,0]] is idempotent but its range is span{(1,0)}, outside the
  // zero-sum space, so it is rejected even though the raw average is the same.
  const Mat q{{1, -1}, {0, 0}};
  CHECK(Rat(1, 2) * (q + swap * q * swap) == pt);
  CHECK_THROWS_AS(symmetrize(q, 1, 2), InvalidArgument);

  // Fixed point: an already invariant projection.
  const Mat r = Mat{{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2)}};
  const Mat inv = lifted_times_centring(r, 3);
  CHECK(symmetrize(inv, 2, 3) == inv);
}

TEST_CASE("symmetrization preconditions") {
  CHECK_THROWS_AS(symmetrize(Mat{{1, 0}, {0, 0}}, 1, 2), InvalidArgument);  // columns not zero-sum
  CHECK_THROWS_AS(symmetrize(Mat{{1, -1}, {-1, 1}}, 1, 2), InvalidArgument);  // not idempotent
  CHECK_THROWS_AS(symmetrize(centring_projection(1, 7), 1, 7), InvalidArgument);
  CHECK_THROWS_AS(extract_r(Mat{{1, -1}, {0, 0}}, Subspace::full(1), 2), NotSymmetrizedError);
}

TEST_CASE("commutation with every block permutation on three blocks") {
  const Subspace e = testgen::line({1, 1});
  const ZeroSumSpace z = sigma_subspace(e, 3);
  const Mat pt = symmetrize(random_projection_onto(z.space), 2, 3);
  for (const auto& sigma : all_permutations(3)) {
    const Mat u = block_permutation(3, 2, sigma);
    CHECK(u * pt == pt * u);
  }
}

TEST_CASE("decomposition examples") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto dec = extract_r(centring_projection(2, n), Subspace::full(2), n);
    const auto nn = static_cast<std::int64_t>(n);
    CHECK(dec.a == Rat(nn - 1, nn) * Mat::identity(2));
    CHECK(dec.b == Rat(-1, nn) * Mat::identity(2));
    CHECK(dec.r == Mat::identity(2));
  }
  const Mat half{{Rat(1, 2), Rat(-1, 2)}, {Rat(-1, 2), Rat(1, 2)}};
  const auto dec = extract_r(half, Subspace::full(1), 2);
  CHECK(dec.a == Mat{{Rat(1, 2)}});
  CHECK(dec.b == Mat{{Rat(-1, 2)}});
  CHECK(dec.r == Mat{{1}});
}

TEST_CASE("property: symmetrization chain on random projections") {
  struct Case {
    Subspace e;
    std::size_t n;
  };
  const std::vector<Case> cases{{Subspace::full(1), 2},
                                {Subspace::full(1), 3},
                                {testgen::line({1, 1}), 2},
                                {testgen::line({1, 1}), 3},
                                {Subspace::full(2), 2},
                                {testgen::line({1, -2}), 4},
                                {testgen::kernel_of_sum(3), 2}};
  for (const auto& c : cases) {
    const std::size_t d = c.e.ambient_dim();
    const ZeroSumSpace z = sigma_subspace(c.e, c.n);
    for (int trial = 0; trial < 8; ++trial) {
      const Mat p = random_projection_onto(z.space);
      const Mat pt = symmetrize(p, d, c.n);
      CHECK(inf_op_norm(pt).value <= inf_op_norm(p).value);
      CHECK(is_permutation_invariant(pt, d, c.n));
      CHECK(is_projection_onto(pt, z.space));
      const auto dec = extract_r(pt, c.e, c.n);
      CHECK(dec.r * dec.r == dec.r);
      CHECK(is_projection_onto(dec.r, c.e));
      CHECK(pt == lifted_times_centring(dec.r, c.n));
      CHECK(pt == coordinatewise_lift(dec.r, c.n) * centring_projection(d, c.n));
      CHECK(dec.p_tilde_norm == z.mu * dec.r_norm);
      CHECK(testgen::brute_force_norm(pt) == dec.p_tilde_norm);
    }
  }
}

TEST_CASE("multiplication law") {
  const auto k = verify_multiplication_law(Subspace::full(1), 3);
  CHECK(k.equal);
  CHECK(k.sigma_lambda == Rat(4, 3));
  CHECK(k.product == Rat(4, 3));

  const auto ones = verify_multiplication_law(testgen::line({1, 1, 1}), 3);
  CHECK(ones.equal);
  CHECK(ones.base_lambda == Rat(1));
  CHECK(ones.sigma_lambda == Rat(4, 3));

  const auto ker = verify_multiplication_law(testgen::kernel_of_sum(3), 2);
  CHECK(ker.equal);
  CHECK(ker.mu == Rat(1));
  CHECK(ker.sigma_lambda == Rat(4, 3));
  CHECK_FALSE(ker.inconclusive);
}

TEST_CASE("property: multiplication law on random small subspaces") {
  for (int trial = 0; trial < 12; ++trial) {
    const auto d = static_cast<std::size_t>(testgen::uniform(2, 3));
    const auto k = static_cast<std::size_t>(testgen::uniform(1, static_cast<std::int64_t>(d) - 1));
    const auto n = static_cast<std::size_t>(testgen::uniform(2, 3));
    const auto rep = verify_multiplication_law(testgen::random_subspace(d, k), n);
    CHECK_FALSE(rep.inconclusive);
    CHECK(rep.equal);
  }
}

TEST_CASE("over-budget instances are inconclusive") {
  LpBudget tiny;
  tiny.max_ambient = 4;
  const auto rep = verify_multiplication_law(testgen::line({1, 1, 1}), 3, tiny);
  CHECK(rep.inconclusive);
  CHECK_FALSE(rep.equal);
  CHECK_FALSE(rep.sigma_lambda.has_value());
  CHECK(rep.base_lambda == Rat(1));
  CHECK_THROWS_AS(verify_multiplication_law(Subspace::full(1), 1), InvalidArgument);
}
