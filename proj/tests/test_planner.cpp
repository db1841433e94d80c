#include "doctest.h"
#include "linfproj/errors.hpp"
#include "linfproj/planner.hpp"
#include "support/generators.hpp"

using namespace linfproj;

namespace {

struct Expected {
  unsigned m;
  std::size_t n;
  Rat alpha;
};

// Independent search straight from the inequalities.
Expected search(const Rat& lambda) {
  unsigned m = 0;
  while (pow(Rat(2), m + 1) <= lambda) ++m;
  if (m == 0) return {0, 0, lambda};
  for (std::size_t n = 3;; ++n) {
    const Rat mu = Rat(2) - Rat(2, static_cast<std::int64_t>(n));
    if (pow(mu, m) > lambda / Rat(2)) return {m, n, lambda / pow(mu, m)};
  }
}

}  // namespace

TEST_CASE("spot values") {
  const auto p3 = plan_parameters(Rat(3));
  CHECK(p3.m == 1);
  CHECK(p3.copies == std::size_t{5});
  CHECK(p3.mu == Rat(8, 5));
  CHECK(p3.alpha == Rat(15, 8));
  CHECK(*p3.mu * p3.alpha == Rat(3));

  const auto p52 = plan_parameters(Rat(5, 2));
  CHECK(p52.m == 1);
  CHECK(p52.copies == std::size_t{3});
  CHECK(p52.mu == Rat(4, 3));
  CHECK(p52.alpha == Rat(15, 8));

  const auto p5 = plan_parameters(Rat(5));
  CHECK(p5.m == 2);
  CHECK(p5.copies == std::size_t{5});
  CHECK(pow(*p5.mu, 2) == Rat(64, 25));
  CHECK(p5.alpha == Rat(125, 64));
  // N = 3 and N = 4 are rejected.
  CHECK(pow(centring_norm(3), 2) <= Rat(5, 2));
  CHECK(pow(centring_norm(4), 2) <= Rat(5, 2));
}

TEST_CASE("schedule entries") {
  const auto p = plan_parameters(Rat(5));
  REQUIRE(p.schedule.size() == 3);
  CHECK(p.schedule[0].lambda_k == Rat(125, 64));
  CHECK(p.schedule[1].lambda_k == Rat(25, 8));
  CHECK(p.schedule[2].lambda_k == Rat(5));
  CHECK(p.schedule[2].ambient == "(ℓ∞)^(5^2)");
}

TEST_CASE("targets in (1, 2] and below") {
  const auto p = plan_parameters(Rat(3, 2));
  CHECK(p.m == 0);
  CHECK_FALSE(p.copies.has_value());
  CHECK(p.alpha == Rat(3, 2));
  // The boundary 2 belongs to the m = 0 range.
  CHECK(plan_parameters(Rat(2)).m == 0);
  CHECK(plan_parameters(Rat(2)).alpha == Rat(2));
  CHECK(plan_parameters(Rat(201, 100)).m == 1);
  CHECK_THROWS_AS(plan_parameters(Rat(1)), InvalidArgument);
  CHECK_THROWS_AS(plan_parameters(Rat(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(plan_parameters(Rat(-3)), InvalidArgument);
}

TEST_CASE("property: plans over a sweep of rational targets in (2, 32]") {
  for (int i = 0; i < 200; ++i) {
    const std::int64_t den = testgen::uniform(1, 50);
    const Rat lambda = Rat(2) + Rat(testgen::uniform(1, 30 * den), den);
    CAPTURE(lambda);
    const auto p = plan_parameters(lambda);
    const Expected e = search(lambda);
    CHECK(p.m == e.m);
    CHECK(p.copies == e.n);
    CHECK(p.alpha == e.alpha);
    CHECK(pow(Rat(2), p.m) <= lambda);
    CHECK(lambda < pow(Rat(2), p.m + 1));
    const Rat mu_m = pow(*p.mu, p.m);
    CHECK(mu_m > lambda / Rat(2));
    CHECK(p.alpha > Rat(1));
    CHECK(p.alpha <= Rat(2));
    CHECK(mu_m * p.alpha == lambda);
    if (*p.copies > 3) CHECK(pow(centring_norm(*p.copies - 1), p.m) <= lambda / Rat(2));
    CHECK(plan_is_consistent(p));
  }
}

TEST_CASE("tampered plans are inconsistent") {
  auto p = plan_parameters(Rat(3));
  p.alpha = Rat(2);
  CHECK_FALSE(plan_is_consistent(p));
  auto q = plan_parameters(Rat(5));
  q.copies = 6;
  q.mu = centring_norm(6);
  q.alpha = Rat(5) / pow(*q.mu, 2);
  CHECK_FALSE(plan_is_consistent(q));  // N not minimal
}

TEST_CASE("schedule demonstrations") {
  const auto plan = adhoc_plan(Rat(4, 3), 3, 1);
  CHECK(plan.lambda_target == Rat(16, 9));
  const auto rep = demonstrate_schedule(testgen::kernel_of_sum(3), plan, 1);
  CHECK(rep.base_lambda == Rat(4, 3));
  REQUIRE(rep.steps.size() == 1);
  CHECK(rep.steps[0].ambient_dim == 9);
  CHECK(rep.steps[0].dim == 4);
  CHECK(rep.steps[0].certified == Rat(16, 9));
  CHECK(rep.steps[0].equal);
  CHECK_FALSE(rep.truncated);

  const auto trivial = demonstrate_schedule(Subspace::full(1), adhoc_plan(Rat(1), 2, 1), 1);
  REQUIRE(trivial.steps.size() == 1);
  CHECK(trivial.steps[0].certified == Rat(1));

  const auto none = demonstrate_schedule(testgen::kernel_of_sum(3), plan, 0);
  CHECK(none.base_lambda == Rat(4, 3));
  CHECK(none.steps.empty());

  // d = 1, N = 3 certifies two steps: l_inf^3 then l_inf^9.
  const auto two = demonstrate_schedule(Subspace::full(1), adhoc_plan(Rat(1), 3, 2), 2);
  REQUIRE(two.steps.size() == 2);
  CHECK(two.steps[0].certified == Rat(4, 3));
  CHECK(two.steps[1].certified == Rat(16, 9));
}

TEST_CASE("schedule errors and budget truncation") {
  const auto plan = adhoc_plan(Rat(3, 2), 3, 1);
  CHECK_THROWS_AS(demonstrate_schedule(testgen::kernel_of_sum(3), plan, 1), BaseMismatchError);
  CHECK_THROWS_AS(demonstrate_schedule(testgen::kernel_of_sum(3), adhoc_plan(Rat(4, 3), 3, 1), 2),
                  InvalidArgument);
  CHECK_THROWS_AS(demonstrate_schedule(testgen::line({1, 1}), plan_parameters(Rat(3, 2)), 1),
                  InvalidArgument);

  LpBudget small;
  small.max_ambient = 4;
  const auto rep = demonstrate_schedule(testgen::kernel_of_sum(3), adhoc_plan(Rat(4, 3), 3, 1), 1, small);
  CHECK(rep.truncated);
  REQUIRE(rep.steps.size() == 1);
  CHECK_FALSE(rep.steps[0].certified.has_value());
  CHECK_FALSE(rep.steps[0].equal);
  LpBudget tiny;
  tiny.max_ambient = 2;
  CHECK_THROWS_AS(demonstrate_schedule(testgen::kernel_of_sum(3), adhoc_plan(Rat(4, 3), 3, 1), 1, tiny),
                  BudgetExceeded);
}

TEST_CASE("interleaving isometry") {
  const auto t1 = interleave_isometry(1, 5);
  CHECK(t1.forward[0] == std::vector<std::size_t>{0, 1, 2, 3, 4});

  const auto t2 = interleave_isometry(2, 6);
  CHECK(t2.forward[0] == std::vector<std::size_t>{0, 2, 4});
  CHECK(t2.forward[1] == std::vector<std::size_t>{1, 3, 5});

  CHECK_THROWS_AS(interleave_isometry(0, 4), InvalidArgument);
  CHECK_THROWS_AS(interleave_isometry(4, 3), InvalidArgument);
}

TEST_CASE("property: the inverse table undoes the forward table") {
  for (std::size_t k = 1; k <= 6; ++k) {
    const std::size_t bound = 7 * k + 3;
    const auto t = interleave_isometry(k, bound);
    REQUIRE(t.inverse.size() == bound);
    for (std::size_t n = 0; n < bound; ++n) {
      const auto [block, pos] = t.inverse[n];
      CHECK(block < k);
      CHECK(t.forward[block][pos] == n);
    }
  }
}

TEST_CASE("property: interleaving preserves the sup norm") {
  const auto t = interleave_isometry(3, 60);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec> seqs;
    Rat expected;
    for (int b = 0; b < 3; ++b) {
      Vec v(static_cast<std::size_t>(testgen::uniform(0, 20)));
      for (auto& x : v) x = testgen::random_rat(9, 5);
      expected = std::max(expected, sup_norm(v));
      seqs.push_back(v);
    }
    const Vec out = interleave(t, seqs);
    CHECK(sup_norm(out) == expected);
    for (std::size_t b = 0; b < 3; ++b) {
      for (std::size_t i = 0; i < seqs[b].size(); ++i) CHECK(out[b + 3 * i] == seqs[b][i]);
    }
  }
}
