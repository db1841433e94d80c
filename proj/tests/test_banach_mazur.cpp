#include <cmath>

#include "doctest.h"
#include "linfproj/banach_mazur.hpp"
#include "linfproj/errors.hpp"
#include "support/generators.hpp"

using namespace linfproj;

namespace {

const double kOurs = 9.0 + 6.0 * std::sqrt(3.0);
const double kPrior = 11.0 + 6.0 * std::sqrt(2.0);

// a with 2a + 1 = (p/q)^2.
Rat exact_parameter(std::int64_t p, std::int64_t q) { return Rat(p * p - q * q, 2 * q * q); }

}  // namespace

TEST_CASE("parameter sets") {
  const auto p4 = bm_params(Rat(4));
  REQUIRE(p4.is_exact());
  CHECK(p4.exact->mu == Rat(1, 4));
  CHECK(p4.exact->nu == Rat(3, 4));
  CHECK(p4.exact->b == Rat(4, 3));
  CHECK(p4.exact->root == Rat(3));
  CHECK(p4.exact->k == Rat(9, 2));
  CHECK(p4.exact->g == Rat(81, 4));
  CHECK(p4.k == doctest::Approx(4.5));

  const auto p32 = bm_params(Rat(3, 2));
  REQUIRE(p32.is_exact());
  CHECK(p32.exact->root == Rat(2));
  CHECK(p32.exact->nu == Rat(4, 3));
  CHECK(p32.exact->k == Rat(14, 3));
  CHECK(p32.exact->g == Rat(196, 9));

  const auto irr = bm_params(1.0 + std::sqrt(3.0));
  CHECK_FALSE(irr.is_exact());
  CHECK(irr.g == doctest::Approx(kOurs).epsilon(1e-14));
  CHECK_FALSE(bm_params(Rat(2)).is_exact());

  CHECK_THROWS_AS(bm_params(Rat(0)), InvalidArgument);
  CHECK_THROWS_AS(bm_params(-1.0), InvalidArgument);
}

TEST_CASE("property: parameter identities hold exactly on rational squares") {
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t q = testgen::uniform(1, 40);
    const std::int64_t p = q + testgen::uniform(1, 80);
    const Rat a = exact_parameter(p, q);
    const auto s = bm_params(a);
    REQUIRE(s.is_exact());
    const auto& e = *s.exact;
    CHECK(e.root * e.root == Rat(2) * a + Rat(1));
    CHECK(e.b * e.nu == Rat(1));
    CHECK(a * e.nu == e.root);
    CHECK(e.b * (e.mu + Rat(2)) == e.root);
    CHECK((Rat(1) / e.nu) * (e.mu + Rat(2)) == e.root);
    CHECK(a * a * e.g == (a + Rat(2)) * (a + Rat(2)) * (Rat(2) * a + Rat(1)));
    CHECK(e.g == bound_g(a));
    CHECK(s.g == doctest::Approx(e.g.to_double()));
  }
}

TEST_CASE("objective values") {
  CHECK(bound_g(Rat(4)) == Rat(81, 4));
  CHECK(bound_g(Rat(3, 2)) == Rat(196, 9));
  CHECK(bound_g(1.0 + std::sqrt(3.0)) == doctest::Approx(19.3923048454).epsilon(1e-11));
  for (double a : {0.5, 1.0, 2.0, 4.0, 8.0}) CHECK(bound_g(a) >= kOurs);
  CHECK(bound_g(4.0) == 20.25);
  CHECK_THROWS_AS(bound_g(0.0), InvalidArgument);
  CHECK_THROWS_AS(bound_g(Rat(-1)), InvalidArgument);
}

TEST_CASE("closed-form optimizer") {
  const auto r = optimize_closed_form();
  CHECK(std::abs(r.a_star - (1.0 + std::sqrt(3.0))) <= 1e-12);
  CHECK(r.g_star == doctest::Approx(kOurs).epsilon(1e-14));
  CHECK(r.cubic_residual <= 1e-10);
  // (1 + sqrt 3)^3 = 10 + 6 sqrt 3 = 6 (1 + sqrt 3) + 4.
  const double s = 1.0 + std::sqrt(3.0);
  CHECK(s * s * s == doctest::Approx(10.0 + 6.0 * std::sqrt(3.0)));
}

TEST_CASE("golden-section optimizer") {
  const auto r = optimize_numeric(0.1, 10.0, 1e-8);
  CHECK(std::abs(r.a_star - (1.0 + std::sqrt(3.0))) <= 1e-8);
  CHECK(std::abs(r.g_star - kOurs) <= 1e-8);
  CHECK(r.iterations > 0);
  CHECK_THROWS_AS(optimize_numeric(5.0, 5.0, 1e-8), InvalidArgument);
  CHECK_THROWS_AS(optimize_numeric(5.0, 1.0, 1e-8), InvalidArgument);
  CHECK_THROWS_AS(optimize_numeric(0.0, 1.0, 1e-8), InvalidArgument);
  CHECK_THROWS_AS(optimize_numeric(0.1, 10.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(optimize_numeric(3.0, 10.0, 1e-8), InvalidArgument);  // minimizer outside
}

TEST_CASE("property: g never dips below 9 + 6 sqrt 3 on a fine grid") {
  double lowest = 1e300;
  for (int i = 1; i <= 10000; ++i) {
    const double a = 100.0 * i / 10000.0;
    lowest = std::min(lowest, bound_g(a));
  }
  CHECK(lowest >= kOurs - 1e-9);
  CHECK(lowest - kOurs < 1e-4);
}

TEST_CASE("comparison with the earlier bound") {
  const auto c = compare_with_prior_bound();
  CHECK(c.strict);
  CHECK(c.ours < c.prior);
  CHECK(c.prior == doctest::Approx(19.49).epsilon(1e-3));
  CHECK(c.ours == doctest::Approx(19.39).epsilon(1e-3));
  CHECK(c.prior == doctest::Approx(kPrior).epsilon(1e-15));
  CHECK(c.prior == doctest::Approx((3.0 + std::sqrt(2.0)) * (3.0 + std::sqrt(2.0))));
  CHECK(c.improvement == doctest::Approx(0.093).epsilon(0.01));
}

TEST_CASE("square system invariants") {
  const SquareSystem s = make_square_system();
  for (int trial = 0; trial < 50; ++trial) {
    FinSeq v;
    for (int i = 0; i < 6; ++i) {
      v[static_cast<std::size_t>(testgen::uniform(0, 40))] = testgen::random_rat(9, 4);
    }
    v = prune(v);
    CHECK(s.p.apply(s.p.apply(v)) == s.p.apply(v));
    CHECK(s.r.apply(s.r.apply(v)) == s.r.apply(v));
    CHECK(sup_norm(s.p.apply(v)) <= sup_norm(v));
    for (const auto& [j, x] : s.p.apply(v)) CHECK(j % 2 == 0);
    // phi splits into even/odd parts; the pieces recombine and keep the norm.
    const FinSeq x1 = s.phi1.apply(v);
    const FinSeq x2 = s.phi2.apply(v);
    CHECK(std::max(sup_norm(x1), sup_norm(x2)) == sup_norm(v));
    FinSeq back = s.phi_inv_first.apply(x1);
    for (const auto& [j, x] : s.phi_inv_second.apply(x2)) back[j] += x;
    CHECK(prune(back) == v);
    // theta, eta are isometries onto the even coordinates.
    CHECK(sup_norm(s.theta.apply(v)) == sup_norm(v));
    CHECK(s.r.apply(s.theta.apply(v)) == s.theta.apply(v));
    CHECK(s.theta_inv.apply(s.theta.apply(v)) == v);
    CHECK(s.eta_inv.apply(s.eta.apply(v)) == v);
    for (std::size_t c = 0; c < 3; ++c) CHECK(s.project[c].apply(s.inject[c].apply(v)) == v);
  }
  CHECK(operator_norm_window(s.p, 64).lower == Rat(1));
}

TEST_CASE("model construction") {
  const BMModel m = build_model(Rat(4));
  CHECK(m.bound == Rat(9, 2));
  CHECK(m.w.descriptor() == "U_a∘S∘T_a");
  CHECK(build_model(Rat(3, 2)).bound == Rat(14, 3));
  CHECK(build_model(Rat(12)).bound == Rat(35, 6));
  CHECK_THROWS_AS(build_model(Rat(2)), NonExactParameter);
  CHECK_THROWS_AS(build_model(Rat(-4)), InvalidArgument);
}

TEST_CASE("hand-traced images for a = 4") {
  // mu = 1/4, nu = 3/4, b = 4/3. For x = e_0: P x = e_0, eta^{-1} P x = e_0,
  // T x = (3/4 e_0, 0, 0); S gives (3/4 e_0, 0, 0); U gives theta phi^{-1}(3 e_0, 0) = 3 e_0.
  const BMModel m = build_model(Rat(4));
  CHECK(m.w.apply(unit(0)) == FinSeq{{0, 3}});
  // For x = e_1: P x = 0, T x = (0, 0, e_1); S gives (0, e_1, 0);
  // U gives theta phi^{-1}(0, 4/3 e_1) = theta(4/3 e_3) = 4/3 e_6.
  CHECK(m.w.apply(unit(1)) == FinSeq{{6, Rat(4, 3)}});
  // Every coefficient of W and W^{-1} is rational by construction; spot the
  // first rows against the parameter values.
  for (std::size_t i = 0; i < 32; ++i) {
    for (const auto& t : m.w.row(i)) CHECK_FALSE(t.coef.is_zero());
  }
  const FinSeq v{{0, 1}, {3, 2}};
  CHECK(m.w_inv.apply(m.w.apply(v)) == v);
  CHECK(m.w.apply(m.w_inv.apply(v)) == v);
}

TEST_CASE("inverse verification") {
  for (const Rat& a : {Rat(4), Rat(3, 2), Rat(12)}) {
    const BMModel m = build_model(a);
    CHECK(verify_inverse(m.w, m.w_inv, 256));
  }
  const BMModel m4 = build_model(Rat(4));
  const BMModel m32 = build_model(Rat(3, 2));
  CHECK_FALSE(verify_inverse(m4.w, m32.w_inv, 256));
}

TEST_CASE("norm windows stay below K(a)") {
  for (const Rat& a : {Rat(4), Rat(3, 2), Rat(12)}) {
    const BMModel m = build_model(a);
    const NormWindow w = operator_norm_window(m.w, 4096);
    const NormWindow wi = operator_norm_window(m.w_inv, 4096);
    CHECK(w.stabilized);
    CHECK(wi.stabilized);
    CHECK(w.lower <= m.bound);
    CHECK(wi.lower <= m.bound);
    CHECK(w.lower >= Rat(1));
  }
}

TEST_CASE("property: W_inv inverts W on random finitely supported vectors") {
  const BMModel m = build_model(exact_parameter(7, 3));
  for (int trial = 0; trial < 100; ++trial) {
    FinSeq v;
    for (int i = 0; i < 5; ++i) {
      v[static_cast<std::size_t>(testgen::uniform(0, 200))] = testgen::random_rat(9, 7);
    }
    v = prune(v);
    CHECK(m.w_inv.apply(m.w.apply(v)) == v);
    CHECK(sup_norm(m.w.apply(v)) <= m.bound * sup_norm(v));
    CHECK(sup_norm(m.w_inv.apply(v)) <= m.bound * sup_norm(v));
  }
}
