#include "linfproj/banach_mazur.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "linfproj/errors.hpp"

namespace linfproj {
namespace {

void require_positive(bool positive) {
  if (!positive) throw InvalidArgument("parameter a must be positive");
}

// g(x) - g(y) in factored form, free of cancellation near the minimizer:
// (x - y) * (2 - 12/(xy) - 4(x + y)/(xy)^2).
long double g_difference(long double x, long double y) {
  const long double xy = x * y;
  return (x - y) * (2.0L - 12.0L / xy - 4.0L * (x + y) / (xy * xy));
}

double g_derivative(double a) { return 2.0 - 12.0 / (a * a) - 8.0 / (a * a * a); }

}  // namespace

BMParameterSet bm_params(const Rat& a) {
  require_positive(a.sign() > 0);
  BMParameterSet p = bm_params(a.to_double());
  const Rat two_a_plus_one = Rat(2) * a + Rat(1);
  if (const auto root = exact_sqrt(two_a_plus_one)) {
    ExactBMParameters e;
    e.a = a;
    e.mu = Rat(1) / a;
    e.root = *root;
    e.nu = *root / a;
    e.b = a / *root;
    e.k = Rat(2) * e.nu + e.root;
    e.g = e.k * e.k;
    p.exact = e;
  }
  return p;
}

BMParameterSet bm_params(double a) {
  require_positive(a > 0.0);
  BMParameterSet p;
  p.a = a;
  p.mu = 1.0 / a;
  p.root = std::sqrt(2.0 * a + 1.0);
  p.nu = p.root / a;
  p.b = a / p.root;
  p.k = 2.0 * p.nu + p.root;
  p.g = p.k * p.k;
  return p;
}

Rat bound_g(const Rat& a) {
  require_positive(a.sign() > 0);
  return Rat(2) * a + Rat(9) + Rat(12) / a + Rat(4) / (a * a);
}

double bound_g(double a) {
  require_positive(a > 0.0);
  return 2.0 * a + 9.0 + 12.0 / a + 4.0 / (a * a);
}

OptimizerResult optimize_closed_form() {
  // t^3 + p t + q = 0 with p = -6, q = -4 (discriminant > 0: three real roots)
  // t_k = 2 sqrt(-p/3) cos( acos( (3q/(2p)) sqrt(-3/p) ) / 3 - 2 pi k / 3 ).
  const long double p = -6.0L;
  const long double q = -4.0L;
  const long double amp = 2.0L * std::sqrt(-p / 3.0L);
  const long double phase = std::acos((3.0L * q / (2.0L * p)) * std::sqrt(-3.0L / p)) / 3.0L;
  long double root = 0.0L;
  int positive = 0;
  for (int k = 0; k < 3; ++k) {
    const long double t =
        amp * std::cos(phase - 2.0L * std::numbers::pi_v<long double> * k / 3.0L);
    if (t > 0.0L) {
      root = t;
      ++positive;
    }
  }
  if (positive != 1) throw SolverIntegrityError("cubic does not have a unique positive root");

  OptimizerResult r;
  r.a_star = static_cast<double>(root);
  r.cubic_residual = static_cast<double>(std::fabs(root * root * root - 6.0L * root - 4.0L));
  r.g_star = bound_g(r.a_star);
  return r;
}

OptimizerResult optimize_numeric(double lo, double hi, double tol) {
  if (!(lo > 0.0) || !(lo < hi) || !(tol > 0.0)) {
    throw InvalidArgument("invalid bracket for the optimizer");
  }
  if (!(g_derivative(lo) < 0.0) || !(g_derivative(hi) > 0.0)) {
    throw InvalidArgument("bracket does not enclose the minimizer of g");
  }
  const long double inv_phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  const int iterations = static_cast<int>(
      std::ceil(std::log(tol / (hi - lo)) / std::log(static_cast<double>(inv_phi))));

  long double a = lo;
  long double b = hi;
  long double x1 = b - inv_phi * (b - a);
  long double x2 = a + inv_phi * (b - a);
  for (int i = 0; i < iterations; ++i) {
    if (g_difference(x1, x2) < 0.0L) {
      b = x2;
      x2 = x1;
      x1 = b - inv_phi * (b - a);
    } else {
      a = x1;
      x1 = x2;
      x2 = a + inv_phi * (b - a);
    }
  }
  OptimizerResult r;
  const long double mid = (a + b) / 2.0L;
  r.a_star = static_cast<double>(mid);
  r.g_star = bound_g(r.a_star);
  r.cubic_residual = static_cast<double>(std::fabs(mid * mid * mid - 6.0L * mid - 4.0L));
  r.iterations = std::max(iterations, 0);
  return r;
}

BoundComparison compare_with_prior_bound() {
  BoundComparison c;
  c.ours = 9.0 + 6.0 * std::sqrt(3.0);
  c.prior = 11.0 + 6.0 * std::sqrt(2.0);
  c.improvement = c.prior - c.ours;
  c.strict = c.ours < c.prior;
  return c;
}

SquareSystem make_square_system() {
  using Op = SeqOperator;
  const Op evens = Op::gather(2, 0, "even");
  const Op odds = Op::gather(2, 1, "odd");
  const Op to_evens = Op::spread(2, 0, "spread_even");
  const Op to_odds = Op::spread(2, 1, "spread_odd");
  const Op zero_odd = compose(to_evens, evens);
  return SquareSystem{
      zero_odd.renamed("P"),
      zero_odd.renamed("R"),
      to_evens.renamed("θ"),
      evens.renamed("θ⁻¹R"),
      to_evens.renamed("η"),
      evens.renamed("η⁻¹P"),
      evens.renamed("φ₁"),
      odds.renamed("φ₂"),
      to_evens.renamed("φ⁻¹(·,0)"),
      to_odds.renamed("φ⁻¹(0,·)"),
      evens.renamed("ψ₁"),
      odds.renamed("ψ₂"),
      to_evens.renamed("ψ⁻¹(·,0)"),
      to_odds.renamed("ψ⁻¹(0,·)"),
      {Op::spread(3, 0, "ι₀"), Op::spread(3, 1, "ι₁"), Op::spread(3, 2, "ι₂")},
      {Op::gather(3, 0, "π₀"), Op::gather(3, 1, "π₁"), Op::gather(3, 2, "π₂")},
  };
}

BMModel build_model(const Rat& a) {
  BMParameterSet params = bm_params(a);
  if (!params.exact) {
    throw NonExactParameter("sqrt(2a+1) is irrational for a = " + a.to_string());
  }
  const ExactBMParameters& e = *params.exact;
  SquareSystem sys = make_square_system();
  const SeqOperator id = SeqOperator::identity();
  const auto& in = sys.inject;
  const auto& pr = sys.project;

  // T_a x = (nu psi_1 eta^{-1} P x, mu psi_2 eta^{-1} P x, x - P x)
  const SeqOperator t =
      (compose(in[0], e.nu * compose(sys.psi1, sys.eta_inv)) +
       compose(in[1], e.mu * compose(sys.psi2, sys.eta_inv)) + compose(in[2], id - sys.p))
          .renamed("T_a");
  // S(y1, y2, e) = (theta^{-1} R y1, eta y2 + e, y1 - R y1)
  const SeqOperator s =
      (compose(in[0], compose(sys.theta_inv, pr[0])) +
       compose(in[1], compose(sys.eta, pr[1]) + pr[2]) +
       compose(in[2], compose(id - sys.r, pr[0])))
          .renamed("S");
  // U_a(x1, x2, f) = theta phi^{-1}(a x1, b x2) + f
  const SeqOperator u =
      (compose(sys.theta, compose(sys.phi_inv_first, e.a * pr[0]) +
                              compose(sys.phi_inv_second, e.b * pr[1])) +
       pr[2])
          .renamed("U_a");

  // T_a^{-1}(y1, y2, e) = eta psi^{-1}((1/nu) y1, a y2) + e
  const SeqOperator t_inv =
      (compose(sys.eta, compose(sys.psi_inv_first, (Rat(1) / e.nu) * pr[0]) +
                            compose(sys.psi_inv_second, e.a * pr[1])) +
       pr[2])
          .renamed("T_a⁻¹");
  // S^{-1}(x1, x2, f) = (theta x1 + f, eta^{-1} P x2, x2 - P x2)
  const SeqOperator s_inv =
      (compose(in[0], compose(sys.theta, pr[0]) + pr[2]) +
       compose(in[1], compose(sys.eta_inv, pr[1])) +
       compose(in[2], compose(id - sys.p, pr[1])))
          .renamed("S⁻¹");
  // U_a^{-1} y = ((1/a) phi_1 theta^{-1} R y, nu phi_2 theta^{-1} R y, y - R y)
  const SeqOperator u_inv =
      (compose(in[0], (Rat(1) / e.a) * compose(sys.phi1, sys.theta_inv)) +
       compose(in[1], e.nu * compose(sys.phi2, sys.theta_inv)) + compose(in[2], id - sys.r))
          .renamed("U_a⁻¹");

  BMModel model{params,
                sys,
                t,
                s,
                u,
                t_inv,
                s_inv,
                u_inv,
                compose(u, compose(s, t)).renamed("U_a∘S∘T_a"),
                compose(t_inv, compose(s_inv, u_inv)).renamed("T_a⁻¹∘S⁻¹∘U_a⁻¹"),
                e.k};
  return model;
}

bool verify_inverse(const SeqOperator& w, const SeqOperator& w_inv, std::size_t basis_count) {
  for (std::size_t j = 0; j < basis_count; ++j) {
    const FinSeq e = unit(j);
    if (w_inv.apply(w.apply(e)) != e) return false;
    if (w.apply(w_inv.apply(e)) != e) return false;
  }
  return true;
}

}  // namespace linfproj
