#pragma once

#include <cstddef>
#include <optional>

#include "linfproj/rat.hpp"
#include "linfproj/seq_operator.hpp"

namespace linfproj {

/// Exact values of the parameter family, available when 2a+1 is the square of
/// a rational.
struct ExactBMParameters {
  Rat a, mu, nu, b, root, k, g;
};

/// mu = 1/a, nu = sqrt(2a+1)/a, b = 1/nu, root = sqrt(2a+1),
/// K = 2 nu + root, g = K^2.
struct BMParameterSet {
  double a = 0, mu = 0, nu = 0, b = 0, root = 0, k = 0, g = 0;
  std::optional<ExactBMParameters> exact;

  [[nodiscard]] bool is_exact() const { return exact.has_value(); }
};

/// Throws InvalidArgument for a <= 0.
BMParameterSet bm_params(const Rat& a);
BMParameterSet bm_params(double a);

/// g(a) = 2a + 9 + 12/a + 4/a^2. Throws InvalidArgument for a <= 0.
Rat bound_g(const Rat& a);
double bound_g(double a);

struct OptimizerResult {
  double a_star = 0;
  double g_star = 0;
  double cubic_residual = 0;  // |a^3 - 6a - 4| at a_star
  int iterations = 0;         // 0 for the closed form
};

/// Solves g'(a) = 0, i.e. a^3 - 6a - 4 = 0, by the trigonometric formula for
/// a depressed cubic with three real roots and keeps the positive one.
OptimizerResult optimize_closed_form();

/// Golden-section search for the minimizer of g on [lo, hi]. The iteration
/// count is fixed by tol. Requires 0 < lo < hi, tol > 0, and g decreasing at
/// lo and increasing at hi; throws InvalidArgument otherwise.
OptimizerResult optimize_numeric(double lo, double hi, double tol);

struct BoundComparison {
  double ours = 0;   // 9 + 6 sqrt(3)
  double prior = 0;  // 11 + 6 sqrt(2) = (3 + sqrt(2))^2
  double improvement = 0;
  bool strict = false;
};

BoundComparison compare_with_prior_bound();

/// The concrete isometrically-square setting on finitely supported sequences.
///
/// X = Y = c_00 with the sup norm. X' = Y' are the even-indexed coordinates,
/// P = R zero the odd coordinates, E = ker P and F = ker R are the
/// odd-indexed coordinates. theta: X -> Y' and eta: Y -> X' spread onto the
/// even coordinates; phi = (phi_1, phi_2) and psi = (psi_1, psi_2) split a
/// sequence into its even and odd parts. Elements of three-fold l_inf-sums are
/// stored interleaved: component c at position i sits at index 3i + c.
struct SquareSystem {
  SeqOperator p, r;
  SeqOperator theta, theta_inv;  // theta_inv is theta^{-1} o R
  SeqOperator eta, eta_inv;      // eta_inv is eta^{-1} o P
  SeqOperator phi1, phi2, phi_inv_first, phi_inv_second;
  SeqOperator psi1, psi2, psi_inv_first, psi_inv_second;
  SeqOperator inject[3];   // component c -> triple
  SeqOperator project[3];  // triple -> component c
};

SquareSystem make_square_system();

struct BMModel {
  BMParameterSet params;
  SquareSystem system;
  SeqOperator t, s, u;
  SeqOperator t_inv, s_inv, u_inv;
  SeqOperator w, w_inv;  // U_a S T_a and T_a^{-1} S^{-1} U_a^{-1}
  Rat bound;             // K(a)
};

/// Assembles T_a, S, U_a and their inverses from the coordinate formulas.
/// Throws NonExactParameter unless 2a+1 is a rational square, and
/// InvalidArgument for a <= 0.
BMModel build_model(const Rat& a);

/// True iff W_inv(W(e_j)) = e_j and W(W_inv(e_j)) = e_j for j < basis_count.
bool verify_inverse(const SeqOperator& w, const SeqOperator& w_inv, std::size_t basis_count);

}  // namespace linfproj
