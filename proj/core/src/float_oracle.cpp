#include "linfproj/float_oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "linfproj/errors.hpp"

namespace linfproj {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Affine parametrization P(Z) = P0 + Bt * Z * Nt of all projections onto E.
struct Problem {
  MatrixXd bt;  // n x k
  MatrixXd nt;  // (n-k) x n
  MatrixXd p0;  // n x n
  Eigen::Index k = 0;
  Eigen::Index q = 0;  // n - k

  [[nodiscard]] MatrixXd projection(const MatrixXd& z) const {
    return p0 + bt * z * nt;
  }

  [[nodiscard]] static double objective(const MatrixXd& p) {
    return p.cwiseAbs().rowwise().sum().maxCoeff();
  }

  // Smoothed objective and its gradient with respect to Z.
  double smooth(const MatrixXd& z, double beta, MatrixXd* grad) const {
    const MatrixXd p = projection(z);
    const MatrixXd soft = (p.array().square() + beta * beta).sqrt().matrix();
    const VectorXd r = soft.rowwise().sum();
    const double rmax = r.maxCoeff();
    const VectorXd e = ((r.array() - rmax) / beta).exp().matrix();
    const double total = e.sum();
    if (grad != nullptr) {
      const VectorXd w = e / total;
      const MatrixXd g = w.asDiagonal() * p.cwiseQuotient(soft);
      *grad = bt.transpose() * g * nt.transpose();
    }
    return rmax + beta * std::log(total);
  }
};

Problem make_problem(const Subspace& s) {
  const auto n = static_cast<Eigen::Index>(s.ambient_dim());
  const auto k = static_cast<Eigen::Index>(s.dim());
  MatrixXd b(k, n);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      b(i, j) = s.basis()(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).to_double();

  Problem pr;
  pr.k = k;
  pr.q = n - k;
  pr.bt = b.transpose();
  // C0 = (B B^T)^{-1} B satisfies C0 B^T = I.
  const MatrixXd c0 = (b * b.transpose()).ldlt().solve(b);
  pr.p0 = pr.bt * c0;
  // Orthonormal basis of E^perp from a full QR of B^T.
  Eigen::HouseholderQR<MatrixXd> qr(pr.bt);
  const MatrixXd qfull = qr.householderQ() * MatrixXd::Identity(n, n);
  pr.nt = qfull.rightCols(pr.q).transpose();
  return pr;
}

// FISTA with backtracking and adaptive restart on one smoothing level.
MatrixXd minimize_smooth(const Problem& pr, MatrixXd z, double beta, int iters) {
  double step = beta;
  MatrixXd y = z;
  double theta = 1.0;
  double fz = pr.smooth(z, beta, nullptr);
  MatrixXd grad;
  for (int it = 0; it < iters; ++it) {
    const double fy = pr.smooth(y, beta, &grad);
    const double gnorm2 = grad.squaredNorm();
    if (gnorm2 < 1e-30) break;
    MatrixXd next;
    double fnext = 0.0;
    for (;;) {
      next = y - step * grad;
      fnext = pr.smooth(next, beta, nullptr);
      if (fnext <= fy - 0.5 * step * gnorm2 || step < 1e-16) break;
      step *= 0.5;
    }
    if (fnext > fz) {
      // Momentum overshoot: restart from the last accepted iterate.
      y = z;
      theta = 1.0;
      continue;
    }
    const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    y = next + ((theta - 1.0) / theta_next) * (next - z);
    z = std::move(next);
    fz = fnext;
    theta = theta_next;
    step *= 1.5;
  }
  return z;
}

MatrixXd descend(const Problem& pr, MatrixXd z, int iters) {
  for (double beta = 1.0; beta >= 1e-7; beta *= 0.1) {
    z = minimize_smooth(pr, std::move(z), beta, iters);
  }
  return z;
}

// Projects (z, t) onto the affine set on which the guessed entries vanish and
// the guessed rows attain the common value t.
double polish(const Problem& pr, const MatrixXd& z, double threshold) {
  const MatrixXd p = pr.projection(z);
  const auto n = p.rows();
  const VectorXd r = p.cwiseAbs().rowwise().sum();
  const double f = r.maxCoeff();
  const Eigen::Index nz = pr.k * pr.q;  // unknowns: vec(Z) then t

  // Coefficient of Z(l, c) in P(i, j) is Bt(i, l) * Nt(c, j).
  auto entry_row = [&](Eigen::Index i, Eigen::Index j) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nz + 1);
    for (Eigen::Index l = 0; l < pr.k; ++l)
      for (Eigen::Index c = 0; c < pr.q; ++c) row(l * pr.q + c) = pr.bt(i, l) * pr.nt(c, j);
    return row;
  };

  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(p(i, j)) < threshold) {
        rows.push_back(entry_row(i, j));
        rhs.push_back(-pr.p0(i, j));
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r(i) < f - threshold * static_cast<double>(n)) continue;
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nz + 1);
    double constant = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(p(i, j)) < threshold) continue;
      const double s = p(i, j) > 0 ? 1.0 : -1.0;
      row += s * entry_row(i, j);
      constant += s * pr.p0(i, j);
    }
    row(nz) = -1.0;
    rows.push_back(row);
    rhs.push_back(-constant);
  }
  if (rows.empty()) return f;

  MatrixXd a(static_cast<Eigen::Index>(rows.size()), nz + 1);
  VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) = rows[i];
    b(static_cast<Eigen::Index>(i)) = rhs[i];
  }
  VectorXd x0(nz + 1);
  for (Eigen::Index l = 0; l < pr.k; ++l)
    for (Eigen::Index c = 0; c < pr.q; ++c) x0(l * pr.q + c) = z(l, c);
  x0(nz) = f;

  const VectorXd dx = a.completeOrthogonalDecomposition().solve(b - a * x0);
  const VectorXd x = x0 + dx;
  MatrixXd zp(pr.k, pr.q);
  for (Eigen::Index l = 0; l < pr.k; ++l)
    for (Eigen::Index c = 0; c < pr.q; ++c) zp(l, c) = x(l * pr.q + c);
  const double value = Problem::objective(pr.projection(zp));
  return std::isfinite(value) ? value : f;
}

double solve_from(const Problem& pr, MatrixXd z0, int iters) {
  const MatrixXd z = descend(pr, std::move(z0), iters);
  double best = Problem::objective(pr.projection(z));
  for (double threshold = 1e-2; threshold >= 1e-9; threshold *= 0.1) {
    best = std::min(best, polish(pr, z, threshold));
  }
  return best;
}

}  // namespace

OracleResult float_oracle(const Subspace& s, const OracleOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidArgument("oracle tolerance must be positive");
  OracleResult res;
  if (s.dim() == s.ambient_dim()) {
    res.estimate = 1.0;
    res.converged = true;
    res.agreeing_starts = 1 + options.restarts;
    return res;
  }

  const Problem pr = make_problem(s);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> values;
  values.push_back(solve_from(pr, MatrixXd::Zero(pr.k, pr.q), options.iterations_per_stage));
  for (int r = 0; r < options.restarts; ++r) {
    MatrixXd z0(pr.k, pr.q);
    for (Eigen::Index i = 0; i < z0.size(); ++i) z0(i) = gauss(rng);
    values.push_back(solve_from(pr, std::move(z0), options.iterations_per_stage));
  }

  res.estimate = *std::min_element(values.begin(), values.end());
  res.agreeing_starts = static_cast<int>(std::count_if(
      values.begin(), values.end(),
      [&](double v) { return v - res.estimate <= options.tol * 0.1; }));
  res.converged = res.agreeing_starts >= 2;
  return res;
}

}  // namespace linfproj
