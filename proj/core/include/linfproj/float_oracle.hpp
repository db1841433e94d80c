#pragma once

#include <cstdint>

#include "linfproj/subspace.hpp"

namespace linfproj {

struct OracleOptions {
  double tol = 1e-6;
  std::uint64_t seed = 0;
  int restarts = 4;              // random starts in addition to the origin
  int iterations_per_stage = 3000;
};

struct OracleResult {
  double estimate = 0.0;  // best max-row-abs-sum found over feasible projections
  bool converged = false;  // at least two starts agreed within tol
  int agreeing_starts = 0;
};

/// Floating-point estimate of lambda(E, l_inf^n) that shares no code path
/// with the exact simplex.
///
/// Projections onto E are parametrized as P(Z) = B^T (C0 + Z N^T), where C0
/// is the least-squares right inverse of B^T and the columns of N span the
/// annihilator of E. The max-row-abs-sum objective is minimized over Z by
/// accelerated gradient descent on a log-sum-exp / Huber smoothing whose
/// parameter is driven towards zero. The final iterate is polished by
/// guessing the active face (vanishing entries, maximal rows) and projecting
/// onto it, which recovers the piecewise-linear minimum to machine precision
/// once the face is right. Every reported value is the true objective of a
/// feasible projection, so the estimate is always an upper bound.
OracleResult float_oracle(const Subspace& s, const OracleOptions& options = {});

}  // namespace linfproj
