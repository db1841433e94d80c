#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "linfproj/rat.hpp"
#include "linfproj/subspace.hpp"
#include "linfproj/zero_sum.hpp"

namespace linfproj {

struct ScheduleEntry {
  std::size_t k = 0;
  Rat lambda_k;          // mu_N^k * alpha
  std::string ambient;   // e.g. "(ℓ∞)^(5^1)"
};

/// Parameters that realize a target constant lambda as mu_N^m * alpha with a
/// base constant alpha in (1, 2].
struct AmplificationPlan {
  Rat lambda_target;
  unsigned m = 0;
  std::optional<std::size_t> copies;  // N; absent when m == 0
  std::optional<Rat> mu;              // mu_N
  Rat alpha;
  std::vector<ScheduleEntry> schedule;  // m + 1 entries, k = 0..m
};

/// For lambda > 2: m is the integer with 2^m <= lambda < 2^{m+1}, N the
/// smallest integer >= 3 with mu_N^m > lambda/2, alpha = lambda / mu_N^m.
/// For lambda in (1, 2]: m = 0 and alpha = lambda. Throws InvalidArgument for
/// lambda <= 1.
AmplificationPlan plan_parameters(const Rat& lambda);

/// A plan with caller-chosen N >= 2 and m, used for demonstrations whose base
/// constant is known: lambda_target = mu_N^m * alpha. None of the planner's
/// range conditions are imposed.
AmplificationPlan adhoc_plan(const Rat& alpha, std::size_t copies, unsigned m);

/// Re-checks every plan inequality exactly. Used by tests and the CLI.
bool plan_is_consistent(const AmplificationPlan& plan);

struct CertifiedStep {
  std::size_t k = 0;
  std::size_t ambient_dim = 0;
  std::size_t dim = 0;
  Rat expected;                  // mu_N^k * alpha
  std::optional<Rat> certified;  // exact LP value, absent when over budget
  bool equal = false;
};

struct ScheduleReport {
  Rat base_lambda;
  std::vector<CertifiedStep> steps;  // k = 1..max_steps (or fewer if truncated)
  bool truncated = false;
};

/// Builds Y_k = Sigma_N(Y_{k-1}) from Y_0 = e0 and certifies
/// lambda(Y_k) = mu_N^k * alpha by exact LP for k = 1..max_steps.
/// Throws BaseMismatchError when lambda(e0) != alpha and InvalidArgument when
/// max_steps > m or the plan has no N but max_steps > 0. Steps beyond the LP
/// budget are not attempted and the report is flagged truncated.
ScheduleReport demonstrate_schedule(const Subspace& e0, const AmplificationPlan& plan,
                                    std::size_t max_steps, const LpBudget& budget = {});

/// Index tables for the interleaving isometry of K sequences into one:
/// position i of block j goes to index j + K*i.
struct InterleaveTable {
  std::size_t blocks = 0;
  std::size_t index_bound = 0;
  std::vector<std::vector<std::size_t>> forward;  // forward[j][i] = j + K*i
  // inverse[n] = (block, position) of index n < index_bound
  std::vector<std::pair<std::size_t, std::size_t>> inverse;
};

/// Throws InvalidArgument when K == 0 or index_bound < K.
InterleaveTable interleave_isometry(std::size_t blocks, std::size_t index_bound);

/// Applies the interleaving to K finitely supported sequences given as dense
/// prefixes; the output has length K * max(prefix length).
Vec interleave(const InterleaveTable& table, const std::vector<Vec>& sequences);

}  // namespace linfproj
