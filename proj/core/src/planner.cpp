#include "linfproj/planner.hpp"

#include <algorithm>

#include "linfproj/errors.hpp"
#include "linfproj/projection_lp.hpp"

namespace linfproj {
namespace {

std::string ambient_label(std::size_t copies, std::size_t k) {
  return "(ℓ∞)^(" + std::to_string(copies) + "^" + std::to_string(k) + ")";
}

void fill_schedule(AmplificationPlan& plan) {
  plan.schedule.clear();
  for (unsigned k = 0; k <= plan.m; ++k) {
    ScheduleEntry e;
    e.k = k;
    e.lambda_k = plan.mu ? pow(*plan.mu, k) * plan.alpha : plan.alpha;
    e.ambient = plan.copies ? ambient_label(*plan.copies, k) : "ℓ∞";
    plan.schedule.push_back(std::move(e));
  }
}

}  // namespace

AmplificationPlan plan_parameters(const Rat& lambda) {
  if (lambda <= Rat(1)) {
    throw InvalidArgument("target constant must exceed 1, got " + lambda.to_string());
  }
  AmplificationPlan plan;
  plan.lambda_target = lambda;
  if (lambda <= Rat(2)) {
    plan.alpha = lambda;
    fill_schedule(plan);
    return plan;
  }

  unsigned m = 1;
  while (pow(Rat(2), m + 1) <= lambda) ++m;
  const Rat half = lambda / Rat(2);
  std::size_t copies = 3;
  // Terminates: mu_N^m -> 2^m > lambda/2 as N grows.
  while (pow(centring_norm(copies), m) <= half) ++copies;

  plan.m = m;
  plan.copies = copies;
  plan.mu = centring_norm(copies);
  plan.alpha = lambda / pow(*plan.mu, m);
  fill_schedule(plan);
  return plan;
}

AmplificationPlan adhoc_plan(const Rat& alpha, std::size_t copies, unsigned m) {
  AmplificationPlan plan;
  plan.m = m;
  plan.copies = copies;
  plan.mu = centring_norm(copies);
  plan.alpha = alpha;
  plan.lambda_target = pow(*plan.mu, m) * alpha;
  fill_schedule(plan);
  return plan;
}

bool plan_is_consistent(const AmplificationPlan& plan) {
  const Rat& lambda = plan.lambda_target;
  if (plan.schedule.size() != plan.m + 1) return false;
  if (plan.schedule.front().lambda_k != plan.alpha) return false;
  if (plan.schedule.back().lambda_k != lambda) return false;
  if (plan.m == 0) {
    return Rat(1) < lambda && lambda <= Rat(2) && plan.alpha == lambda;
  }
  if (!plan.copies || !plan.mu || *plan.copies < 3) return false;
  const Rat mu_m = pow(*plan.mu, plan.m);
  const bool ok = pow(Rat(2), plan.m) <= lambda && lambda < pow(Rat(2), plan.m + 1) &&
                  mu_m > lambda / Rat(2) && mu_m < lambda && Rat(1) < plan.alpha &&
                  plan.alpha <= Rat(2) && mu_m * plan.alpha == lambda;
  if (!ok) return false;
  // Minimality of N.
  if (*plan.copies > 3 && pow(centring_norm(*plan.copies - 1), plan.m) > lambda / Rat(2)) {
    return false;
  }
  return true;
}

ScheduleReport demonstrate_schedule(const Subspace& e0, const AmplificationPlan& plan,
                                    std::size_t max_steps, const LpBudget& budget) {
  if (max_steps > plan.m) {
    throw InvalidArgument("max_steps exceeds the plan's m = " + std::to_string(plan.m));
  }
  if (max_steps > 0 && !plan.copies) {
    throw InvalidArgument("plan has no copy count N");
  }
  if (!budget.admits(e0)) throw BudgetExceeded("base subspace exceeds the LP budget");

  ScheduleReport rep;
  rep.base_lambda = projection_constant(e0).lambda;
  if (rep.base_lambda != plan.alpha) {
    throw BaseMismatchError("base subspace has constant " + rep.base_lambda.to_string() +
                            ", plan needs alpha = " + plan.alpha.to_string());
  }

  Subspace current = e0;
  for (std::size_t k = 1; k <= max_steps; ++k) {
    current = sigma_subspace(current, *plan.copies).space;
    CertifiedStep step;
    step.k = k;
    step.ambient_dim = current.ambient_dim();
    step.dim = current.dim();
    step.expected = plan.schedule[k].lambda_k;
    if (!budget.admits(current)) {
      rep.truncated = true;
      rep.steps.push_back(std::move(step));
      break;
    }
    step.certified = projection_constant(current).lambda;
    step.equal = *step.certified == step.expected;
    rep.steps.push_back(std::move(step));
  }
  return rep;
}

InterleaveTable interleave_isometry(std::size_t blocks, std::size_t index_bound) {
  if (blocks == 0) throw InvalidArgument("need at least one block");
  if (index_bound < blocks) throw InvalidArgument("index bound must be at least K");
  InterleaveTable t;
  t.blocks = blocks;
  t.index_bound = index_bound;
  t.forward.resize(blocks);
  t.inverse.resize(index_bound);
  for (std::size_t n = 0; n < index_bound; ++n) {
    const std::size_t j = n % blocks;
    const std::size_t i = n / blocks;
    t.forward[j].push_back(n);
    t.inverse[n] = {j, i};
  }
  return t;
}

Vec interleave(const InterleaveTable& table, const std::vector<Vec>& sequences) {
  if (sequences.size() != table.blocks) {
    throw DimensionError("expected " + std::to_string(table.blocks) + " sequences");
  }
  std::size_t len = 0;
  for (const auto& s : sequences) len = std::max(len, s.size());
  Vec out(len * table.blocks);
  for (std::size_t j = 0; j < table.blocks; ++j)
    for (std::size_t i = 0; i < sequences[j].size(); ++i)
      out[j + table.blocks * i] = sequences[j][i];
  return out;
}

}  // namespace linfproj
