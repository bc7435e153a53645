#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cloudsched/model.hpp"

namespace cloudsched {

// Instance too large to enumerate; callers should sample or skip.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  AssignmentPlan plan;
  Rational makespan;
};

constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

/// Exhaustive ground truth for small instances: enumerates all v^c
/// cloudlet -> VM maps and returns one minimizing the space-shared makespan
/// (order within a VM does not affect it). Ties break toward the
/// lexicographically smallest assignment vector.
inline OracleResult optimal_assignment(const Scenario& scenario,
                                       std::uint64_t budget = kDefaultOracleBudget) {
  validate_scenario(scenario);
  const std::size_t c = scenario.cloudlets.size();
  const std::size_t v = scenario.vms.size();

  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < c; ++i) {
    if (combos > budget / v)
      throw BudgetExceeded("optimal_assignment: " + std::to_string(v) + "^" + std::to_string(c) +
                           " assignments exceed budget " + std::to_string(budget));
    combos *= v;
  }

  // Odometer over assignment vectors, rightmost digit fastest, which is
  // lexicographic order; keeping the first strict improvement yields the
  // lexicographically smallest optimum.
  std::vector<std::size_t> assign(c, 0);
  std::vector<Rational> finish(v, Rational(0));  // per-VM load / mips
  for (std::size_t i = 0; i < c; ++i)
    finish[0] += scenario.cloudlets[i].file_size / scenario.vms[0].mips;

  const auto current_makespan = [&] {
    Rational m = 0;
    for (const auto& f : finish) m = std::max(m, f);
    return m;
  };

  Rational best = current_makespan();
  std::vector<std::size_t> best_assign = assign;
  for (std::uint64_t step = 1; step < combos; ++step) {
    // increment the odometer, updating only the VMs whose load changed
    std::size_t pos = c;
    while (pos-- > 0) {
      const std::size_t i = pos;
      const Rational& size = scenario.cloudlets[i].file_size;
      finish[assign[i]] -= size / scenario.vms[assign[i]].mips;
      if (assign[i] + 1 < v) {
        ++assign[i];
        finish[assign[i]] += size / scenario.vms[assign[i]].mips;
        break;
      }
      assign[i] = 0;
      finish[0] += size / scenario.vms[0].mips;
    }
    const Rational m = current_makespan();
    if (m < best) {
      best = m;
      best_assign = assign;
    }
  }

  OracleResult result;
  result.makespan = best;
  result.plan.steps.reserve(c);
  std::vector<Rational> ready(v, Rational(0));
  for (std::size_t i = 0; i < c; ++i) {
    const std::size_t j = best_assign[i];
    ready[j] += scenario.cloudlets[i].file_size / scenario.vms[j].mips;
    result.plan.steps.push_back({i, j, DecidedBy::Exhaustive, ready[j], std::nullopt});
  }
  return result;
}

}  // namespace cloudsched
