#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloudsched/executor.hpp"
#include "cloudsched/oracle.hpp"
#include "cloudsched/policies.hpp"
#include "cloudsched/report.hpp"

namespace cloudsched {

enum class PolicyKind { Fcfs, MinMin, MaxMin, Selective };

inline const char* to_string(PolicyKind p) {
  switch (p) {
    case PolicyKind::Fcfs: return "fcfs";
    case PolicyKind::MinMin: return "minmin";
    case PolicyKind::MaxMin: return "maxmin";
    case PolicyKind::Selective: return "selective";
  }
  return "?";
}

inline std::optional<PolicyKind> policy_from_name(std::string_view name) {
  for (PolicyKind p : {PolicyKind::Fcfs, PolicyKind::MinMin, PolicyKind::MaxMin, PolicyKind::Selective})
    if (name == to_string(p)) return p;
  return std::nullopt;
}

inline std::optional<ExecutionMode> mode_from_name(std::string_view name) {
  if (name == "space") return ExecutionMode::SpaceShared;
  if (name == "time") return ExecutionMode::TimeShared;
  return std::nullopt;
}

inline std::optional<TieBreakMode> tie_break_from_name(std::string_view name) {
  if (name == "first") return TieBreakMode::FirstInstantiated;
  if (name == "min-exec") return TieBreakMode::MinExecution;
  return std::nullopt;
}

inline AssignmentPlan allocate(const Scenario& scenario, PolicyKind policy, TieBreakMode tie) {
  switch (policy) {
    case PolicyKind::Fcfs: return fcfs_allocate(scenario);
    case PolicyKind::MinMin: return min_min_allocate(scenario, tie);
    case PolicyKind::MaxMin: return max_min_allocate(scenario, tie);
    case PolicyKind::Selective: return selective_allocate(scenario, tie);
  }
  throw std::logic_error("unreachable policy kind");
}

/// Allocate with the named policy, execute under the named mode, summarize.
inline RunReport run_command(const Scenario& scenario, PolicyKind policy, ExecutionMode mode,
                             TieBreakMode tie = TieBreakMode::FirstInstantiated) {
  validate_scenario(scenario);
  const AssignmentPlan plan = allocate(scenario, policy, tie);
  return build_report(scenario, plan, run(scenario, plan, mode), to_string(policy));
}

/// The exhaustive optimum, executed under the requested mode.
inline RunReport oracle_command(const Scenario& scenario, ExecutionMode mode,
                                std::uint64_t budget = kDefaultOracleBudget) {
  const OracleResult best = optimal_assignment(scenario, budget);
  return build_report(scenario, best.plan, run(scenario, best.plan, mode), "oracle");
}

struct CompareResult {
  std::vector<RunReport> reports;  // fixed row order: fcfs, minmin, maxmin, selective[, oracle]
  bool oracle_included = false;
};

/// One report per policy plus the oracle row when the instance fits the
/// enumeration budget.
inline CompareResult compare_command(const Scenario& scenario, ExecutionMode mode,
                                     TieBreakMode tie = TieBreakMode::FirstInstantiated,
                                     std::uint64_t budget = kDefaultOracleBudget) {
  validate_scenario(scenario);
  CompareResult result;
  for (PolicyKind p : {PolicyKind::Fcfs, PolicyKind::MinMin, PolicyKind::MaxMin, PolicyKind::Selective})
    result.reports.push_back(run_command(scenario, p, mode, tie));
  try {
    result.reports.push_back(oracle_command(scenario, mode, budget));
    result.oracle_included = true;
  } catch (const BudgetExceeded&) {
    result.oracle_included = false;
  }
  return result;
}

}  // namespace cloudsched
