#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cloudsched/metrics.hpp"
#include "cloudsched/model.hpp"

namespace cloudsched {

/// How a completion-time tie between VMs is resolved.
///   FirstInstantiated: the VM created earliest wins (the default rule).
///   MinExecution: the VM with the smaller raw execution time wins, falling
///   back to instantiation order. Kept as a compatibility mode; some
///   published traces are only reachable under it.
enum class TieBreakMode { FirstInstantiated, MinExecution };

enum class Heuristic { MinMin, MaxMin };

/// Counts of the work done by an allocation run, for complexity smoke tests.
struct AllocationStats {
  std::size_t completion_evaluations = 0;  // one per (cloudlet, VM) pair examined
};

namespace detail {

struct BestCompletion {
  std::size_t cloudlet_id;
  std::size_t vm_id;
  Rational completion;
};

// Mutable loop state shared by every greedy policy: execution times are fixed,
// ready times grow, the unallocated set shrinks.
class AllocationState {
 public:
  AllocationState(const Scenario& scenario, AllocationStats* stats)
      : exe_(execution_matrix(scenario)), ready_(scenario.vms.size()), stats_(stats) {
    remaining_.resize(scenario.cloudlets.size());
    for (std::size_t i = 0; i < remaining_.size(); ++i) remaining_[i] = i;
  }

  bool done() const { return remaining_.empty(); }
  std::size_t remaining_count() const { return remaining_.size(); }
  const ExecutionMatrix& exe() const { return exe_; }

  // Orders the unallocated list by minimum execution time across VMs,
  // ascending. Purely an iteration-order convention; picks below compare by
  // (completion, id) and do not depend on it.
  void sort_remaining_by_min_execution() {
    std::stable_sort(remaining_.begin(), remaining_.end(), [&](std::size_t a, std::size_t b) {
      return std::pair(min_execution(a), a) < std::pair(min_execution(b), b);
    });
  }

  // Best completion of every unallocated cloudlet on the current ready times.
  std::vector<BestCompletion> best_completions(TieBreakMode tie) const {
    std::vector<BestCompletion> out;
    out.reserve(remaining_.size());
    for (const std::size_t i : remaining_) out.push_back(best_completion(i, tie));
    return out;
  }

  // One allocation step of the given heuristic: bind the chosen cloudlet to
  // its best VM and advance that VM's ready time. Cloudlet ties break toward
  // the lower id.
  PlanStep take_step(const std::vector<BestCompletion>& bests, Heuristic h, DecidedBy attributed) {
    const BestCompletion* chosen = &bests.front();
    for (const auto& b : bests) {
      const bool better = h == Heuristic::MinMin
                              ? std::pair(b.completion, b.cloudlet_id) <
                                    std::pair(chosen->completion, chosen->cloudlet_id)
                              : b.completion > chosen->completion ||
                                    (b.completion == chosen->completion &&
                                     b.cloudlet_id < chosen->cloudlet_id);
      if (better) chosen = &b;
    }
    PlanStep step{chosen->cloudlet_id, chosen->vm_id, attributed, chosen->completion, std::nullopt};
    ready_.ready[chosen->vm_id] += exe_.at(chosen->cloudlet_id, chosen->vm_id);
    remaining_.erase(std::find(remaining_.begin(), remaining_.end(), chosen->cloudlet_id));
    return step;
  }

 private:
  Rational min_execution(std::size_t cloudlet) const {
    Rational best = exe_.at(cloudlet, 0);
    for (std::size_t j = 1; j < exe_.vm_count; ++j) best = std::min(best, exe_.at(cloudlet, j));
    return best;
  }

  BestCompletion best_completion(std::size_t cloudlet, TieBreakMode tie) const {
    std::size_t best_vm = 0;
    Rational best = exe_.at(cloudlet, 0) + ready_.ready[0];
    for (std::size_t j = 1; j < exe_.vm_count; ++j) {
      const Rational comp = exe_.at(cloudlet, j) + ready_.ready[j];
      if (comp < best) {
        best = comp;
        best_vm = j;
      } else if (comp == best && tie == TieBreakMode::MinExecution &&
                 exe_.at(cloudlet, j) < exe_.at(cloudlet, best_vm)) {
        best_vm = j;
      }
    }
    if (stats_) stats_->completion_evaluations += exe_.vm_count;
    return {cloudlet, best_vm, best};
  }

  ExecutionMatrix exe_;
  VmReadyTimes ready_;
  std::vector<std::size_t> remaining_;
  AllocationStats* stats_;
};

inline AssignmentPlan greedy_allocate(const Scenario& scenario, Heuristic h, DecidedBy attributed,
                                      TieBreakMode tie, AllocationStats* stats) {
  AllocationState state(scenario, stats);
  AssignmentPlan plan;
  plan.steps.reserve(scenario.cloudlets.size());
  while (!state.done()) plan.steps.push_back(state.take_step(state.best_completions(tie), h, attributed));
  return plan;
}

}  // namespace detail

/// Baseline: cloudlet i goes to VM (i mod v), in arrival order.
inline AssignmentPlan fcfs_allocate(const Scenario& scenario) {
  const ExecutionMatrix exe = execution_matrix(scenario);
  VmReadyTimes ready(scenario.vms.size());
  AssignmentPlan plan;
  plan.steps.reserve(scenario.cloudlets.size());
  for (std::size_t i = 0; i < scenario.cloudlets.size(); ++i) {
    const std::size_t j = i % scenario.vms.size();
    ready.ready[j] += exe.at(i, j);
    plan.steps.push_back({i, j, DecidedBy::Fcfs, ready.ready[j], std::nullopt});
  }
  return plan;
}

/// Each round, allocate the cloudlet with the smallest best completion time
/// to the VM achieving it.
inline AssignmentPlan min_min_allocate(const Scenario& scenario,
                                       TieBreakMode tie = TieBreakMode::FirstInstantiated,
                                       AllocationStats* stats = nullptr) {
  return detail::greedy_allocate(scenario, Heuristic::MinMin, DecidedBy::MinMin, tie, stats);
}

/// Each round, allocate the cloudlet whose best completion time is largest,
/// still binding it to the VM achieving that best time.
inline AssignmentPlan max_min_allocate(const Scenario& scenario,
                                       TieBreakMode tie = TieBreakMode::FirstInstantiated,
                                       AllocationStats* stats = nullptr) {
  return detail::greedy_allocate(scenario, Heuristic::MaxMin, DecidedBy::MaxMin, tie, stats);
}

/// The per-step chooser. With a gap in the sorted completion list, its
/// location decides: in the upper half (l < c/2) the list is mostly long
/// tasks and min-min wins; otherwise max-min. With no gap the list is
/// homogeneous and sd-vs-mean decides, favoring min-min for small spreads.
inline StepDecision classify_step(GapAnalysis gap, std::size_t c_remaining) {
  StepCase c;
  if (gap.gap_location) {
    c = 2 * *gap.gap_location < c_remaining ? StepCase::GapUpperMinMin : StepCase::GapLowerMaxMin;
  } else {
    // sd < mean, compared exactly as variance < mean^2 (both sides nonneg)
    const bool small_spread = gap.mean > 0 && gap.variance < gap.mean * gap.mean;
    c = small_spread ? StepCase::NoGapMinMin : StepCase::NoGapMaxMin;
  }
  return {c, std::move(gap), c_remaining};
}

inline Heuristic heuristic_of(StepCase c) {
  return c == StepCase::GapUpperMinMin || c == StepCase::NoGapMinMin ? Heuristic::MinMin
                                                                     : Heuristic::MaxMin;
}

/// Per iteration: recompute the best completion times of the unallocated
/// cloudlets, analyze their dispersion, let classify_step choose min-min or
/// max-min, and run exactly one step of the chosen heuristic. The decision
/// snapshot is recorded on the step.
inline AssignmentPlan selective_allocate(const Scenario& scenario,
                                         TieBreakMode tie = TieBreakMode::FirstInstantiated,
                                         AllocationStats* stats = nullptr) {
  detail::AllocationState state(scenario, stats);
  state.sort_remaining_by_min_execution();
  AssignmentPlan plan;
  plan.steps.reserve(scenario.cloudlets.size());
  while (!state.done()) {
    const auto bests = state.best_completions(tie);
    std::vector<Rational> values;
    values.reserve(bests.size());
    for (const auto& b : bests) values.push_back(b.completion);
    StepDecision decision = classify_step(gap_analysis(std::move(values)), state.remaining_count());
    const Heuristic h = heuristic_of(decision.case_taken);
    PlanStep step = state.take_step(
        bests, h, h == Heuristic::MinMin ? DecidedBy::MinMin : DecidedBy::MaxMin);
    step.decision = std::move(decision);
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

/// Re-runs an allocation with the per-step heuristic choices fixed up front,
/// e.g. the choices recorded by a previous selective run.
inline AssignmentPlan replay_allocate(const Scenario& scenario, std::span<const Heuristic> script,
                                      TieBreakMode tie = TieBreakMode::FirstInstantiated) {
  if (script.size() != scenario.cloudlets.size())
    throw std::invalid_argument("replay_allocate: script length != cloudlet count");
  detail::AllocationState state(scenario, nullptr);
  AssignmentPlan plan;
  plan.steps.reserve(script.size());
  for (const Heuristic h : script)
    plan.steps.push_back(state.take_step(
        state.best_completions(tie), h,
        h == Heuristic::MinMin ? DecidedBy::MinMin : DecidedBy::MaxMin));
  return plan;
}

}  // namespace cloudsched
