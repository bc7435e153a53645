#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cloudsched/metrics.hpp"
#include "cloudsched/model.hpp"

namespace cloudsched {

namespace detail {

inline void validate_plan(const Scenario& scenario, const AssignmentPlan& plan) {
  std::vector<bool> seen(scenario.cloudlets.size(), false);
  for (const auto& step : plan.steps) {
    if (step.cloudlet_id >= scenario.cloudlets.size())
      throw std::invalid_argument("plan: unknown cloudlet id " + std::to_string(step.cloudlet_id));
    if (step.vm_id >= scenario.vms.size())
      throw std::invalid_argument("plan: unknown vm id " + std::to_string(step.vm_id));
    if (seen[step.cloudlet_id])
      throw std::invalid_argument("plan: cloudlet " + std::to_string(step.cloudlet_id) +
                                  " assigned twice");
    seen[step.cloudlet_id] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw std::invalid_argument("plan: cloudlet " + std::to_string(i) + " missing");
}

}  // namespace detail

/// Run-to-completion execution: on each VM the assigned cloudlets run
/// serially in plan order, with no idle gaps.
inline Schedule run_space_shared(const Scenario& scenario, const AssignmentPlan& plan) {
  validate_scenario(scenario);
  detail::validate_plan(scenario, plan);
  std::vector<Rational> vm_finish(scenario.vms.size());
  Schedule schedule;
  schedule.mode = ExecutionMode::SpaceShared;
  schedule.entries.reserve(plan.steps.size());
  for (const auto& step : plan.steps) {
    const Rational start = vm_finish[step.vm_id];
    const Rational finish =
        start + scenario.cloudlets[step.cloudlet_id].file_size / scenario.vms[step.vm_id].mips;
    vm_finish[step.vm_id] = finish;
    schedule.entries.push_back({step.cloudlet_id, step.vm_id, start, finish});
  }
  schedule.makespan = makespan(schedule);
  return schedule;
}

/// Ideal egalitarian processor sharing: every cloudlet bound to a VM starts
/// at t = 0 and the VM's rate is split equally among its unfinished
/// cloudlets. Finish times are found by stepping from completion event to
/// completion event; between events all remaining sizes shrink at the same
/// rate.
inline Schedule run_time_shared(const Scenario& scenario, const AssignmentPlan& plan) {
  validate_scenario(scenario);
  detail::validate_plan(scenario, plan);

  std::vector<Rational> finish_of(scenario.cloudlets.size());
  std::vector<std::vector<std::size_t>> on_vm(scenario.vms.size());
  for (const auto& step : plan.steps) on_vm[step.vm_id].push_back(step.cloudlet_id);

  for (std::size_t j = 0; j < on_vm.size(); ++j) {
    std::vector<std::pair<std::size_t, Rational>> active;  // (cloudlet, remaining work)
    active.reserve(on_vm[j].size());
    for (const std::size_t i : on_vm[j]) active.emplace_back(i, scenario.cloudlets[i].file_size);
    Rational now = 0;
    while (!active.empty()) {
      Rational least = active.front().second;
      for (const auto& [_, rem] : active) least = std::min(least, rem);
      // all of `least` drains from every task while n tasks share the rate
      now += least * static_cast<int>(active.size()) / scenario.vms[j].mips;
      std::vector<std::pair<std::size_t, Rational>> still;
      still.reserve(active.size());
      for (auto& [i, rem] : active) {
        rem -= least;
        if (rem == 0)
          finish_of[i] = now;
        else
          still.emplace_back(i, std::move(rem));
      }
      active = std::move(still);
    }
  }

  Schedule schedule;
  schedule.mode = ExecutionMode::TimeShared;
  schedule.entries.reserve(plan.steps.size());
  for (const auto& step : plan.steps)
    schedule.entries.push_back({step.cloudlet_id, step.vm_id, Rational(0), finish_of[step.cloudlet_id]});
  schedule.makespan = makespan(schedule);
  return schedule;
}

inline Schedule run(const Scenario& scenario, const AssignmentPlan& plan, ExecutionMode mode) {
  return mode == ExecutionMode::SpaceShared ? run_space_shared(scenario, plan)
                                            : run_time_shared(scenario, plan);
}

}  // namespace cloudsched
