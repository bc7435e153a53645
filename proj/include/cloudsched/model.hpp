#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cloudsched/rational.hpp"

namespace cloudsched {

// Invalid scenario description (validation or parsing). Messages name the
// offending field.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A task, characterized by the amount of work it carries.
struct Cloudlet {
  std::size_t id = 0;  // arrival order, contiguous from 0
  Rational file_size;  // work units, > 0
  bool operator==(const Cloudlet&) const = default;
};

/// A machine, characterized by its processing rate.
struct VirtualMachine {
  std::size_t id = 0;  // instantiation order, contiguous from 0
  Rational mips;       // work units per second, > 0
  bool operator==(const VirtualMachine&) const = default;
};

// Descriptive metadata only; no capacity algorithm consumes it.
struct HostInfo {
  std::int64_t count = 0;
  std::int64_t ram_mb = 0;
  bool operator==(const HostInfo&) const = default;
};

/// A static workload: the full set of VMs and tasks is known up front and
/// never changes during a run.
struct Scenario {
  std::vector<VirtualMachine> vms;
  std::vector<Cloudlet> cloudlets;
  std::optional<HostInfo> hosts;
  bool operator==(const Scenario&) const = default;
};

inline Scenario make_scenario(std::vector<Rational> mips, std::vector<Rational> sizes) {
  Scenario s;
  s.vms.reserve(mips.size());
  for (std::size_t j = 0; j < mips.size(); ++j) s.vms.push_back({j, std::move(mips[j])});
  s.cloudlets.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) s.cloudlets.push_back({i, std::move(sizes[i])});
  return s;
}

/// Throws ScenarioError naming the offending field. A valid scenario has at
/// least one VM, positive rates and sizes, and ids matching positions.
inline void validate_scenario(const Scenario& s) {
  if (s.vms.empty()) throw ScenarioError("vms: at least one VM is required");
  for (std::size_t j = 0; j < s.vms.size(); ++j) {
    const std::string at = "vms[" + std::to_string(j) + "]";
    if (s.vms[j].id != j)
      throw ScenarioError(at + ".id: expected " + std::to_string(j) + ", got " +
                          std::to_string(s.vms[j].id));
    if (s.vms[j].mips <= 0) throw ScenarioError(at + ".mips: must be positive");
  }
  for (std::size_t i = 0; i < s.cloudlets.size(); ++i) {
    const std::string at = "cloudlets[" + std::to_string(i) + "]";
    if (s.cloudlets[i].id != i)
      throw ScenarioError(at + ".id: expected " + std::to_string(i) + ", got " +
                          std::to_string(s.cloudlets[i].id));
    if (s.cloudlets[i].file_size <= 0) throw ScenarioError(at + ".file_size: must be positive");
  }
  if (s.hosts) {
    if (s.hosts->count <= 0) throw ScenarioError("hosts.count: must be positive");
    if (s.hosts->ram_mb <= 0) throw ScenarioError("hosts.ram_mb: must be positive");
  }
}

/// Which rule bound a cloudlet to its VM.
enum class DecidedBy { Fcfs, MinMin, MaxMin, Exhaustive };

inline const char* to_string(DecidedBy d) {
  switch (d) {
    case DecidedBy::Fcfs: return "fcfs";
    case DecidedBy::MinMin: return "min-min";
    case DecidedBy::MaxMin: return "max-min";
    case DecidedBy::Exhaustive: return "exhaustive";
  }
  return "?";
}

/// Dispersion statistics over the best completion times of the unallocated
/// cloudlets. The gap location l is 1-based: it names the left element of the
/// first consecutive pair whose difference exceeds the standard deviation.
struct GapAnalysis {
  std::vector<Rational> sorted_best_comps;  // ascending, one per unallocated cloudlet
  Rational mean;
  Rational variance;  // exact; sd() is its square root
  std::optional<std::size_t> gap_location;

  double sd() const { return std::sqrt(to_double(variance)); }
  bool operator==(const GapAnalysis&) const = default;
};

/// Outcome of one chooser step: which half the gap fell in (or the
/// sd-vs-mean fallback) and which heuristic that selects.
enum class StepCase { GapUpperMinMin, GapLowerMaxMin, NoGapMinMin, NoGapMaxMin };

inline const char* to_string(StepCase c) {
  switch (c) {
    case StepCase::GapUpperMinMin: return "gap-upper-min-min";
    case StepCase::GapLowerMaxMin: return "gap-lower-max-min";
    case StepCase::NoGapMinMin: return "no-gap-min-min";
    case StepCase::NoGapMaxMin: return "no-gap-max-min";
  }
  return "?";
}

struct StepDecision {
  StepCase case_taken = StepCase::NoGapMinMin;
  GapAnalysis gap;  // snapshot over the unallocated set at this step
  std::size_t c_remaining = 0;
  bool operator==(const StepDecision&) const = default;
};

struct PlanStep {
  std::size_t cloudlet_id = 0;
  std::size_t vm_id = 0;
  DecidedBy decided_by = DecidedBy::Fcfs;
  Rational predicted_completion;
  std::optional<StepDecision> decision;  // recorded by the selective policy
  bool operator==(const PlanStep&) const = default;
};

/// Ordered cloudlet -> VM bindings, one step per allocation loop iteration.
/// Every cloudlet of the scenario appears in exactly one step.
struct AssignmentPlan {
  std::vector<PlanStep> steps;
  bool operator==(const AssignmentPlan&) const = default;
};

/// The (cloudlet, vm) sequence with all annotations stripped.
inline std::vector<std::pair<std::size_t, std::size_t>> bindings(const AssignmentPlan& plan) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(plan.steps.size());
  for (const auto& s : plan.steps) out.emplace_back(s.cloudlet_id, s.vm_id);
  return out;
}

enum class ExecutionMode { SpaceShared, TimeShared };

inline const char* to_string(ExecutionMode m) {
  return m == ExecutionMode::SpaceShared ? "space" : "time";
}

struct ScheduleEntry {
  std::size_t cloudlet_id = 0;
  std::size_t vm_id = 0;
  Rational start;
  Rational finish;
  bool operator==(const ScheduleEntry&) const = default;
};

/// Realized start/finish times under an execution mode.
struct Schedule {
  std::vector<ScheduleEntry> entries;
  ExecutionMode mode = ExecutionMode::SpaceShared;
  Rational makespan;  // max finish over entries, 0 when empty
  bool operator==(const Schedule&) const = default;
};

}  // namespace cloudsched
