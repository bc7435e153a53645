#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cloudsched/model.hpp"

namespace cloudsched {

/// Per-(cloudlet, VM) execution times: values(i, j) = file_size[i] / mips[j].
struct ExecutionMatrix {
  std::size_t cloudlet_count = 0;
  std::size_t vm_count = 0;
  std::vector<Rational> values;  // row-major, cloudlet_count x vm_count

  const Rational& at(std::size_t cloudlet, std::size_t vm) const {
    return values[cloudlet * vm_count + vm];
  }
  bool operator==(const ExecutionMatrix&) const = default;
};

/// ready[j] = instant at which VM j finishes everything assigned so far.
/// Starts at zero and only grows as allocation steps bind work.
struct VmReadyTimes {
  std::vector<Rational> ready;

  explicit VmReadyTimes(std::size_t vm_count = 0) : ready(vm_count) {}
  bool operator==(const VmReadyTimes&) const = default;
};

inline ExecutionMatrix execution_matrix(const Scenario& scenario) {
  validate_scenario(scenario);
  ExecutionMatrix m;
  m.cloudlet_count = scenario.cloudlets.size();
  m.vm_count = scenario.vms.size();
  m.values.reserve(m.cloudlet_count * m.vm_count);
  for (const auto& c : scenario.cloudlets)
    for (const auto& vm : scenario.vms) m.values.push_back(c.file_size / vm.mips);
  return m;
}

/// Expected completion of one cloudlet on every VM: execution time plus the
/// time the VM is still busy with earlier work.
inline std::vector<Rational> completion_row(const ExecutionMatrix& exe, const VmReadyTimes& ready,
                                            std::size_t cloudlet_id) {
  if (cloudlet_id >= exe.cloudlet_count) throw std::out_of_range("completion_row: cloudlet_id");
  std::vector<Rational> row;
  row.reserve(exe.vm_count);
  for (std::size_t j = 0; j < exe.vm_count; ++j) row.push_back(exe.at(cloudlet_id, j) + ready.ready[j]);
  return row;
}

/// Sorts the per-cloudlet best completion times, computes their mean and
/// population variance, and locates the first consecutive gap wider than the
/// standard deviation. Comparisons against sd stay exact by squaring: for
/// d >= 0, d > sqrt(v) iff d*d > v.
inline GapAnalysis gap_analysis(std::vector<Rational> best_comps) {
  if (best_comps.empty()) throw std::logic_error("gap_analysis: empty completion list");
  GapAnalysis g;
  g.sorted_best_comps = std::move(best_comps);
  std::sort(g.sorted_best_comps.begin(), g.sorted_best_comps.end());
  const std::size_t n = g.sorted_best_comps.size();

  Rational sum = 0;
  for (const auto& x : g.sorted_best_comps) sum += x;
  g.mean = sum / static_cast<int>(n);

  Rational sq = 0;
  for (const auto& x : g.sorted_best_comps) {
    const Rational d = x - g.mean;
    sq += d * d;
  }
  g.variance = sq / static_cast<int>(n);

  for (std::size_t k = 1; k < n; ++k) {
    const Rational diff = g.sorted_best_comps[k] - g.sorted_best_comps[k - 1];
    if (diff * diff > g.variance) {
      g.gap_location = k;  // 1-based index of the left element
      break;
    }
  }
  return g;
}

/// Maximum finish time over all entries; zero for an empty schedule.
inline Rational makespan(const Schedule& schedule) {
  Rational m = 0;
  for (const auto& e : schedule.entries) m = std::max(m, e.finish);
  return m;
}

}  // namespace cloudsched
