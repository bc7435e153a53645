#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudsched/model.hpp"
#include "cloudsched/rational.hpp"

namespace cloudsched {

struct VmUsage {
  std::size_t vm_id = 0;
  Rational busy_time;    // sum of execution times of the work placed here
  Rational utilization;  // busy_time / makespan, in [0, 1]
  bool operator==(const VmUsage&) const = default;
};

struct CloudletOutcome {
  std::size_t cloudlet_id = 0;
  std::size_t vm_id = 0;
  Rational start;
  Rational finish;
  bool operator==(const CloudletOutcome&) const = default;
};

struct DecisionRow {
  StepCase case_taken = StepCase::NoGapMinMin;
  std::size_t c_remaining = 0;
  std::optional<std::size_t> gap_location;
  Rational mean;
  Rational sd;
  std::vector<Rational> best_completions;
  bool operator==(const DecisionRow&) const = default;
};

/// Presentation-level run summary. All numeric fields are rounded to the
/// report precision (6 fractional digits) when built, so serializing and
/// reparsing a report reproduces it exactly.
struct RunReport {
  std::string policy;
  ExecutionMode mode = ExecutionMode::SpaceShared;
  Rational makespan;
  std::vector<VmUsage> vms;
  std::vector<CloudletOutcome> cloudlets;
  std::vector<DecisionRow> decisions;  // present for the selective policy
  bool operator==(const RunReport&) const = default;
};

inline RunReport build_report(const Scenario& scenario, const AssignmentPlan& plan,
                              const Schedule& schedule, std::string policy_name) {
  RunReport r;
  r.policy = std::move(policy_name);
  r.mode = schedule.mode;
  r.makespan = round_to_decimal(schedule.makespan);

  std::vector<Rational> busy(scenario.vms.size(), Rational(0));
  for (const auto& step : plan.steps)
    busy[step.vm_id] += scenario.cloudlets[step.cloudlet_id].file_size / scenario.vms[step.vm_id].mips;
  for (std::size_t j = 0; j < scenario.vms.size(); ++j) {
    VmUsage u;
    u.vm_id = j;
    u.utilization =
        schedule.makespan == 0 ? Rational(0) : round_to_decimal(busy[j] / schedule.makespan);
    u.busy_time = round_to_decimal(busy[j]);
    r.vms.push_back(std::move(u));
  }

  for (const auto& e : schedule.entries)
    r.cloudlets.push_back(
        {e.cloudlet_id, e.vm_id, round_to_decimal(e.start), round_to_decimal(e.finish)});

  for (const auto& step : plan.steps) {
    if (!step.decision) continue;
    const StepDecision& d = *step.decision;
    DecisionRow row;
    row.case_taken = d.case_taken;
    row.c_remaining = d.c_remaining;
    row.gap_location = d.gap.gap_location;
    row.mean = round_to_decimal(d.gap.mean);
    row.sd = round_to_decimal(Rational(d.gap.sd()));
    for (const auto& x : d.gap.sorted_best_comps) row.best_completions.push_back(round_to_decimal(x));
    r.decisions.push_back(std::move(row));
  }
  return r;
}

// ---- CSV ----------------------------------------------------------------

inline constexpr const char* kCsvHeader = "policy,mode,makespan,vm_id,utilization";

/// One row per (report, VM), fixed column set, stable byte-for-byte across
/// runs on the same inputs.
inline std::string render_csv(std::span<const RunReport> reports) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : reports)
    for (const auto& vm : r.vms) {
      out += r.policy;
      out += ',';
      out += to_string(r.mode);
      out += ',';
      out += format_decimal(r.makespan);
      out += ',';
      out += std::to_string(vm.vm_id);
      out += ',';
      out += format_decimal(vm.utilization);
      out += '\n';
    }
  return out;
}

inline std::string render_csv(const RunReport& report) {
  return render_csv(std::span<const RunReport>(&report, 1));
}

// ---- JSON ---------------------------------------------------------------

namespace detail {

inline StepCase step_case_from_string(const std::string& s) {
  for (StepCase c : {StepCase::GapUpperMinMin, StepCase::GapLowerMaxMin, StepCase::NoGapMinMin,
                     StepCase::NoGapMaxMin})
    if (s == to_string(c)) return c;
  throw std::invalid_argument("unknown decision case: " + s);
}

}  // namespace detail

/// Numeric fields are decimal strings (the report precision is decimal, and
/// JSON doubles would not round-trip it).
inline nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json doc;
  doc["policy"] = r.policy;
  doc["mode"] = to_string(r.mode);
  doc["makespan"] = format_decimal(r.makespan);
  doc["vms"] = nlohmann::json::array();
  for (const auto& vm : r.vms)
    doc["vms"].push_back({{"vm_id", vm.vm_id},
                          {"busy_time", format_decimal(vm.busy_time)},
                          {"utilization", format_decimal(vm.utilization)}});
  doc["cloudlets"] = nlohmann::json::array();
  for (const auto& c : r.cloudlets)
    doc["cloudlets"].push_back({{"cloudlet_id", c.cloudlet_id},
                                {"vm_id", c.vm_id},
                                {"start", format_decimal(c.start)},
                                {"finish", format_decimal(c.finish)}});
  if (!r.decisions.empty()) {
    doc["decisions"] = nlohmann::json::array();
    for (const auto& d : r.decisions) {
      nlohmann::json row;
      row["case"] = to_string(d.case_taken);
      row["c_remaining"] = d.c_remaining;
      if (d.gap_location)
        row["gap_location"] = *d.gap_location;
      else
        row["gap_location"] = nullptr;
      row["mean"] = format_decimal(d.mean);
      row["sd"] = format_decimal(d.sd);
      auto& best = row["best_completions"] = nlohmann::json::array();
      for (const auto& x : d.best_completions) best.push_back(format_decimal(x));
      doc["decisions"].push_back(std::move(row));
    }
  }
  return doc;
}

inline RunReport report_from_json(const nlohmann::json& doc) {
  RunReport r;
  r.policy = doc.at("policy").get<std::string>();
  r.mode = doc.at("mode").get<std::string>() == "time" ? ExecutionMode::TimeShared
                                                       : ExecutionMode::SpaceShared;
  r.makespan = parse_rational(doc.at("makespan").get<std::string>());
  for (const auto& vm : doc.at("vms"))
    r.vms.push_back({vm.at("vm_id").get<std::size_t>(),
                     parse_rational(vm.at("busy_time").get<std::string>()),
                     parse_rational(vm.at("utilization").get<std::string>())});
  for (const auto& c : doc.at("cloudlets"))
    r.cloudlets.push_back({c.at("cloudlet_id").get<std::size_t>(), c.at("vm_id").get<std::size_t>(),
                           parse_rational(c.at("start").get<std::string>()),
                           parse_rational(c.at("finish").get<std::string>())});
  if (doc.contains("decisions")) {
    for (const auto& row : doc.at("decisions")) {
      DecisionRow d;
      d.case_taken = detail::step_case_from_string(row.at("case").get<std::string>());
      d.c_remaining = row.at("c_remaining").get<std::size_t>();
      if (!row.at("gap_location").is_null()) d.gap_location = row.at("gap_location").get<std::size_t>();
      d.mean = parse_rational(row.at("mean").get<std::string>());
      d.sd = parse_rational(row.at("sd").get<std::string>());
      for (const auto& x : row.at("best_completions"))
        d.best_completions.push_back(parse_rational(x.get<std::string>()));
      r.decisions.push_back(std::move(d));
    }
  }
  return r;
}

// ---- human-readable table -----------------------------------------------

inline std::string render_table(const RunReport& r) {
  std::ostringstream out;
  out << "policy: " << r.policy << "   mode: " << to_string(r.mode)
      << "   makespan: " << format_decimal(r.makespan) << " s\n";
  out << "  vm  busy_time  utilization\n";
  for (const auto& vm : r.vms)
    out << "  " << vm.vm_id << "   " << format_decimal(vm.busy_time) << "  "
        << format_decimal(vm.utilization) << "\n";
  if (!r.cloudlets.empty()) {
    out << "  cloudlet  vm  start  finish\n";
    for (const auto& c : r.cloudlets)
      out << "  " << c.cloudlet_id << "  " << c.vm_id << "  " << format_decimal(c.start) << "  "
          << format_decimal(c.finish) << "\n";
  }
  if (!r.decisions.empty()) {
    out << "  decisions:\n";
    std::size_t n = 0;
    for (const auto& d : r.decisions) {
      out << "    step " << n++ << ": " << to_string(d.case_taken) << "  (remaining "
          << d.c_remaining << ", gap ";
      if (d.gap_location)
        out << "at " << *d.gap_location;
      else
        out << "none";
      out << ", mean " << format_decimal(d.mean) << ", sd " << format_decimal(d.sd) << ")\n";
    }
  }
  return out.str();
}

// ---- ASCII Gantt ----------------------------------------------------------

namespace detail {

// Column of an instant on a fixed-width time axis; monotone, so half-open
// cell ranges of serial entries never overlap.
inline std::size_t gantt_column(const Rational& t, const Rational& makespan, std::size_t width) {
  if (makespan == 0) return 0;
  const Rational scaled = t * static_cast<int>(width) / makespan;
  return (numerator(scaled) / denominator(scaled)).convert_to<std::size_t>();
}

}  // namespace detail

/// One bar line per schedule entry, grouped by VM; bar lengths are
/// proportional to [start, finish) on a shared axis.
inline std::string render_gantt(const Scenario& scenario, const RunReport& r,
                                std::size_t width = 48) {
  std::ostringstream out;
  out << "gantt (one column = " << format_decimal(r.makespan == 0 ? Rational(0)
                                                                  : r.makespan / static_cast<int>(width))
      << " s)\n";
  for (const auto& vm : scenario.vms) {
    out << "vm " << vm.id << " (mips " << format_decimal(vm.mips) << ")\n";
    for (const auto& c : r.cloudlets) {
      if (c.vm_id != vm.id) continue;
      const std::size_t a = detail::gantt_column(c.start, r.makespan, width);
      const std::size_t b = detail::gantt_column(c.finish, r.makespan, width);
      out << "  c" << c.cloudlet_id << "\t|" << std::string(a, ' ') << std::string(b - a, '#')
          << std::string(width - b, ' ') << "| " << format_decimal(c.start) << " .. "
          << format_decimal(c.finish) << "\n";
    }
  }
  return out.str();
}

}  // namespace cloudsched
