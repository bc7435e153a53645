// Acceptance checks for the shipped behavior: each check prints one PASS or
// FAIL line and the process exits nonzero if any check fails. The expected
// numbers below were derived independently (by hand and with a separate
// exact-arithmetic reference implementation) before being frozen here.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cloudsched/cloudsched.hpp"

namespace {

using namespace cloudsched;
using Clock = std::chrono::steady_clock;

Scenario four_task_scenario() { return make_scenario({10, 20}, {10, 20, 30, 90}); }
Scenario six_task_scenario() { return make_scenario({10, 20}, {12, 16, 50, 30, 20, 40}); }

std::string fmt(const Rational& r) { return format_decimal(r, 9); }

// Failure message, or nullopt when the check passed.
using Check = std::function<std::optional<std::string>()>;

std::optional<std::string> check_min_min_baseline() {
  const auto scenario = four_task_scenario();
  const auto plan = min_min_allocate(scenario, TieBreakMode::MinExecution);
  const Rational got = run_space_shared(scenario, plan).makespan;
  if (got != Rational(15, 2))
    return "expected space-shared makespan 7.5, got " + fmt(got);

  // latency: best of three timed allocate+run rounds must stay under 1 ms
  double best_ms = 1e9;
  for (int round = 0; round < 3; ++round) {
    const auto t0 = Clock::now();
    const auto p = min_min_allocate(scenario, TieBreakMode::MinExecution);
    const auto s = run_space_shared(scenario, p);
    const auto t1 = Clock::now();
    if (s.makespan != Rational(15, 2)) return "nondeterministic makespan across rounds";
    best_ms = std::min(best_ms, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  if (best_ms >= 1.0)
    return "allocate+run took " + std::to_string(best_ms) + " ms, expected < 1 ms";
  return std::nullopt;
}

std::optional<std::string> check_max_min_beats_min_min() {
  const auto scenario = four_task_scenario();
  const Rational maxmin_first =
      run_space_shared(scenario, max_min_allocate(scenario)).makespan;
  const Rational maxmin_minexec =
      run_space_shared(scenario, max_min_allocate(scenario, TieBreakMode::MinExecution)).makespan;
  const Rational minmin_first =
      run_space_shared(scenario, min_min_allocate(scenario)).makespan;
  const Rational minmin_minexec =
      run_space_shared(scenario, min_min_allocate(scenario, TieBreakMode::MinExecution)).makespan;
  if (maxmin_first != 5 || maxmin_minexec != 5)
    return "expected max-min makespan 5 under both tie rules, got " + fmt(maxmin_first) + " / " +
           fmt(maxmin_minexec);
  if (minmin_first != 6) return "expected min-min makespan 6 (first-vm ties), got " + fmt(minmin_first);
  if (minmin_minexec != Rational(15, 2))
    return "expected min-min makespan 7.5 (min-execution ties), got " + fmt(minmin_minexec);
  for (const Rational& mm : {minmin_first, minmin_minexec})
    for (const Rational& xm : {maxmin_first, maxmin_minexec})
      if (!(xm < mm)) return "max-min did not beat min-min";
  return std::nullopt;
}

std::optional<std::string> check_selective_trace() {
  const auto scenario = four_task_scenario();
  const auto plan = selective_allocate(scenario);
  if (plan.steps.size() != 4) return "expected 4 steps";

  if (!plan.steps[0].decision) return "first step carries no decision record";
  const StepDecision& first = *plan.steps[0].decision;
  if (first.case_taken != StepCase::GapLowerMaxMin)
    return std::string("first step classified as ") + to_string(first.case_taken) +
           ", expected gap-lower-max-min";
  if (!first.gap.gap_location || *first.gap.gap_location != 3)
    return "expected first-step gap location 3";
  const double sd = first.gap.sd();
  if (std::abs(sd - 1.5562374497) > 1e-5)
    return "first-step sd " + std::to_string(sd) + " is off (expected 1.5562374497 +/- 1e-5)";

  const std::vector<DecidedBy> want = {DecidedBy::MaxMin, DecidedBy::MinMin, DecidedBy::MaxMin,
                                       DecidedBy::MinMin};
  for (std::size_t i = 0; i < want.size(); ++i)
    if (plan.steps[i].decided_by != want[i])
      return "step " + std::to_string(i) + " used " + to_string(plan.steps[i].decided_by);

  const Rational got = run_space_shared(scenario, plan).makespan;
  if (got != Rational(11, 2)) return "expected selective makespan 5.5, got " + fmt(got);
  return std::nullopt;
}

std::optional<std::string> check_selective_beats_fcfs() {
  const auto scenario = six_task_scenario();
  const auto fcfs = fcfs_allocate(scenario);
  const auto selective = selective_allocate(scenario);
  const Rational fcfs_space = run_space_shared(scenario, fcfs).makespan;
  if (fcfs_space != Rational(41, 5))
    return "expected fcfs space-shared makespan 8.2, got " + fmt(fcfs_space);
  const Rational sel_space = run_space_shared(scenario, selective).makespan;
  if (!(sel_space < fcfs_space))
    return "selective (" + fmt(sel_space) + ") not below fcfs (" + fmt(fcfs_space) +
           ") space-shared";
  const Rational fcfs_time = run_time_shared(scenario, fcfs).makespan;
  const Rational sel_time = run_time_shared(scenario, selective).makespan;
  if (!(sel_time < fcfs_time))
    return "selective (" + fmt(sel_time) + ") not below fcfs (" + fmt(fcfs_time) +
           ") time-shared";
  return std::nullopt;
}

std::optional<std::string> check_policies_respect_the_optimum() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(0xC10D5EED);
  std::uniform_int_distribution<std::size_t> c_dist(1, 6), v_dist(1, 3);
  std::uniform_int_distribution<int> value(1, 100);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Rational> mips(v_dist(rng)), sizes(c_dist(rng));
    for (auto& m : mips) m = value(rng);
    for (auto& s : sizes) s = value(rng);
    const Scenario scenario = make_scenario(std::move(mips), std::move(sizes));

    const OracleResult best = optimal_assignment(scenario);
    Rational total_size = 0, total_mips = 0;
    for (const auto& c : scenario.cloudlets) total_size += c.file_size;
    for (const auto& vm : scenario.vms) total_mips += vm.mips;
    if (best.makespan < total_size / total_mips)
      return "trial " + std::to_string(trial) + ": optimum below the aggregate-rate bound";

    std::vector<AssignmentPlan> plans = {fcfs_allocate(scenario)};
    for (const auto tie : {TieBreakMode::FirstInstantiated, TieBreakMode::MinExecution}) {
      plans.push_back(min_min_allocate(scenario, tie));
      plans.push_back(max_min_allocate(scenario, tie));
      plans.push_back(selective_allocate(scenario, tie));
    }
    for (const auto& plan : plans) {
      const Rational m = run_space_shared(scenario, plan).makespan;
      if (m < best.makespan)
        return "trial " + std::to_string(trial) + ": a policy makespan " + fmt(m) +
               " beat the optimum " + fmt(best.makespan);
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs >= 30.0)
    return "1000 scenarios took " + std::to_string(secs) + " s, expected < 30 s";
  return std::nullopt;
}

std::optional<std::string> check_mode_equal_makespan() {
  std::mt19937_64 rng(0x5EEDF00D);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<std::size_t> c_dist(1, 8), v_dist(1, 4);
    std::uniform_int_distribution<int> value(1, 100);
    std::vector<Rational> mips(v_dist(rng)), sizes(c_dist(rng));
    for (auto& m : mips) m = value(rng);
    for (auto& s : sizes) s = value(rng);
    const Scenario scenario = make_scenario(std::move(mips), std::move(sizes));

    std::uniform_int_distribution<std::size_t> vm(0, scenario.vms.size() - 1);
    AssignmentPlan plan;
    std::vector<Rational> ready(scenario.vms.size(), Rational(0));
    for (std::size_t i = 0; i < scenario.cloudlets.size(); ++i) {
      const std::size_t j = vm(rng);
      ready[j] += scenario.cloudlets[i].file_size / scenario.vms[j].mips;
      plan.steps.push_back({i, j, DecidedBy::Fcfs, ready[j], std::nullopt});
    }

    const Rational space = run_space_shared(scenario, plan).makespan;
    const Rational time = run_time_shared(scenario, plan).makespan;
    if (space != time)
      return "trial " + std::to_string(trial) + ": space " + fmt(space) + " != time " + fmt(time);
  }
  return std::nullopt;
}

std::optional<std::string> check_scale_invariance() {
  std::mt19937_64 rng(0xCAFE);
  std::uniform_int_distribution<std::size_t> c_dist(1, 7), v_dist(1, 3);
  std::uniform_int_distribution<int> value(1, 100);
  const Rational factors[] = {Rational(2), Rational(10), Rational(1, 3)};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> mips(v_dist(rng)), sizes(c_dist(rng));
    for (auto& m : mips) m = value(rng);
    for (auto& s : sizes) s = value(rng);
    const Scenario scenario = make_scenario(std::move(mips), std::move(sizes));

    for (const Rational& k : factors) {
      Scenario scaled = scenario;
      for (auto& c : scaled.cloudlets) c.file_size *= k;
      const auto pairs = {
          std::pair(fcfs_allocate(scenario), fcfs_allocate(scaled)),
          std::pair(min_min_allocate(scenario), min_min_allocate(scaled)),
          std::pair(max_min_allocate(scenario), max_min_allocate(scaled)),
          std::pair(selective_allocate(scenario), selective_allocate(scaled)),
      };
      for (const auto& [plan, scaled_plan] : pairs) {
        if (bindings(plan) != bindings(scaled_plan))
          return "trial " + std::to_string(trial) + ": scaling by " + fmt(k) +
                 " changed the bindings";
        const Rational m = run_space_shared(scenario, plan).makespan;
        const Rational ms = run_space_shared(scaled, scaled_plan).makespan;
        if (ms != m * k)
          return "trial " + std::to_string(trial) + ": scaled makespan " + fmt(ms) +
                 " != " + fmt(k) + " * " + fmt(m);
      }
    }
  }
  return std::nullopt;
}

struct CliInvocation {
  int exit_code = -1;
  std::string out;
};

CliInvocation run_cli(const std::string& command) {
  CliInvocation r;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::optional<std::string> check_cli_determinism(const std::string& cli) {
  if (cli.empty()) return "pass the cloudsched binary path as argv[1]";

  const auto path = std::filesystem::temp_directory_path() /
                    ("cloudsched_acceptance_" + std::to_string(::getpid()) + ".json");
  {
    std::ofstream out(path);
    if (!out) return "cannot write " + path.string();
    out << serialize_scenario(six_task_scenario());
  }
  const std::string command = cli + " compare " + path.string() + " --format csv";
  const CliInvocation first = run_cli(command);
  const CliInvocation second = run_cli(command);
  std::filesystem::remove(path);

  if (first.exit_code != 0 || second.exit_code != 0)
    return "compare exited with " + std::to_string(first.exit_code) + " / " +
           std::to_string(second.exit_code);
  if (first.out.empty()) return "compare produced no output";
  if (first.out.rfind(kCsvHeader, 0) != 0) return "csv output lacks the fixed header";
  if (first.out != second.out) return "two identical invocations differed";
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  const std::vector<std::pair<std::string, Check>> checks = {
      {"min-min four-task sample: space-shared makespan 7.5 in under 1 ms",
       check_min_min_baseline},
      {"max-min (5) beats min-min (6 and 7.5) on the four-task sample",
       check_max_min_beats_min_min},
      {"selective four-task trace: gap at 3, sd ~ 1.5562374497, max/min/max/min, makespan 5.5",
       check_selective_trace},
      {"six-task sample: fcfs 8.2 space-shared, selective below it in both modes",
       check_selective_beats_fcfs},
      {"1000 random scenarios: no policy beats the exhaustive optimum or its lower bound",
       check_policies_respect_the_optimum},
      {"1000 random plans: space- and time-shared makespans coincide exactly",
       check_mode_equal_makespan},
      {"200 scenarios x 3 factors: size scaling keeps bindings, rescales makespans",
       check_scale_invariance},
      {"repeated CLI compare runs are byte-identical",
       [&cli] { return check_cli_determinism(cli); }},
  };

  bool all_ok = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto t0 = Clock::now();
    std::optional<std::string> failure;
    try {
      failure = checks[i].second();
    } catch (const std::exception& e) {
      failure = std::string("unexpected exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    std::ostringstream line;
    line << (failure ? "FAIL" : "PASS") << " [" << i + 1 << "/" << checks.size() << "] "
         << checks[i].first;
    if (failure)
      line << " -- " << *failure;
    else
      line << " (" << ms << " ms)";
    std::cout << line.str() << "\n";
    if (failure) all_ok = false;
  }
  std::cout << (all_ok ? "acceptance: all checks passed" : "acceptance: FAILURES above") << "\n";
  return all_ok ? 0 : 1;
}
