#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cloudsched/cloudsched.hpp"

namespace {

// exit codes: 0 ok, 1 usage, 2 scenario parse error, 3 oracle budget exceeded
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw cloudsched::ScenarioError("scenario: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct OutputOptions {
  std::string format = "table";
  bool gantt = false;
};

void emit(const cloudsched::Scenario& scenario, const std::vector<cloudsched::RunReport>& reports,
          const OutputOptions& out) {
  if (out.format == "csv") {
    std::cout << cloudsched::render_csv(reports);
  } else if (out.format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : reports) doc.push_back(cloudsched::report_to_json(r));
    std::cout << (reports.size() == 1 ? doc.front().dump(2) : doc.dump(2)) << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << cloudsched::render_table(r);
      if (out.gantt) std::cout << cloudsched::render_gantt(scenario, r);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cloudsched: deterministic task-provisioning simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string policy_name;
  std::string mode_name = "space";
  std::string tie_name = "first";
  OutputOptions out;
  std::uint64_t budget = cloudsched::kDefaultOracleBudget;
  std::string seed;

  const auto add_common = [&](CLI::App* cmd, bool with_mode = true) {
    cmd->add_option("scenario", scenario_path, "scenario JSON file, or '-' for stdin")->required();
    if (with_mode)
      cmd->add_option("--mode", mode_name, "execution model")
          ->check(CLI::IsMember({"space", "time"}));
    cmd->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    cmd->add_flag("--gantt", out.gantt, "append an ASCII gantt chart (table format only)");
    cmd->add_option("--seed", seed, "reserved; the simulator is fully deterministic");
    cmd->add_option("--tie-break", tie_name, "VM tie resolution")
        ->check(CLI::IsMember({"first", "min-exec"}));
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one allocation policy");
  add_common(run_cmd);
  run_cmd->add_option("--policy", policy_name, "allocation policy")
      ->required()
      ->check(CLI::IsMember({"fcfs", "minmin", "maxmin", "selective"}));

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run every policy plus the exhaustive optimum");
  add_common(compare_cmd);
  compare_cmd->add_option("--budget", budget, "max assignments the oracle row may enumerate");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exhaustive optimal assignment");
  add_common(oracle_cmd);
  oracle_cmd->add_option("--budget", budget, "max assignments to enumerate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (!seed.empty()) {
    std::cerr << "error: --seed has no effect (reserved; nothing here is randomized)\n";
    return kExitUsage;
  }
  if (out.gantt && out.format != "table") {
    std::cerr << "error: --gantt requires --format table\n";
    return kExitUsage;
  }

  try {
    const cloudsched::Scenario scenario = cloudsched::parse_scenario(read_input(scenario_path));
    const auto mode = *cloudsched::mode_from_name(mode_name);
    const auto tie = *cloudsched::tie_break_from_name(tie_name);

    std::vector<cloudsched::RunReport> reports;
    if (run_cmd->parsed()) {
      reports.push_back(cloudsched::run_command(scenario, *cloudsched::policy_from_name(policy_name),
                                                mode, tie));
    } else if (compare_cmd->parsed()) {
      cloudsched::CompareResult cmp = cloudsched::compare_command(scenario, mode, tie, budget);
      if (!cmp.oracle_included)
        std::cerr << "note: oracle row omitted, instance exceeds enumeration budget\n";
      reports = std::move(cmp.reports);
    } else {
      reports.push_back(cloudsched::oracle_command(scenario, mode, budget));
    }
    emit(scenario, reports, out);
  } catch (const cloudsched::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const cloudsched::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
