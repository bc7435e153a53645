#pragma once

// Deterministic provisioning simulator for independent tasks on
// heterogeneous VMs: min-min / max-min / selective / FCFS allocation,
// space- and time-shared execution, and an exhaustive optimality oracle.

#include "cloudsched/commands.hpp"
#include "cloudsched/executor.hpp"
#include "cloudsched/metrics.hpp"
#include "cloudsched/model.hpp"
#include "cloudsched/oracle.hpp"
#include "cloudsched/policies.hpp"
#include "cloudsched/rational.hpp"
#include "cloudsched/report.hpp"
#include "cloudsched/scenario_io.hpp"
