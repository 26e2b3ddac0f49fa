#pragma once

#include <array>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spherebot/convergence.hpp"
#include "spherebot/simulator.hpp"
#include "spherebot/sweep.hpp"

namespace spherebot::cli {

/// Column names of the trajectory CSV, in order.
const std::vector<std::string>& trajectory_columns();

/// Numeric row for one sample, in trajectory_columns() order.
std::array<double, 21> trajectory_row(const Sample& s);

/// Header plus one row per sample, numbers at 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// {"columns": [...], "rows": [[...], ...]} with the CSV's columns.
nlohmann::ordered_json trajectory_json(const Trajectory& traj);

/// Shortest round-trip text for a double (17 significant digits, C locale).
std::string format_number(double v);

nlohmann::ordered_json report_json(const ConvergenceReport& report);

nlohmann::ordered_json scenario_json(const Scenario& sc);

/// Machine-readable summary of a single run.
nlohmann::ordered_json run_summary_json(std::string_view source, const Scenario& sc,
                                        const Trajectory& traj,
                                        const ConvergenceReport& report);

const std::vector<std::string>& sweep_columns();

void write_sweep_csv(std::ostream& out, const std::vector<RunSummary>& rows);

nlohmann::ordered_json sweep_json(const std::vector<RunSummary>& rows);

}  // namespace spherebot::cli
