#include "export.hpp"

#include <iomanip>
#include <locale>
#include <sstream>

namespace spherebot::cli {

using nlohmann::ordered_json;

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> columns = {
      "t",     "x",     "y",
      "r11",   "r12",   "r13",  "r21", "r22", "r23", "r31", "r32", "r33",
      "wx",    "wy",    "wz",
      "tau_x", "tau_y", "tau_z",
      "V",     "Vdot",  "e_w_norm"};
  return columns;
}

std::array<double, 21> trajectory_row(const Sample& s) {
  const Mat3& r = s.state.attitude.matrix();
  const Vec3& w = s.state.omega;
  return {s.t,
          s.state.x, s.state.y,
          r(0, 0), r(0, 1), r(0, 2), r(1, 0), r(1, 1), r(1, 2), r(2, 0), r(2, 1), r(2, 2),
          w.x(), w.y(), w.z(),
          s.torque.x(), s.torque.y(), s.torque.z(),
          s.energy.lyapunov, s.energy.lyapunov_rate, s.energy.velocity_error_norm};
}

std::string format_number(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(17) << v;
  return out.str();
}

namespace {

void write_csv_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i != 0) out << ',';
    out << fields[i];
  }
  out << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  write_csv_line(out, trajectory_columns());
  std::vector<std::string> fields(trajectory_columns().size());
  for (const Sample& s : traj.samples) {
    const auto row = trajectory_row(s);
    for (std::size_t i = 0; i < row.size(); ++i) fields[i] = format_number(row[i]);
    write_csv_line(out, fields);
  }
}

ordered_json trajectory_json(const Trajectory& traj) {
  ordered_json rows = ordered_json::array();
  for (const Sample& s : traj.samples) {
    const auto row = trajectory_row(s);
    rows.push_back(ordered_json(std::vector<double>(row.begin(), row.end())));
  }
  return ordered_json{{"columns", trajectory_columns()}, {"rows", std::move(rows)}};
}

ordered_json report_json(const ConvergenceReport& report) {
  return ordered_json{
      {"converged", report.converged},
      {"settling_time", report.settling_time},
      {"spin_sign", report.spin_sign},
      {"final_spin", report.final_spin},
      {"final_position_distance", report.final_position_distance},
      {"final_velocity_error", report.final_velocity_error},
      {"max_lyapunov_increase", report.max_lyapunov_increase},
  };
}

namespace {

ordered_json vec_json(const Vec3& v) { return ordered_json{v.x(), v.y(), v.z()}; }

ordered_json mat_json(const Mat3& m) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.push_back(m(i, j));
  return out;
}

ordered_json state_json(const RobotState& s) {
  return ordered_json{{"x", s.x},
                      {"y", s.y},
                      {"attitude", mat_json(s.attitude.matrix())},
                      {"omega", vec_json(s.omega)}};
}

}  // namespace

ordered_json scenario_json(const Scenario& sc) {
  return ordered_json{
      {"params",
       {{"radius", sc.params.radius()},
        {"mass", sc.params.mass()},
        {"inertia", vec_json(sc.params.inertia().moments())}}},
      {"gains", {{"kp", sc.gains.kp()}, {"kv", sc.gains.kv()}}},
      {"initial", state_json(sc.initial)},
      {"sim",
       {{"dt", sc.config.dt},
        {"t_final", sc.config.t_final},
        {"record_every", sc.config.record_every},
        {"reproject_every", sc.config.reproject_every}}},
  };
}

ordered_json run_summary_json(std::string_view source, const Scenario& sc,
                              const Trajectory& traj,
                              const ConvergenceReport& report) {
  const Sample& last = traj.back();
  return ordered_json{
      {"source", source},
      {"scenario", scenario_json(sc)},
      {"steps", traj.steps},
      {"samples", traj.samples.size()},
      {"max_orthogonality_error", traj.max_orthogonality_error},
      {"final_time", last.t},
      {"final_state", state_json(last.state)},
      {"final_lyapunov", last.energy.lyapunov},
      {"report", report_json(report)},
  };
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> columns = {
      "index", "kp", "kv", "dt", "x0", "y0", "attitude_index", "omega_index",
      "completed", "converged", "settling_time", "final_e_w_norm", "final_pos_norm",
      "spin_sign", "final_spin", "max_lyapunov_increase", "error"};
  return columns;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<RunSummary>& rows) {
  write_csv_line(out, sweep_columns());
  for (const RunSummary& r : rows) {
    const ConvergenceReport& rep = r.report;
    write_csv_line(
        out, {std::to_string(r.index), format_number(r.point.kp),
              format_number(r.point.kv), format_number(r.point.dt),
              format_number(r.point.x0), format_number(r.point.y0),
              std::to_string(r.point.attitude_index),
              std::to_string(r.point.omega_index), r.completed ? "1" : "0",
              rep.converged ? "1" : "0", format_number(rep.settling_time),
              format_number(rep.final_velocity_error),
              format_number(rep.final_position_distance),
              std::to_string(rep.spin_sign), format_number(rep.final_spin),
              format_number(rep.max_lyapunov_increase), csv_quote(r.error)});
  }
}

ordered_json sweep_json(const std::vector<RunSummary>& rows) {
  ordered_json out = ordered_json::array();
  for (const RunSummary& r : rows) {
    out.push_back(ordered_json{
        {"index", r.index},
        {"kp", r.point.kp},
        {"kv", r.point.kv},
        {"dt", r.point.dt},
        {"x0", r.point.x0},
        {"y0", r.point.y0},
        {"attitude_index", r.point.attitude_index},
        {"omega_index", r.point.omega_index},
        {"completed", r.completed},
        {"report", report_json(r.report)},
        {"error", r.error},
    });
  }
  return out;
}

}  // namespace spherebot::cli
