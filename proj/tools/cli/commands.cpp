#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "export.hpp"
#include "spherebot/convergence.hpp"
#include "spherebot/presets.hpp"
#include "spherebot/sweep.hpp"

namespace spherebot::cli {

namespace fs = std::filesystem;

namespace {

struct ScenarioOptions {
  std::string preset;
  std::string config;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<std::size_t> record_every;
};

struct OutputOptions {
  std::string out_dir;
  std::string format = "csv";
};

struct GridOptions {
  std::vector<double> kp;
  std::vector<double> kv;
  std::vector<double> dt;
  std::vector<double> x0;
  std::vector<double> y0;
  std::vector<std::string> attitudes;
  std::string grid_file;
  unsigned threads = 0;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_scenario_options(CLI::App& cmd, ScenarioOptions& opt) {
  auto* preset = cmd.add_option("--preset", opt.preset, "Built-in scenario")
                     ->check(CLI::IsMember(preset_names()));
  auto* config = cmd.add_option("--config", opt.config, "Scenario TOML file");
  preset->excludes(config);
  config->excludes(preset);
  cmd.add_option("--dt", opt.dt, "Override the integration step (s)");
  cmd.add_option("--t-final", opt.t_final, "Override the horizon (s)");
  cmd.add_option("--record-every", opt.record_every,
                 "Override the output decimation (steps)");
}

void add_output_options(CLI::App& cmd, OutputOptions& opt) {
  cmd.add_option("--out", opt.out_dir,
                 std::string("Output directory (default: $") + kOutDirEnv +
                     " or the current directory)");
  cmd.add_option("--format", opt.format, "Export format")
      ->check(CLI::IsMember({"csv", "json"}));
}

// Returns (scenario, stem used for output names).
std::pair<Scenario, std::string> resolve_scenario(const ScenarioOptions& opt) {
  if (opt.preset.empty() && opt.config.empty()) {
    throw ConfigError("one of --preset or --config is required");
  }
  Scenario sc = opt.preset.empty() ? load_scenario(opt.config) : preset(opt.preset);
  const std::string stem =
      opt.preset.empty() ? fs::path(opt.config).stem().string() : opt.preset;
  if (opt.dt) sc.config.dt = *opt.dt;
  if (opt.t_final) sc.config.t_final = *opt.t_final;
  if (opt.record_every) sc.config.record_every = *opt.record_every;
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return {std::move(sc), stem};
}

fs::path output_dir(const OutputOptions& opt) {
  fs::path dir;
  if (!opt.out_dir.empty()) {
    dir = opt.out_dir;
  } else if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
    dir = env;
  } else {
    dir = ".";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("output directory '" + dir.string() + "' is not writable");
  }
  return dir;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  writer(file);
  file.flush();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

void write_json(const fs::path& path, const nlohmann::ordered_json& doc) {
  write_file(path, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

int cmd_run(const ScenarioOptions& sopt, const OutputOptions& oopt, std::ostream& out) {
  auto [sc, stem] = resolve_scenario(sopt);
  const fs::path dir = output_dir(oopt);
  const Trajectory traj = simulate(sc);
  const ConvergenceReport report = check_convergence(traj);

  const fs::path traj_path = dir / (stem + "." + oopt.format);
  if (oopt.format == "csv") {
    write_file(traj_path, [&](std::ostream& os) { write_trajectory_csv(os, traj); });
  } else {
    write_json(traj_path, trajectory_json(traj));
  }
  write_json(dir / (stem + "_report.json"), report_json(report));
  const std::string source = sopt.preset.empty() ? sopt.config : "preset:" + sopt.preset;
  write_json(dir / (stem + "_summary.json"), run_summary_json(source, sc, traj, report));

  out << stem << ": " << (report.converged ? "converged" : "not converged");
  if (report.converged) out << " at t = " << format_number(report.settling_time) << " s";
  out << ", spin sign " << (report.spin_sign >= 0 ? "+" : "") << report.spin_sign
      << ", final omega.e3 = " << format_number(report.final_spin) << '\n';
  out << "wrote " << traj_path.string() << '\n';
  return kExitOk;
}

SweepGrid resolve_grid(const ScenarioOptions& sopt, const GridOptions& gopt) {
  SweepGrid grid;
  const auto read_text = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read grid file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
  };
  if (!sopt.config.empty()) grid = parse_grid(read_text(sopt.config), sopt.config);
  if (!gopt.grid_file.empty()) {
    const SweepGrid file_grid = parse_grid(read_text(gopt.grid_file), gopt.grid_file);
    if (file_grid.has_axes()) grid = file_grid;
  }
  if (!gopt.kp.empty()) grid.kp = gopt.kp;
  if (!gopt.kv.empty()) grid.kv = gopt.kv;
  if (!gopt.dt.empty()) grid.dt = gopt.dt;
  if (!gopt.x0.empty()) grid.x0 = gopt.x0;
  if (!gopt.y0.empty()) grid.y0 = gopt.y0;
  if (!gopt.attitudes.empty()) {
    grid.attitude.clear();
    for (const std::string& name : gopt.attitudes) {
      try {
        grid.attitude.push_back(named_attitude(name));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (!grid.has_axes()) {
    throw ConfigError("sweep needs at least one grid axis (--kp, --kv, ... or [grid])");
  }
  return grid;
}

int cmd_sweep(const ScenarioOptions& sopt, const OutputOptions& oopt,
              const GridOptions& gopt, std::ostream& out) {
  auto [base, stem] = resolve_scenario(sopt);
  const SweepGrid grid = resolve_grid(sopt, gopt);
  const fs::path dir = output_dir(oopt);
  std::vector<RunSummary> rows;
  try {
    rows = sweep(base, grid, ConvergenceCriteria{}, gopt.threads);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const fs::path path = dir / (stem + "_sweep." + oopt.format);
  if (oopt.format == "csv") {
    write_file(path, [&](std::ostream& os) { write_sweep_csv(os, rows); });
  } else {
    write_json(path, sweep_json(rows));
  }
  std::size_t converged = 0;
  for (const RunSummary& r : rows) converged += r.completed && r.report.converged;
  out << stem << ": " << converged << " of " << rows.size()
      << " grid points converged\nwrote " << path.string() << '\n';
  return kExitOk;
}

int cmd_presets(std::ostream& out) {
  for (const std::string& name : preset_names()) {
    const Scenario sc = preset(name);
    const Vec3 r3 = sc.initial.attitude.row(2);
    const Vec3& j = sc.params.inertia().moments();
    out << name << "  r=" << format_number(sc.params.radius()) << " J=diag("
        << format_number(j.x()) << "," << format_number(j.y()) << ","
        << format_number(j.z()) << ") kp=" << format_number(sc.gains.kp())
        << " kv=" << format_number(sc.gains.kv()) << " x0=" << format_number(sc.initial.x)
        << " y0=" << format_number(sc.initial.y) << " r3(0)=(" << format_number(r3.x())
        << "," << format_number(r3.y()) << "," << format_number(r3.z()) << ")\n";
  }
  return kExitOk;
}

int cmd_validate(const ScenarioOptions& sopt, std::ostream& out) {
  auto [sc, stem] = resolve_scenario(sopt);
  if (!sopt.config.empty()) {
    std::ifstream in(sopt.config, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    (void)parse_grid(text.str(), sopt.config);
  }
  out << stem << ": ok (" << sc.config.steps() << " steps of "
      << format_number(sc.config.dt) << " s)\n";
  return kExitOk;
}

}  // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric position and line-of-sight control of a rolling sphere"};
  app.name("spherebot");
  app.require_subcommand(1);

  ScenarioOptions run_s, sweep_s, validate_s;
  OutputOptions run_o, sweep_o;
  GridOptions grid;

  CLI::App* run = app.add_subcommand("run", "Simulate one scenario and export it");
  add_scenario_options(*run, run_s);
  add_output_options(*run, run_o);

  CLI::App* sw = app.add_subcommand("sweep", "Simulate a grid of scenarios");
  add_scenario_options(*sw, sweep_s);
  add_output_options(*sw, sweep_o);
  sw->add_option("--kp", grid.kp, "k_p values")->delimiter(',');
  sw->add_option("--kv", grid.kv, "k_v values")->delimiter(',');
  sw->add_option("--dt-values", grid.dt, "Step sizes")->delimiter(',');
  sw->add_option("--x0", grid.x0, "Initial x values")->delimiter(',');
  sw->add_option("--y0", grid.y0, "Initial y values")->delimiter(',');
  sw->add_option("--attitudes", grid.attitudes, "Initial attitudes (identity, fig2, fig3)")
      ->delimiter(',');
  sw->add_option("--grid", grid.grid_file, "TOML file with a [grid] section");
  sw->add_option("--threads", grid.threads, "Worker threads (0 = hardware)");

  CLI::App* presets = app.add_subcommand("presets", "List built-in scenarios");
  CLI::App* validate = app.add_subcommand("validate", "Check a scenario without running it");
  add_scenario_options(*validate, validate_s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_s, run_o, out);
    if (*sw) return cmd_sweep(sweep_s, sweep_o, grid, out);
    if (*presets) return cmd_presets(out);
    if (*validate) return cmd_validate(validate_s, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace spherebot::cli
