#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osim/config.hpp"
#include "osim/output.hpp"
#include "osim/sim.hpp"

namespace {

constexpr int kExitCompleted = 0;
constexpr int kExitError = 1;
constexpr int kExitRolledOver = 10;

std::vector<double> parse_range(const std::string& text) {
  double start = 0.0, stop = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
      !(in >> std::ws).eof())
    throw std::invalid_argument("range '" + text + "' is not start:stop:step");
  if (!(step > 0.0) || stop < start)
    throw std::invalid_argument("range '" + text + "' is empty or inverted");
  std::vector<double> values;
  for (int i = 0;; ++i) {
    const double v = start + i * step;
    if (v > stop + 1e-9 * step) break;
    values.push_back(v);
  }
  return values;
}

unsigned thread_cap_from_env() {
  const char* env = std::getenv("OVERTURN_SIM_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    const unsigned long cap = std::stoul(env);
    if (cap == 0) return 0;
    return static_cast<unsigned>(cap);
  } catch (const std::exception&) {
    throw std::invalid_argument("OVERTURN_SIM_THREADS is not a number: '" +
                                std::string(env) + "'");
  }
}

osim::SimConfig load_or_default(const std::string& config_path) {
  if (config_path.empty()) return osim::SimConfig{};
  return osim::load_config(config_path);
}

int cmd_simulate(const std::string& config_path, const std::string& scenario,
                 const std::string& out_csv, const std::string& out_json) {
  osim::SimConfig config = load_or_default(config_path);
  if (scenario == "slope") {
    config.scenario = osim::Scenario::WithSlope;
  } else if (scenario == "flat") {
    config.scenario = osim::Scenario::WithoutSlope;
  } else {
    throw std::invalid_argument("scenario must be 'slope' or 'flat', got '" + scenario + "'");
  }

  const osim::SimOutput out = osim::run(config);
  osim::write_csv_file(out, out_csv);

  std::ofstream json_file(out_json, std::ios::binary);
  if (!json_file) throw std::runtime_error("cannot open '" + out_json + "' for writing");
  json_file << osim::summary_json(out, scenario, config).dump(2) << '\n';

  std::cout << "scenario=" << scenario << " status=" << osim::to_string(out.status)
            << " samples=" << out.size() << " events=" << out.events.size() << '\n';
  for (const osim::Event& e : out.events) {
    std::cout << "  " << osim::to_string(e.kind) << " t=" << osim::format_double(e.t)
              << '\n';
  }

  switch (out.status) {
    case osim::TerminalStatus::Completed: return kExitCompleted;
    case osim::TerminalStatus::RolledOver: return kExitRolledOver;
    case osim::TerminalStatus::Aborted: break;
  }
  std::cerr << "error: simulation diverged; partial output written\n";
  return kExitError;
}

int cmd_sweep(const std::string& config_path, const std::string& speeds_range,
              const std::string& gradients_range, const std::string& out_csv) {
  const osim::SimConfig base = load_or_default(config_path);
  const std::vector<double> speeds = parse_range(speeds_range);
  const std::vector<double> gradients_deg = parse_range(gradients_range);
  std::vector<double> gradients_rad;
  gradients_rad.reserve(gradients_deg.size());
  for (double gdeg : gradients_deg) gradients_rad.push_back(osim::deg2rad(gdeg));

  const osim::StabilityMap map =
      osim::sweep(base, speeds, gradients_rad, thread_cap_from_env());

  std::ofstream file(out_csv, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + out_csv + "' for writing");
  file << "speed,gradient_deg,status,t_liftoff,t_offroad,t_rollover\n";
  for (std::size_t gi = 0; gi < map.gradients.size(); ++gi) {
    for (std::size_t si = 0; si < map.speeds.size(); ++si) {
      const osim::SweepCell& cell = map.cell(gi, si);
      file << osim::format_double(cell.speed) << ',' << osim::format_double(gradients_deg[gi])
           << ',' << osim::to_string(cell.status) << ','
           << (cell.t_liftoff ? osim::format_double(*cell.t_liftoff) : "") << ','
           << (cell.t_offroad ? osim::format_double(*cell.t_offroad) : "") << ','
           << (cell.t_rollover ? osim::format_double(*cell.t_rollover) : "") << '\n';
    }
  }
  if (!file) throw std::runtime_error("failed writing '" + out_csv + "'");

  std::cout << "sweep: " << map.speeds.size() << " speeds x " << map.gradients.size()
            << " gradients -> " << out_csv << '\n';
  return kExitCompleted;
}

int cmd_plotdata(const std::string& run_csv, const std::string& out_dir) {
  const osim::CsvTable table = osim::read_csv_file(run_csv);
  osim::write_plot_files(table, out_dir);
  std::cout << "plotdata: fig6a.dat fig6b.dat traj.dat in " << out_dir << '\n';
  return kExitCompleted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-order tractor overturning simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string scenario = "slope";
  std::string out_csv = "run.csv";
  std::string out_json = "run.json";
  CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario");
  simulate->add_option("--config", config_path, "Config file (INI-style)");
  simulate->add_option("--scenario", scenario, "slope or flat");
  simulate->add_option("--out-csv", out_csv, "Time-series CSV path");
  simulate->add_option("--out-json", out_json, "Summary JSON path");

  std::string sweep_config;
  std::string speeds = "0.5:8:0.25";
  std::string gradients = "0:18:1.5";
  std::string sweep_csv = "sweep.csv";
  CLI::App* sweep = app.add_subcommand("sweep", "Run a speed x gradient grid");
  sweep->add_option("--config", sweep_config, "Config file (INI-style)");
  sweep->add_option("--speeds", speeds, "start:stop:step in m/s");
  sweep->add_option("--gradients", gradients, "start:stop:step in degrees");
  sweep->add_option("--out", sweep_csv, "Stability map CSV path");

  std::string run_csv;
  std::string out_dir = ".";
  CLI::App* plotdata = app.add_subcommand("plotdata", "Extract plot files from a run CSV");
  plotdata->add_option("--in", run_csv, "CSV produced by simulate")->required();
  plotdata->add_option("--out-dir", out_dir, "Directory for .dat files");

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return cmd_simulate(config_path, scenario, out_csv, out_json);
    if (sweep->parsed()) return cmd_sweep(sweep_config, speeds, gradients, sweep_csv);
    if (plotdata->parsed()) return cmd_plotdata(run_csv, out_dir);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitCompleted : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
