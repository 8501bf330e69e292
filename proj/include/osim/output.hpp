#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "osim/sim.hpp"

namespace osim {

// Shortest decimal representation that round-trips the exact double.
std::string format_double(double v);

// Fixed header `t,x,...,ltr`, one row per recorded step, full precision.
void write_csv(const SimOutput& out, std::ostream& os);
void write_csv_file(const SimOutput& out, const std::string& path);

// Run summary: scenario, terminal status, events, and the full config echo.
nlohmann::json summary_json(const SimOutput& out, const std::string& scenario_name,
                            const SimConfig& config);

// Column-major numeric table read back from a simulate CSV.
struct CsvTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  // Throws std::invalid_argument naming the column when absent.
  const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

// Gnuplot-ready extracts of a simulate CSV: fig6a.dat (t, front axle load,
// front cornering force), fig6b.dat (t, road elevation at the front axle,
// steering angle), traj.dat (x, y).
void write_plot_files(const CsvTable& table, const std::string& out_dir);

}  // namespace osim
