#include "osim/output.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "osim/config.hpp"

namespace osim {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

constexpr const char* kCsvHeader =
    "t,x,y,psi,u,v,r,z,theta,phi,steer,fz_fl,fz_fr,fz_rl,fz_rr,fy_front,fy_rear,"
    "elev_front,ltr";

}  // namespace

void write_csv(const SimOutput& out, std::ostream& os) {
  os << kCsvHeader << '\n';
  const std::vector<double>* channels[] = {
      &out.t,     &out.x,     &out.y,     &out.psi,   &out.u,        &out.v,
      &out.r,     &out.z,     &out.theta, &out.phi,   &out.steer,    &out.fz_fl,
      &out.fz_fr, &out.fz_rl, &out.fz_rr, &out.fy_front, &out.fy_rear, &out.elev_front,
      &out.ltr};
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool first = true;
    for (const auto* ch : channels) {
      if (!first) os << ',';
      os << format_double((*ch)[i]);
      first = false;
    }
    os << '\n';
  }
}

void write_csv_file(const SimOutput& out, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("output: cannot open '" + path + "' for writing");
  write_csv(out, file);
  if (!file) throw std::runtime_error("output: failed writing '" + path + "'");
}

nlohmann::json summary_json(const SimOutput& out, const std::string& scenario_name,
                            const SimConfig& config) {
  nlohmann::json events = nlohmann::json::array();
  for (const Event& e : out.events) {
    events.push_back({{"kind", to_string(e.kind)}, {"t", e.t}});
  }
  return nlohmann::json{{"scenario", scenario_name},
                        {"terminal_status", to_string(out.status)},
                        {"events", events},
                        {"config", config_echo(config)}};
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return columns[i];
  }
  throw std::invalid_argument("csv: missing column '" + name + "'");
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) table.names.push_back(cell);
  if (table.names.empty()) throw std::invalid_argument("csv: empty header");
  table.columns.resize(table.names.size());

  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream fields(line);
    std::size_t col = 0;
    while (std::getline(fields, cell, ',')) {
      if (col >= table.names.size())
        throw std::invalid_argument("csv: too many fields at row " + std::to_string(row));
      try {
        table.columns[col].push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::invalid_argument("csv: bad number '" + cell + "' at row " +
                                    std::to_string(row));
      }
      ++col;
    }
    if (col != table.names.size())
      throw std::invalid_argument("csv: wrong field count at row " + std::to_string(row));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("csv: cannot open '" + path + "'");
  return read_csv(file);
}

namespace {

void write_dat(const std::string& path, const std::string& header,
               const std::vector<const std::vector<double>*>& cols) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("output: cannot open '" + path + "' for writing");
  file << "# " << header << '\n';
  const std::size_t rows = cols.empty() ? 0 : cols.front()->size();
  for (std::size_t i = 0; i < rows; ++i) {
    bool first = true;
    for (const auto* c : cols) {
      if (!first) file << ' ';
      file << format_double((*c)[i]);
      first = false;
    }
    file << '\n';
  }
}

}  // namespace

void write_plot_files(const CsvTable& table, const std::string& out_dir) {
  if (table.rows() == 0) throw std::invalid_argument("plotdata: CSV has no data rows");

  const auto& t = table.column("t");
  const auto& fz_fl = table.column("fz_fl");
  const auto& fz_fr = table.column("fz_fr");
  const auto& fy_front = table.column("fy_front");
  const auto& elev = table.column("elev_front");
  const auto& steer = table.column("steer");
  const auto& x = table.column("x");
  const auto& y = table.column("y");

  std::vector<double> fz_front(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) fz_front[i] = fz_fl[i] + fz_fr[i];

  const std::string dir = out_dir.empty() ? "." : out_dir;
  write_dat(dir + "/fig6a.dat", "t fz_front_total fy_front", {&t, &fz_front, &fy_front});
  write_dat(dir + "/fig6b.dat", "t elev_front steer", {&t, &elev, &steer});
  write_dat(dir + "/traj.dat", "x y", {&x, &y});
}

}  // namespace osim
