#include "osim/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace osim {

namespace {

using Setter = std::function<void(SimConfig&, double)>;
using SectionTable = std::map<std::string, Setter>;

const std::map<std::string, SectionTable>& setter_tables() {
  static const std::map<std::string, SectionTable> tables = {
      {"tractor",
       {
           {"m_body", [](SimConfig& c, double v) { c.tractor.m_body = v; }},
           {"m_wheels", [](SimConfig& c, double v) { c.tractor.m_wheels = v; }},
           {"i_pitch", [](SimConfig& c, double v) { c.tractor.i_pitch = v; }},
           {"a", [](SimConfig& c, double v) { c.tractor.a = v; }},
           {"b", [](SimConfig& c, double v) { c.tractor.b = v; }},
           {"track", [](SimConfig& c, double v) { c.tractor.track = v; }},
           {"h_cg", [](SimConfig& c, double v) { c.tractor.h_cg = v; }},
           {"i_yaw", [](SimConfig& c, double v) { c.tractor.i_yaw = v; }},
           {"i_roll", [](SimConfig& c, double v) { c.tractor.i_roll = v; }},
           {"g", [](SimConfig& c, double v) { c.tractor.g = v; }},
       }},
      {"tires",
       {
           {"vertical_stiffness",
            [](SimConfig& c, double v) { c.tractor.tires.vertical_stiffness = v; }},
           {"vertical_damping",
            [](SimConfig& c, double v) { c.tractor.tires.vertical_damping = v; }},
           {"cornering_stiffness",
            [](SimConfig& c, double v) { c.tractor.tires.cornering_stiffness = v; }},
           {"friction", [](SimConfig& c, double v) { c.tractor.tires.friction = v; }},
           {"min_speed", [](SimConfig& c, double v) { c.tractor.tires.min_speed = v; }},
           {"relaxation_length",
            [](SimConfig& c, double v) { c.tractor.tires.relaxation_length = v; }},
       }},
      {"terrain",
       {
           {"gradient_deg", [](SimConfig& c, double v) { c.slope.gradient = deg2rad(v); }},
           {"slope_height", [](SimConfig& c, double v) { c.slope.height = v; }},
           {"ramp_start_x", [](SimConfig& c, double v) { c.slope.ramp_start_x = v; }},
           {"road_width", [](SimConfig& c, double v) { c.road.width = v; }},
           {"corner_radius", [](SimConfig& c, double v) { c.road.corner_radius = v; }},
           {"corner_turn_deg",
            [](SimConfig& c, double v) { c.road.corner_turn = deg2rad(v); }},
           {"corner_setback", [](SimConfig& c, double v) { c.road.corner_setback = v; }},
           {"exit_length", [](SimConfig& c, double v) { c.road.exit_length = v; }},
           {"embankment_setback",
            [](SimConfig& c, double v) { c.road.embankment_setback = v; }},
           {"embankment_drop",
            [](SimConfig& c, double v) { c.road.embankment_drop = v; }},
           {"embankment_gradient_deg",
            [](SimConfig& c, double v) { c.road.embankment_gradient = deg2rad(v); }},
       }},
      {"driver",
       {
           {"lookahead", [](SimConfig& c, double v) { c.driver.lookahead = v; }},
           {"steer_max_deg", [](SimConfig& c, double v) { c.driver.steer_max = deg2rad(v); }},
           {"steer_rate_max", [](SimConfig& c, double v) { c.driver.steer_rate_max = v; }},
           {"speed_target", [](SimConfig& c, double v) { c.driver.speed_target = v; }},
           {"speed_gain", [](SimConfig& c, double v) { c.driver.speed_gain = v; }},
           {"force_max", [](SimConfig& c, double v) { c.driver.force_max = v; }},
       }},
      {"sim",
       {
           {"dt", [](SimConfig& c, double v) { c.dt = v; }},
           {"t_end", [](SimConfig& c, double v) { c.t_end = v; }},
           {"settle_time", [](SimConfig& c, double v) { c.settle_time = v; }},
           {"liftoff_debounce", [](SimConfig& c, double v) { c.liftoff_debounce = v; }},
           {"liftoff_force_eps", [](SimConfig& c, double v) { c.liftoff_force_eps = v; }},
       }},
  };
  return tables;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& section,
                    const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config: value '" + text + "' for key '" + key +
                              "' in section [" + section + "] is not a number");
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
  SimConfig config;
  const auto& tables = setter_tables();

  std::istringstream stream(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: malformed section header at line " +
                                    std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      if (tables.find(section) == tables.end())
        throw std::invalid_argument("config: unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw std::invalid_argument("config: key '" + key + "' appears before any section");

    const SectionTable& table = tables.at(section);
    const auto it = table.find(key);
    if (it == table.end())
      throw std::invalid_argument("config: unknown key '" + key + "' in section [" +
                                  section + "]");
    it->second(config, parse_double(value, section, key));
  }
  return config;
}

SimConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config_text(buffer.str());
}

nlohmann::json config_echo(const SimConfig& c) {
  return nlohmann::json{
      {"tractor",
       {{"m_body", c.tractor.m_body},
        {"m_wheels", c.tractor.m_wheels},
        {"i_pitch", c.tractor.i_pitch},
        {"a", c.tractor.a},
        {"b", c.tractor.b},
        {"track", c.tractor.track},
        {"h_cg", c.tractor.h_cg},
        {"i_yaw", c.tractor.i_yaw},
        {"i_roll", c.tractor.i_roll},
        {"g", c.tractor.g}}},
      {"tires",
       {{"vertical_stiffness", c.tractor.tires.vertical_stiffness},
        {"vertical_damping", c.tractor.tires.vertical_damping},
        {"cornering_stiffness", c.tractor.tires.cornering_stiffness},
        {"friction", c.tractor.tires.friction},
        {"min_speed", c.tractor.tires.min_speed},
        {"relaxation_length", c.tractor.tires.relaxation_length}}},
      {"terrain",
       {{"gradient", c.slope.gradient},
        {"slope_height", c.slope.height},
        {"ramp_start_x", c.slope.ramp_start_x},
        {"road_width", c.road.width},
        {"corner_radius", c.road.corner_radius},
        {"corner_turn", c.road.corner_turn},
        {"corner_setback", c.road.corner_setback},
        {"exit_length", c.road.exit_length},
        {"embankment_setback", c.road.embankment_setback},
        {"embankment_drop", c.road.embankment_drop},
        {"embankment_gradient", c.road.embankment_gradient}}},
      {"driver",
       {{"lookahead", c.driver.lookahead},
        {"steer_max", c.driver.steer_max},
        {"steer_rate_max", c.driver.steer_rate_max},
        {"speed_target", c.driver.speed_target},
        {"speed_gain", c.driver.speed_gain},
        {"force_max", c.driver.force_max}}},
      {"sim",
       {{"dt", c.dt},
        {"t_end", c.t_end},
        {"settle_time", c.settle_time},
        {"liftoff_debounce", c.liftoff_debounce},
        {"liftoff_force_eps", c.liftoff_force_eps}}},
  };
}

SimConfig config_from_json(const nlohmann::json& j) {
  SimConfig c;
  try {
    const auto& tractor = j.at("tractor");
    c.tractor.m_body = tractor.at("m_body").get<double>();
    c.tractor.m_wheels = tractor.at("m_wheels").get<double>();
    c.tractor.i_pitch = tractor.at("i_pitch").get<double>();
    c.tractor.a = tractor.at("a").get<double>();
    c.tractor.b = tractor.at("b").get<double>();
    c.tractor.track = tractor.at("track").get<double>();
    c.tractor.h_cg = tractor.at("h_cg").get<double>();
    c.tractor.i_yaw = tractor.at("i_yaw").get<double>();
    c.tractor.i_roll = tractor.at("i_roll").get<double>();
    c.tractor.g = tractor.at("g").get<double>();

    const auto& tires = j.at("tires");
    c.tractor.tires.vertical_stiffness = tires.at("vertical_stiffness").get<double>();
    c.tractor.tires.vertical_damping = tires.at("vertical_damping").get<double>();
    c.tractor.tires.cornering_stiffness = tires.at("cornering_stiffness").get<double>();
    c.tractor.tires.friction = tires.at("friction").get<double>();
    c.tractor.tires.min_speed = tires.at("min_speed").get<double>();
    c.tractor.tires.relaxation_length = tires.at("relaxation_length").get<double>();

    const auto& terrain = j.at("terrain");
    c.slope.gradient = terrain.at("gradient").get<double>();
    c.slope.height = terrain.at("slope_height").get<double>();
    c.slope.ramp_start_x = terrain.at("ramp_start_x").get<double>();
    c.road.width = terrain.at("road_width").get<double>();
    c.road.corner_radius = terrain.at("corner_radius").get<double>();
    c.road.corner_turn = terrain.at("corner_turn").get<double>();
    c.road.corner_setback = terrain.at("corner_setback").get<double>();
    c.road.exit_length = terrain.at("exit_length").get<double>();
    c.road.embankment_setback = terrain.at("embankment_setback").get<double>();
    c.road.embankment_drop = terrain.at("embankment_drop").get<double>();
    c.road.embankment_gradient = terrain.at("embankment_gradient").get<double>();

    const auto& driver = j.at("driver");
    c.driver.lookahead = driver.at("lookahead").get<double>();
    c.driver.steer_max = driver.at("steer_max").get<double>();
    c.driver.steer_rate_max = driver.at("steer_rate_max").get<double>();
    c.driver.speed_target = driver.at("speed_target").get<double>();
    c.driver.speed_gain = driver.at("speed_gain").get<double>();
    c.driver.force_max = driver.at("force_max").get<double>();

    const auto& sim = j.at("sim");
    c.dt = sim.at("dt").get<double>();
    c.t_end = sim.at("t_end").get<double>();
    c.settle_time = sim.at("settle_time").get<double>();
    c.liftoff_debounce = sim.at("liftoff_debounce").get<double>();
    c.liftoff_force_eps = sim.at("liftoff_force_eps").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: bad JSON echo: ") + e.what());
  }
  return c;
}

}  // namespace osim
