#include "epks/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace epks {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_number(std::string_view s, std::string_view key) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "key " + std::string(key) + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t to_count(std::string_view s, std::string_view key) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "key " + std::string(key) + ": not a non-negative integer");
  }
  return v;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(to_number(text.substr(0, comma), "list"));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void apply_config(std::string_view text, ExperimentSpec& spec) {
  ParamSet& p = spec.params;
  bool torus = p.grid.is_torus();
  auto points = static_cast<std::uint64_t>(p.grid.points());
  double left = p.grid.left();
  double right = p.grid.right();
  bool grid_touched = false;
  std::string initial_csv;

  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "epsilon") p.epsilon = to_number(value, key);
    else if (key == "alpha") p.alpha = to_number(value, key);
    else if (key == "gamma") p.gamma = to_number(value, key);
    else if (key == "mass_level") p.mass_level = to_number(value, key);
    else if (key == "rho_lower") p.rho_lower = to_number(value, key);
    else if (key == "rho_upper") p.rho_upper = to_number(value, key);
    else if (key == "dt_cfl") p.dt_cfl = to_number(value, key);
    else if (key == "t_end") p.t_end = to_number(value, key);
    else if (key == "grid_kind") {
      if (value == "torus") torus = true;
      else if (value == "line") torus = false;
      else throw Error(ErrorCode::ParseError, "grid_kind must be torus or line");
      grid_touched = true;
    } else if (key == "grid_points") {
      points = to_count(value, key);
      grid_touched = true;
    } else if (key == "grid_length") {
      right = left + to_number(value, key);
      grid_touched = true;
    } else if (key == "grid_left") {
      const double len = right - left;
      left = to_number(value, key);
      right = left + len;
      grid_touched = true;
    } else if (key == "grid_right") {
      right = to_number(value, key);
      grid_touched = true;
    } else if (key == "profile") spec.profile = parse_profile(value);
    else if (key == "epsilon_list") spec.epsilon_list = parse_number_list(value);
    else if (key == "wavenumbers") spec.wavenumbers = parse_number_list(value);
    else if (key == "w0_amplitude") spec.w0_amplitude = to_number(value, key);
    else if (key == "samples") spec.samples = static_cast<int>(to_count(value, key));
    else if (key == "fit_start") spec.fit_start = to_number(value, key);
    else if (key == "output_dir") spec.output_dir = std::string(value);
    else if (key == "seed") spec.seed = to_count(value, key);
    else if (key == "initial_csv") initial_csv = std::string(value);
    else throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  if (grid_touched) {
    try {
      p.grid = torus ? Grid::torus(right - left, points, left) : Grid::line(left, right, points);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, std::string("invalid grid: ") + e.what());
    }
  }
  if (!initial_csv.empty()) attach_initial_csv(spec, initial_csv);
}

void load_config(const std::string& path, ExperimentSpec& spec) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  apply_config(ss.str(), spec);
}

}  // namespace epks
