#include "epks/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "epks/error.hpp"

namespace epks {

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const CsvRow& header, const std::vector<CsvRow>& rows) {
  std::string out;
  auto emit = [&out](const CsvRow& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  f << content;
  if (!f) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

CsvRow diagnostics_header() {
  return {"tau", "e0",     "e1",     "e_total", "d0",   "d1",          "d_total", "sup_dev",
          "grad_l4", "l2_dev", "h2_dev", "w_l2", "mass", "mass_defect", "rho_min", "rho_max"};
}

CsvRow diagnostics_row(const DiagnosticsRecord& d) {
  return {csv_number(d.tau),     csv_number(d.e0),      csv_number(d.e1),     csv_number(d.e_total),
          csv_number(d.d0),      csv_number(d.d1),      csv_number(d.d_total), csv_number(d.sup_dev),
          csv_number(d.grad_l4), csv_number(d.l2_dev),  csv_number(d.h2_dev), csv_number(d.w_l2),
          csv_number(d.mass),    csv_number(d.mass_defect), csv_number(d.rho_min), csv_number(d.rho_max)};
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

bool parse_double(std::string_view s, double& v) {
  s = strip(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

SampleColumns read_two_column_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot read " + path);
  SampleColumns out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    const auto comma = line.find(',');
    double x = 0.0, v = 0.0;
    const bool ok = comma != std::string::npos && line.find(',', comma + 1) == std::string::npos &&
                    parse_double(std::string_view(line).substr(0, comma), x) &&
                    parse_double(std::string_view(line).substr(comma + 1), v);
    if (!ok) {
      if (out.x.empty() && line_no == 1) continue;
      throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line_no) + ": expected two numbers");
    }
    out.x.push_back(x);
    out.value.push_back(v);
  }
  return out;
}

}  // namespace epks
