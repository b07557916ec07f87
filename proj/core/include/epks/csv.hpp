#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "epks/diagnostics.hpp"

namespace epks {

using CsvRow = std::vector<std::string>;

/// Shortest round-trip decimal ("%.17g", C locale): exponent notation for
/// |x| < 1e-4, "nan", "inf", "-inf" for non-finite values.
std::string csv_number(double x);
/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

std::string to_csv(const CsvRow& header, const std::vector<CsvRow>& rows);
struct SampleColumns {
  std::vector<double> x;
  std::vector<double> value;
};

/// Two-column numeric CSV (x, value); a non-numeric first row is taken as a
/// header. Throws IoError or ParseError.
SampleColumns read_two_column_csv(const std::string& path);

/// Throws IoError.
void write_text(const std::string& path, const std::string& content);

/// tau,e0,e1,e_total,d0,d1,d_total,sup_dev,grad_l4,l2_dev,h2_dev,w_l2,mass,mass_defect,rho_min,rho_max
CsvRow diagnostics_header();
CsvRow diagnostics_row(const DiagnosticsRecord& d);

}  // namespace epks
