#pragma once

#include <string>
#include <string_view>

#include "epks/experiments.hpp"

namespace epks {

/// Applies a flat `key = value` text to `spec`; '#' starts a comment.
///
/// Keys: epsilon alpha gamma mass_level rho_lower rho_upper grid_kind
/// (torus|line) grid_points grid_length grid_left grid_right dt_cfl t_end
/// profile epsilon_list wavenumbers w0_amplitude samples fit_start
/// output_dir seed initial_csv. Lists are comma separated; initial_csv is
/// applied after the grid keys (see attach_initial_csv). Throws ParseError.
void apply_config(std::string_view text, ExperimentSpec& spec);
/// Reads the file and applies it. Throws IoError or ParseError.
void load_config(const std::string& path, ExperimentSpec& spec);

/// Comma-separated list of numbers.
std::vector<double> parse_number_list(std::string_view text);

}  // namespace epks
