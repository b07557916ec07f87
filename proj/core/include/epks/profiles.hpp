#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "epks/characteristics.hpp"
#include "epks/grid.hpp"

namespace epks {

/// Named analytic initial profile:
///   equilibrium                     sigma0 = M
///   cosine(a,k)                     M + a cos(k (x - left))               torus
///   vacuum-ramp(width,F0[,order])   see InitialProfile::vacuum_ramp       line
///   bump(a,half_width)              InitialProfile::symmetric_bump at the grid centre
struct ProfileSpec {
  std::string name = "equilibrium";
  std::vector<double> args;
};

/// Throws ParseError for malformed text or an unknown name.
ProfileSpec parse_profile(std::string_view text);
std::string to_string(const ProfileSpec& spec);

/// Samples on a torus grid; vacuum-ramp is rejected (InvalidArgument).
Field torus_profile(const ProfileSpec& spec, const Grid& grid, double M);
/// Line profile; cosine is rejected (InvalidArgument). A bump is centred at 0.
InitialProfile line_profile(const ProfileSpec& spec, double M);

}  // namespace epks
