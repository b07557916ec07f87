#include "epks/profiles.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "epks/error.hpp"

namespace epks {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

void require_arity(const ProfileSpec& p, std::size_t lo, std::size_t hi) {
  if (p.args.size() < lo || p.args.size() > hi) {
    throw Error(ErrorCode::ParseError, "wrong number of arguments for profile " + p.name);
  }
}

}  // namespace

ProfileSpec parse_profile(std::string_view text) {
  text = trim(text);
  ProfileSpec p;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    p.name = std::string(text);
  } else {
    if (text.back() != ')') throw Error(ErrorCode::ParseError, "missing ')' in profile " + std::string(text));
    p.name = std::string(trim(text.substr(0, open)));
    std::string_view inner = text.substr(open + 1, text.size() - open - 2);
    while (!trim(inner).empty()) {
      const auto comma = inner.find(',');
      p.args.push_back(parse_double(inner.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
    }
  }
  if (p.name == "equilibrium") {
    require_arity(p, 0, 0);
  } else if (p.name == "cosine") {
    require_arity(p, 2, 2);
  } else if (p.name == "vacuum-ramp") {
    require_arity(p, 2, 3);
  } else if (p.name == "bump") {
    require_arity(p, 2, 2);
  } else {
    throw Error(ErrorCode::ParseError, "unknown profile '" + p.name + "'");
  }
  return p;
}

std::string to_string(const ProfileSpec& spec) {
  std::string out = spec.name;
  if (spec.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < spec.args.size(); ++i) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, spec.args[i]);
    if (i) out += ',';
    out.append(buf, res.ptr);
  }
  return out + ')';
}

Field torus_profile(const ProfileSpec& spec, const Grid& grid, double M) {
  if (!grid.is_torus()) throw Error(ErrorCode::NotTorus, "torus profile requested on a line grid");
  const double left = grid.left();
  if (spec.name == "equilibrium") return Field::constant(grid, M);
  if (spec.name == "cosine") {
    const double a = spec.args[0];
    const double k = spec.args[1];
    return Field::sample(grid, [=](double x) { return M + a * std::cos(k * (x - left)); });
  }
  if (spec.name == "bump") {
    const double centre = left + 0.5 * grid.length();
    if (spec.args[1] > 0.5 * grid.length()) {
      throw Error(ErrorCode::InvalidArgument, "bump does not fit in the torus");
    }
    const InitialProfile prof = InitialProfile::symmetric_bump(M, spec.args[0], centre, spec.args[1]);
    return Field::sample(grid, [&](double x) { return prof.sigma0(x); });
  }
  throw Error(ErrorCode::InvalidArgument, "profile " + spec.name + " is only defined on the line");
}

InitialProfile line_profile(const ProfileSpec& spec, double M) {
  if (spec.name == "equilibrium") return InitialProfile::equilibrium(M);
  if (spec.name == "vacuum-ramp") {
    const int order = spec.args.size() > 2 ? static_cast<int>(spec.args[2]) : 1;
    if (spec.args.size() > 2 && static_cast<double>(order) != spec.args[2]) {
      throw Error(ErrorCode::InvalidArgument, "ramp order must be an integer");
    }
    return InitialProfile::vacuum_ramp(M, spec.args[0], spec.args[1], order);
  }
  if (spec.name == "bump") return InitialProfile::symmetric_bump(M, spec.args[0], 0.0, spec.args[1]);
  throw Error(ErrorCode::InvalidArgument, "profile " + spec.name + " is only defined on a torus");
}

}  // namespace epks
