#include "epks/config.hpp"
#include "epks/csv.hpp"
#include "epks/experiments.hpp"
#include "epks/profiles.hpp"
#include "support.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace epks;
using namespace epks::testing;

namespace {

ExperimentSpec small_torus_spec() {
  ExperimentSpec s;
  s.params.grid = unit_torus(32);
  s.params.t_end = 0.5;
  s.samples = 6;
  s.profile = parse_profile("cosine(0.3,1)");
  return s;
}

std::string sweep_csv(const ExperimentSpec& s) {
  const SweepTable t = run_epsilon_sweep(s);
  return to_csv(t.header(), t.csv_rows());
}

}  // namespace

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(csv_number(0.5), "0.5");
  EXPECT_EQ(csv_number(1.0), "1");
  EXPECT_EQ(csv_number(2e-5), "2.0000000000000002e-05");
  EXPECT_EQ(csv_number(0.0), "0");
  EXPECT_EQ(csv_number(std::nan("")), "nan");
  EXPECT_EQ(csv_number(-INFINITY), "-inf");
  Gen g(12);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(g.uniform(-1, 1), g.integer(-60, 60));
    EXPECT_EQ(std::stod(csv_number(x)), x);
  }
}

TEST(Csv, FieldQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(to_csv({"x", "y"}, {{"1", "a,b"}}), "x,y\n1,\"a,b\"\n");
  EXPECT_EQ(diagnostics_header().size(), 16u);
}

TEST(Csv, WriteTextFailsOnBadPath) {
  expect_error(ErrorCode::IoError, [] { write_text("/nonexistent-dir/x/y.csv", "a"); });
}

TEST(Profiles, ParseAndPrint) {
  const ProfileSpec a = parse_profile("cosine(0.3, 1)");
  EXPECT_EQ(a.name, "cosine");
  EXPECT_EQ(a.args, (std::vector<double>{0.3, 1.0}));
  EXPECT_EQ(parse_profile(to_string(a)).args, a.args);
  EXPECT_EQ(parse_profile("equilibrium").name, "equilibrium");
  EXPECT_EQ(parse_profile("vacuum-ramp(1,-0.3,2)").args.size(), 3u);
  for (const char* bad : {"", "cosine", "cosine(0.3)", "cosine(a,1)", "blob(1)", "bump(1,2", "vacuum-ramp(1)"}) {
    expect_error(ErrorCode::ParseError, [&] { parse_profile(bad); });
  }
}

TEST(Profiles, TorusAndLineSampling) {
  const Grid g = unit_torus(16);
  const Field f = torus_profile(parse_profile("cosine(0.3,1)"), g, 1.0);
  EXPECT_NEAR(f.values()[0], 1.3, 1e-15);
  EXPECT_NEAR(f.integral() / g.length(), 1.0, 1e-15);
  const Field b = torus_profile(parse_profile("bump(0.3,1)"), g, 1.0);
  EXPECT_NEAR(b.integral() / g.length(), 1.0, 1e-3);
  expect_error(ErrorCode::InvalidArgument, [&] { torus_profile(parse_profile("vacuum-ramp(1,-0.3)"), g, 1.0); });
  expect_error(ErrorCode::InvalidArgument, [] { line_profile(parse_profile("cosine(0.3,1)"), 1.0); });
  EXPECT_EQ(line_profile(parse_profile("vacuum-ramp(1,-0.3)"), 1.0).vacuum_set().size(), 1u);
}

TEST(Config, AppliesKeys) {
  ExperimentSpec s;
  apply_config("# comment\nepsilon = 0.1\ngrid_points=64\ngrid_length = 6.2831853071795862\n"
               "epsilon_list = 0.2, 0.1\nprofile = cosine(0.2,1)\nt_end = 2 # trailing\nsamples = 5\n",
               s);
  EXPECT_EQ(s.params.epsilon, 0.1);
  EXPECT_EQ(s.params.grid.points(), 64u);
  EXPECT_EQ(s.epsilon_list, (std::vector<double>{0.2, 0.1}));
  EXPECT_EQ(s.profile.args, (std::vector<double>{0.2, 1.0}));
  EXPECT_EQ(s.params.t_end, 2.0);
  EXPECT_EQ(s.samples, 5);
  apply_config("grid_kind = line\ngrid_left = -2\ngrid_right = 3\ngrid_points = 11\n", s);
  EXPECT_FALSE(s.params.grid.is_torus());
  EXPECT_EQ(s.params.grid.spacing(), 0.5);
}

TEST(Config, RejectsMalformedText) {
  ExperimentSpec s;
  for (const char* bad : {"unknown = 1", "epsilon", "epsilon = abc", "grid_kind = sphere", "samples = 2.5"}) {
    expect_error(ErrorCode::ParseError, [&] { apply_config(bad, s); });
  }
  expect_error(ErrorCode::IoError, [&] { load_config("/nonexistent/cfg.txt", s); });
  expect_error(ErrorCode::ParseError, [] { parse_number_list("1,,2"); });
}

TEST(Config, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "epks_cfg_test.txt";
  std::ofstream(path) << "alpha = 0.5\n";
  ExperimentSpec s;
  load_config(path.string(), s);
  EXPECT_EQ(s.params.alpha, 0.5);
  std::filesystem::remove(path);
}

TEST(ExperimentSpec, Validation) {
  ExperimentSpec s;
  EXPECT_NO_THROW(s.validate());
  s.epsilon_list = {0.1, 0.2};
  expect_error(ErrorCode::InvalidArgument, [&] { s.validate(); });
  s.epsilon_list = {0.1, 1.0};
  expect_error(ErrorCode::InvalidArgument, [&] { s.validate(); });
  s = ExperimentSpec{};
  s.samples = 1;
  expect_error(ErrorCode::InvalidArgument, [&] { s.validate(); });
  s = ExperimentSpec{};
  s.params.t_end = 2.0;
  s.samples = 5;
  EXPECT_EQ(s.sample_times(), (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
}

TEST(EpsilonSweep, EquilibriumGivesZeroErrors) {
  ExperimentSpec s = small_torus_spec();
  s.profile = parse_profile("equilibrium");
  const SweepTable t = run_epsilon_sweep(s);
  ASSERT_EQ(t.rows.size(), 4u);
  for (const auto& r : t.rows) {
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.sup_l2_error, 0.0);
  }
  EXPECT_FALSE(t.strictly_decreasing);
}

TEST(EpsilonSweep, ErrorsShrinkAndMembersAreIndependent) {
  ExperimentSpec s = small_torus_spec();
  const SweepTable all = run_epsilon_sweep(s);
  EXPECT_TRUE(all.strictly_decreasing);
  EXPECT_LT(all.final_ratio, 1.0);
  ExperimentSpec one = s;
  one.epsilon_list = {0.05};
  const SweepTable single = run_epsilon_sweep(one);
  EXPECT_EQ(single.rows[0].sup_l2_error, all.rows[2].sup_l2_error);
  EXPECT_EQ(single.rows[0].steps, all.rows[2].steps);
}

TEST(EpsilonSweep, IllPreparedDataShowsALayer) {
  ExperimentSpec s = small_torus_spec();
  s.epsilon_list = {0.1};
  s.w0_amplitude = 0.1;
  s.params.t_end = 1.0;
  s.samples = 201;
  const SweepTable t = run_epsilon_sweep(s);
  ASSERT_TRUE(t.rows[0].ok);
  EXPECT_GT(t.rows[0].layer_w_l2, 0.1 * std::sqrt(pi) * 0.9);
}

TEST(VacuumCollapse, ClosedFormsAndReconstruction) {
  ExperimentSpec s;
  s.params.grid = Grid::line(-1.0, 1.0, 4096);
  s.params.t_end = 3.0;
  s.profile = parse_profile("vacuum-ramp(1,-0.3)");
  const VacuumCollapseReport r = run_vacuum_collapse(s);
  ASSERT_EQ(r.rows.size(), 7u);
  EXPECT_LE(r.max_length_rel_error, 1e-12);
  EXPECT_LE(r.max_growth_rel_error, 1e-12);
  EXPECT_LE(r.max_fd_rel_error, 0.05);
  EXPECT_LE(r.max_gap_error_in_h, 1.0);
  EXPECT_EQ(r.rows[0].length, 1.0);
  EXPECT_NEAR(r.rows[6].limit_point, -0.3, 1e-15);
  s.profile = parse_profile("equilibrium");
  expect_error(ErrorCode::NoVacuum, [&] { run_vacuum_collapse(s); });
}

TEST(VacuumCollapse, HigherOrderEdgeUsesMatchingExponent) {
  ExperimentSpec s;
  s.params.grid = Grid::line(-1.0, 1.0, 512);
  s.params.t_end = 2.0;
  s.profile = parse_profile("vacuum-ramp(1,-0.3,3)");
  const VacuumCollapseReport r = run_vacuum_collapse(s);
  EXPECT_NEAR(r.rows.back().growth_exact, std::exp(8.0), 1e-9);
  EXPECT_LE(r.max_growth_rel_error, 1e-12);
  EXPECT_TRUE(std::isnan(r.rows.back().fd_gradient));
}

TEST(DecayFit, EquilibriumIsZeroSignal) {
  ExperimentSpec s = small_torus_spec();
  s.profile = parse_profile("equilibrium");
  const DecayReport r = run_decay_fit(s);
  EXPECT_TRUE(r.zero_signal);
  EXPECT_TRUE(r.passed());
  for (const auto& e : r.entries) EXPECT_EQ(e.status, RateEntry::Status::ZeroSignal);
}

TEST(DecayFit, CosineDecays) {
  ExperimentSpec s = small_torus_spec();
  s.params.epsilon = 0.05;
  s.params.t_end = 3.0;
  s.samples = 31;
  const DecayReport r = run_decay_fit(s);
  ASSERT_EQ(r.entries.size(), 4u);
  EXPECT_TRUE(r.passed()) << r.entries[0].rate << " " << r.entries[3].rate;
  EXPECT_NEAR(r.ks_rate_floor, 0.9 * 0.7, 1e-12);
}

TEST(SpectrumTableTest, RowsCoverEveryPair) {
  ExperimentSpec s;
  s.epsilon_list = {0.1, 0.05};
  s.wavenumbers = {0.0, 1.0, 2.0};
  const SpectrumTable t = run_spectrum_table(s);
  ASSERT_EQ(t.rows.size(), 6u);
  EXPECT_TRUE(t.all_stable);
  EXPECT_NEAR(t.rows[1].slow_re, -1.21475, 1e-4);
  EXPECT_EQ(t.csv_rows()[0].size(), t.header().size());
  EXPECT_EQ(t.csv_rows()[0][9], "nan");
}

TEST(Determinism, RepeatedRunsGiveIdenticalCsv) {
  ExperimentSpec s = small_torus_spec();
  s.epsilon_list = {0.2, 0.1};
  EXPECT_EQ(sweep_csv(s), sweep_csv(s));
  ExperimentSpec d = small_torus_spec();
  const DecayReport a = run_decay_fit(d), b = run_decay_fit(d);
  EXPECT_EQ(to_csv(a.header(), a.csv_rows()), to_csv(b.header(), b.csv_rows()));
}

TEST(InitialCsv, DefinesTorusGridAndDensity) {
  const auto path = std::filesystem::temp_directory_path() / "epks_initial_torus.csv";
  {
    std::ofstream f(path);
    f << "x,value\n";
    for (int i = 0; i < 16; ++i) f << csv_number(2 * pi * i / 16) << "," << csv_number(1.0 + 0.2 * std::cos(2 * pi * i / 16)) << "\n";
  }
  ExperimentSpec s;
  apply_config("initial_csv = " + path.string() + "\n", s);
  EXPECT_EQ(s.params.grid.points(), 16u);
  EXPECT_NEAR(s.params.grid.length(), 2 * pi, 1e-12);
  const Field rho0 = initial_density(s);
  EXPECT_NEAR(rho0.values()[0], 1.2, 1e-15);
  expect_error(ErrorCode::NotLine, [&] { initial_line_profile(s); });
  std::filesystem::remove(path);
}

TEST(InitialCsv, LineSamplesBuildAProfile) {
  const auto path = std::filesystem::temp_directory_path() / "epks_initial_line.csv";
  std::ofstream(path) << "-1,1\n-0.5,2\n0,1.5\n0.5,0\n1,0\n1.5,0\n2,1.5\n2.5,2\n3,1\n";
  ExperimentSpec s;
  s.params.grid = Grid::line(0, 1, 8);
  attach_initial_csv(s, path.string());
  const InitialProfile p = initial_line_profile(s);
  ASSERT_EQ(p.vacuum_set().size(), 1u);
  EXPECT_NEAR(vacuum_interval(1.0, p).length, std::exp(-1.0), 1e-15);
  std::filesystem::remove(path);
}

TEST(InitialCsv, RejectsMalformedFiles) {
  const auto path = std::filesystem::temp_directory_path() / "epks_initial_bad.csv";
  ExperimentSpec s;
  std::ofstream(path) << "0,1\n0.5,1\n0.7,1\n1.5,1\n";
  expect_error(ErrorCode::InvalidArgument, [&] { attach_initial_csv(s, path.string()); });
  std::ofstream(path) << "0,1\n1,x\n2,1\n3,1\n";
  expect_error(ErrorCode::ParseError, [&] { attach_initial_csv(s, path.string()); });
  std::filesystem::remove(path);
  expect_error(ErrorCode::IoError, [&] { attach_initial_csv(s, path.string()); });
}
