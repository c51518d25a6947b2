#include <gtest/gtest.h>

#include <sstream>

#include "otoc/cli/config.hpp"
#include "otoc/cli/runner.hpp"

namespace otoc::cli {
namespace {

const char* kExactConfig = R"(system:
  n_sites: 4
  hamiltonian: xy_chain
  initial_state: all_up
otoc:
  i: 2
  a: x
  j: 3
  b: x
  t_start: 0.0
  t_stop: 3.0
  t_points: 31
sampling:
  n_shots: 1000
  seed: 7
  n_repeats: 20
)";

const char* kDressingConfig = R"(dressing:
  laser_rabi: 2.0
  laser_detuning: 4.0
  microwave_rabi: 30.0
  microwave_detuning: 18.385714285714286
  c6: 20000.0
  c3: -1000.0
  r_min: 1.5
  r_max: 12.0
  r_points: 106
)";

std::string run(const std::string& command, const std::string& text,
                int* code = nullptr, RunOptions options = {}) {
  std::ostringstream out;
  std::ostringstream log;
  options.quiet = true;
  int rc = run_command(command, parse_config(text), options, out, log);
  if (code) *code = rc;
  return out.str();
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

TEST(Config, ParsesTimeRange) {
  RunConfig cfg = parse_config(kExactConfig);
  ASSERT_TRUE(cfg.system && cfg.otoc && cfg.sampling);
  EXPECT_EQ(cfg.system->n_sites, 4);
  ASSERT_EQ(cfg.otoc->times.size(), 31u);
  EXPECT_EQ(cfg.otoc->times.front(), 0.0);
  EXPECT_EQ(cfg.otoc->times.back(), 3.0);
  EXPECT_NEAR(cfg.otoc->times[10], 1.0, 1e-15);
  EXPECT_EQ(cfg.sampling->seed, 7u);
  EXPECT_EQ(cfg.hash, fnv1a64(kExactConfig));
}

TEST(Config, ParsesCustomHamiltonian) {
  RunConfig cfg = parse_config(R"(system:
  n_sites: 3
  hamiltonian: custom
  couplings:
    - {i: 1, a: z, j: 2, b: z, value: 0.5}
  fields:
    - {site: 3, axis: y, value: -0.2}
  initial_state: neel
otoc: {i: 1, a: y, j: 3, b: z, times: [0.0, 0.25, 1.0]}
angles: {theta1: 0.3, theta2: 1.0, theta3: 0.4}
)");
  EXPECT_EQ(cfg.system->hamiltonian, HamiltonianKind::custom);
  ASSERT_EQ(cfg.system->couplings.size(), 1u);
  EXPECT_EQ(cfg.system->couplings[0].b, PauliAxis::z);
  EXPECT_EQ(cfg.system->fields[0].site, SiteIndex(3));
  EXPECT_EQ(cfg.system->initial_state, InitialStateKind::neel);
  EXPECT_EQ(cfg.otoc->times.size(), 3u);
  EXPECT_DOUBLE_EQ(cfg.angles.theta2, 1.0);
}

TEST(Config, ErrorsCarryLineAndField) {
  std::string e = config_error("system:\n  n_sites: 4\n  n_site: 3\n");
  EXPECT_NE(e.find("line 3"), std::string::npos) << e;
  EXPECT_NE(e.find("system.n_site"), std::string::npos) << e;
  EXPECT_NE(e.find("unknown key"), std::string::npos) << e;

  e = config_error("system:\n  n_sites: 4\notoc:\n  i: 5\n  a: x\n  j: 1\n"
                   "  b: x\n  times: [0]\n");
  EXPECT_NE(e.find("line 4"), std::string::npos) << e;
  EXPECT_NE(e.find("otoc.i"), std::string::npos) << e;

  e = config_error("system:\n  n_sites: 4\notoc:\n  i: 1\n  a: q\n  j: 2\n"
                   "  b: x\n  times: [0]\n");
  EXPECT_NE(e.find("otoc.a"), std::string::npos) << e;

  e = config_error("system:\n  n_sites: 4\notoc:\n  i: 1\n  a: x\n  j: 2\n"
                   "  b: x\n  times: [0.0, 0.5, 0.5]\n");
  EXPECT_NE(e.find("otoc.times"), std::string::npos) << e;

  e = config_error("sampling:\n  n_shots: 0\n  seed: 1\n");
  EXPECT_NE(e.find("sampling.n_shots"), std::string::npos) << e;

  e = config_error("bogus: 1\n");
  EXPECT_NE(e.find("bogus"), std::string::npos) << e;

  e = config_error("system: [1, 2\n");
  EXPECT_NE(e.find("line"), std::string::npos) << e;

  e = config_error("angles: {theta1: 0.3, theta2: 0.0, theta3: 0.4}\n");
  EXPECT_NE(e.find("angles"), std::string::npos) << e;

  e = config_error("system:\n  n_sites: 1\n");
  EXPECT_NE(e.find("system.n_sites"), std::string::npos) << e;
}

TEST(Config, MissingBlocksAreConfigErrors) {
  int code = 0;
  run("sample", "system:\n  n_sites: 2\n", &code);
  EXPECT_EQ(code, kExitConfig);
  run("dressing", "system:\n  n_sites: 2\n", &code);
  EXPECT_EQ(code, kExitConfig);
  run("nonsense", kExactConfig, &code);
  EXPECT_EQ(code, kExitConfig);
}

TEST(Runner, ExactRowsAndIdentityColumns) {
  RunConfig cfg = parse_config(kExactConfig);
  auto rows = run_exact(cfg);
  ASSERT_EQ(rows.size(), 31u);
  EXPECT_EQ(rows[0].re_exact, 1.0);
  EXPECT_EQ(rows[0].im_exact, 0.0);
  EXPECT_NEAR(rows[5].re_exact, -0.187394533949537, 1e-10);
  for (const auto& row : rows) {
    ASSERT_TRUE(row.re_protocol && row.im_protocol);
    EXPECT_LT(std::abs(*row.re_protocol - row.re_exact), 1e-9);
    EXPECT_LT(std::abs(*row.im_protocol - row.im_exact), 1e-9);
    EXPECT_FALSE(row.re_estimate.has_value());
    EXPECT_FALSE(row.im_estimate.has_value());
  }
  EXPECT_LT(max_identity_residual(rows), 1e-9);
}

TEST(Runner, DistantPairDepartsLater) {
  auto departure = [](int i, int j) {
    std::string text = std::string(R"(system: {n_sites: 4}
otoc: {i: )") + std::to_string(i) + ", a: x, j: " + std::to_string(j) +
                       ", b: x, t_start: 0, t_stop: 3, t_points: 301}\n";
    for (const auto& row : run_exact(parse_config(text))) {
      if (std::abs(1.0 - row.re_exact) > 0.05) return row.t;
    }
    return 1e9;
  };
  EXPECT_GT(departure(1, 4), departure(2, 3));
}

TEST(Runner, MixedStateUsesDensityPath) {
  auto rows = run_exact(parse_config(R"(system: {n_sites: 3, initial_state: maximally_mixed}
otoc: {i: 1, a: x, j: 3, b: y, times: [0.0, 0.7, 1.4]}
)"));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_LT(max_identity_residual(rows), 1e-9);
}

TEST(Runner, ExactCsvLayout) {
  int code = -1;
  std::string csv = run("exact", kExactConfig, &code);
  EXPECT_EQ(code, kExitOk);
  EXPECT_EQ(csv.rfind("# otoc-sim 1.0.0\n", 0), 0u);
  EXPECT_NE(csv.find("# command: exact\n"), std::string::npos);
  EXPECT_NE(csv.find("# seed: none\n"), std::string::npos);
  EXPECT_NE(csv.find("# generator: mt19937_64/splitmix64-seeded/u53 v1\n"),
            std::string::npos);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  auto lines = data_lines(csv);
  ASSERT_EQ(lines.size(), 32u);
  EXPECT_EQ(lines[0],
            "t,re_exact,im_exact,re_protocol,im_protocol,re_residual,"
            "im_residual");
  auto cells = split(lines[1]);
  ASSERT_EQ(cells.size(), 7u);
  EXPECT_EQ(cells[0], "0");
  EXPECT_EQ(cells[1], "1");
}

TEST(Runner, SampledRowsAndDeterminism) {
  int code = -1;
  std::string a = run("sample", kExactConfig, &code);
  EXPECT_EQ(code, kExitOk);
  std::string b = run("sample", kExactConfig);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("# seed: 7\n"), std::string::npos);
  auto lines = data_lines(a);
  EXPECT_EQ(lines[0], "t,re_exact,im_exact,re_estimate,re_stderr,re_band,n_shots");
  EXPECT_EQ(split(lines[1]).back(), "1000");

  RunOptions other;
  other.seed_override = 8;
  std::string c = run("sample", kExactConfig, nullptr, other);
  EXPECT_NE(a, c);
  EXPECT_NE(c.find("# seed: 8\n"), std::string::npos);

  auto rows = run_sampled(parse_config(kExactConfig));
  for (const auto& row : rows) {
    ASSERT_TRUE(row.re_estimate && row.re_stderr && row.re_band && row.n_shots);
    EXPECT_GE(*row.re_stderr, 0.0);
    EXPECT_FALSE(row.re_protocol.has_value());
  }
  EXPECT_EQ(*rows[0].re_estimate, 1.0);
}

TEST(Runner, ImRows) {
  std::string text = R"(system:
  n_sites: 4
  hamiltonian: custom
  couplings:
    - {i: 1, a: x, j: 2, b: x, value: -1}
    - {i: 1, a: y, j: 2, b: y, value: -1}
    - {i: 2, a: x, j: 3, b: x, value: -1}
    - {i: 2, a: y, j: 3, b: y, value: -1}
    - {i: 3, a: x, j: 4, b: x, value: -1}
    - {i: 3, a: y, j: 4, b: y, value: -1}
  fields:
    - {site: 1, axis: y, value: 0.5}
    - {site: 4, axis: z, value: 0.3}
otoc: {i: 2, a: x, j: 3, b: y, times: [0.8]}
sampling: {n_shots: 20000, seed: 3}
)";
  auto rows = run_im(parse_config(text));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].im_exact, -0.053892357313311726, 1e-10);
  ASSERT_TRUE(rows[0].im_estimate && rows[0].im_stderr);
  EXPECT_LT(std::abs(*rows[0].im_estimate - rows[0].im_exact),
            4 * *rows[0].im_stderr);
  int code = -1;
  std::string csv = run("im", text, &code);
  EXPECT_EQ(code, kExitOk);
  EXPECT_EQ(data_lines(csv)[0],
            "t,re_exact,im_exact,im_estimate,im_stderr,n_shots");
}

TEST(Runner, DressingCurveAndFlags) {
  auto result = run_dressing(parse_config(kDressingConfig));
  ASSERT_EQ(result.rows.size(), 106u);
  int inverted = 0;
  for (const auto& row : result.rows) {
    ASSERT_TRUE(row.j_on.has_value());
    if (row.j_off * *row.j_on < 0.0) ++inverted;
  }
  EXPECT_GT(inverted, 5);

  int code = -1;
  std::string csv = run("dressing", kDressingConfig, &code);
  EXPECT_EQ(code, kExitOk);
  auto lines = data_lines(csv);
  EXPECT_EQ(lines[0], "r,j_off,j_on,inverted");
  EXPECT_NE(csv.find(",true\n"), std::string::npos);
}

TEST(Runner, DressingFarRowsVanish) {
  std::string text = R"(dressing:
  laser_rabi: 2.0
  laser_detuning: 4.0
  microwave_rabi: 30.0
  microwave_detuning: 18.385714285714286
  c6: 20000.0
  c3: -1000.0
  r_min: 100.0
  r_max: 200.0
  r_points: 5
)";
  for (const auto& row : run_dressing(parse_config(text)).rows) {
    EXPECT_LT(std::abs(row.j_off), 1e-6);
    EXPECT_LT(std::abs(*row.j_on), 1e-6);
  }
}

TEST(Runner, DressingWithoutLaserIsZero) {
  std::string text = R"(dressing:
  laser_rabi: 0.0
  laser_detuning: 4.0
  microwave_rabi: 30.0
  microwave_detuning: 18.385714285714286
  c6: 20000.0
  c3: -1000.0
  r_min: 1.5
  r_max: 12.0
  r_points: 30
)";
  for (const auto& row : run_dressing(parse_config(text)).rows) {
    EXPECT_NEAR(row.j_off, 0.0, 1e-12);
    EXPECT_NEAR(*row.j_on, 0.0, 1e-12);
  }
}

TEST(Runner, DressingMicrowaveOffHasTwoColumns) {
  std::string text = std::string(kDressingConfig) + "  microwave: false\n";
  std::string csv = run("dressing", text);
  EXPECT_EQ(data_lines(csv)[0], "r,j_off");
}

TEST(Runner, VerifyCommand) {
  int code = -1;
  std::string csv = run("verify", "verify: {instances: 20, seed: 5}\n", &code);
  EXPECT_EQ(code, kExitOk);
  auto lines = data_lines(csv);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "identity,instances,max_residual,tolerance,pass");
  for (std::size_t k = 1; k < lines.size(); ++k) {
    EXPECT_EQ(split(lines[k]).back(), "true");
  }
}

TEST(Runner, FormatReal) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(1.0), "1");
  EXPECT_EQ(format_real(-2.5e-17), "-2.4999999999999999e-17");
}

}  // namespace
}  // namespace otoc::cli
