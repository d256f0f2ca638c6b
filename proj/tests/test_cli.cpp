#include "lcq/scenarios.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace lcq::scenarios;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("lcq_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST(ScenarioTable, FourteenScenariosStableOrder) {
  const auto& t = scenario_table();
  EXPECT_EQ(t.size(), 14u);
  EXPECT_EQ(t.front().name, "atom_concurrence");
  EXPECT_EQ(t.back().name, "two_body_oscillator");
  // each row cites the figure/experiment it reproduces
  for (const auto& s : t) EXPECT_FALSE(s.anchor.empty()) << s.name;
  // klein_scattering mentions the scattering setup
  bool found = false;
  for (const auto& s : t) {
    if (s.name == "klein_scattering") {
      found = true;
      EXPECT_NE(s.anchor.find("V(x) = x"), std::string::npos);
      EXPECT_EQ(s.defaults.at("m"), "0.5");
    }
    if (s.name == "antizeno") {
      EXPECT_EQ(s.defaults.at("omega_T1"), "6.283185307179586");  // 2 pi
    }
  }
  EXPECT_TRUE(found);
}

TEST(ScenarioConfigChecks, UnknownScenarioAndParamRejected) {
  ScenarioConfig cfg;
  cfg.scenario = "no_such_thing";
  EXPECT_THROW(run(cfg), ConfigError);
  cfg.scenario = "rabi_ground";
  cfg.params["bogus_key"] = "1";
  EXPECT_THROW(run(cfg), ConfigError);
}

TEST(ScenarioConfigChecks, AliasSelectsPhotonNumber) {
  ParamMap implied;
  const auto& info = find_scenario("atom_concurrence_n2", &implied);
  EXPECT_EQ(info.name, "atom_concurrence");
  EXPECT_EQ(implied.at("n"), "2");
}

TEST(ScenarioRun, RabiGroundSweep) {
  TempDir tmp;
  ScenarioConfig cfg;
  cfg.scenario = "rabi_ground";
  cfg.params["g_over_omega_steps"] = "6";
  cfg.output_path = tmp.file("rabi.csv");
  const auto out = run(cfg);
  const std::string csv = slurp(out.csv_path);
  EXPECT_NE(csv.find("g_over_omega,p_e"), std::string::npos);
  EXPECT_NE(csv.find("# scenario=rabi_ground"), std::string::npos);
  // 6 data rows
  int rows = 0;
  for (char c : csv) rows += (c == '\n');
  EXPECT_GT(rows, 6);
  EXPECT_EQ(csv.find('\r'), std::string::npos);  // LF endings
}

TEST(ScenarioRun, EmptySweepGivesHeaderOnly) {
  TempDir tmp;
  ScenarioConfig cfg;
  cfg.scenario = "rabi_ground";
  cfg.params["g_over_omega_steps"] = "0";
  cfg.output_path = tmp.file("empty.csv");
  const auto out = run(cfg);
  const std::string csv = slurp(out.csv_path);
  EXPECT_NE(csv.find("g_over_omega,p_e\n"), std::string::npos);
  // nothing after the header row
  const auto pos = csv.find("g_over_omega,p_e\n");
  EXPECT_EQ(csv.substr(pos + std::string("g_over_omega,p_e\n").size()), "");
}

TEST(ScenarioRun, ManifestRoundTripsByteIdentical) {
  TempDir tmp;
  ScenarioConfig cfg;
  cfg.scenario = "antizeno";
  cfg.params["n_runs"] = "3";
  cfg.params["n_measurements"] = "4";
  cfg.seed = 99;
  cfg.output_path = tmp.file("a.csv");
  const auto first = run(cfg);

  ScenarioConfig replay = load_config(first.manifest_path);
  replay.output_path = tmp.file("b.csv");
  const auto second = run(replay);
  const std::string a = slurp(first.csv_path);
  const std::string b = slurp(second.csv_path);
  EXPECT_EQ(a, b);
}

TEST(ScenarioRun, SeedChangesJitteredRun) {
  TempDir tmp;
  ScenarioConfig cfg;
  cfg.scenario = "antizeno";
  cfg.params["n_runs"] = "3";
  cfg.params["n_measurements"] = "4";
  cfg.output_path = tmp.file("s1.csv");
  cfg.seed = 1;
  const auto a = run(cfg);
  cfg.seed = 2;
  cfg.output_path = tmp.file("s2.csv");
  const auto b = run(cfg);
  EXPECT_NE(slurp(a.csv_path), slurp(b.csv_path));
}

TEST(ScenarioRun, CircuitLightconeColumns) {
  TempDir tmp;
  ScenarioConfig cfg;
  cfg.scenario = "circuit_lightcone";
  cfg.params["xi_steps"] = "8";
  cfg.output_path = tmp.file("c.csv");
  run(cfg);
  const std::string csv = slurp(tmp.file("c.csv"));
  EXPECT_NE(csv.find("xi,C_K1,C_K10,C_K100,C_K1000"), std::string::npos);
}

TEST(ScenarioRun, FifteenSignificantDigits) {
  TempDir tmp;
  ScenarioConfig cfg;
  cfg.scenario = "majorana_example";
  cfg.params["t_steps"] = "3";
  cfg.output_path = tmp.file("m.csv");
  run(cfg);
  const std::string csv = slurp(tmp.file("m.csv"));
  // scientific notation with 14 digits after the point
  EXPECT_NE(csv.find("0.00000000000000e+00"), std::string::npos);
}

TEST(ScenarioRun, AllScenariosExecuteWithReducedSweeps) {
  TempDir tmp;
  const std::map<std::string, ParamMap> shrink = {
      {"atom_concurrence", {{"x_steps", "4"}}},
      {"atom_traced", {{"x_steps", "3"}}},
      {"bell_swap", {{"x_steps", "4"}}},
      {"esd_cycle", {{"x_steps", "4"}}},
      {"circuit_lightcone", {{"xi_steps", "4"}}},
      {"fermi_causality", {{"t_steps", "2"}}},
      {"conditioned_click", {{"t_steps", "2"}}},
      {"rabi_ground", {{"g_over_omega_steps", "3"}}},
      {"antizeno", {{"n_runs", "2"}, {"n_measurements", "3"}}},
      {"majorana_example", {{"t_steps", "3"}}},
      {"klein_scattering", {{"t", "2.0"}}},
      {"symmetry_replay", {{"t_half", "1.0"}}},
      {"potential_transform", {{"t", "0.5"}}},
      {"two_body_oscillator", {{"t", "0.5"}}},
  };
  int idx = 0;
  for (const auto& info : scenario_table()) {
    ScenarioConfig cfg;
    cfg.scenario = info.name;
    const auto it = shrink.find(info.name);
    if (it != shrink.end()) cfg.params = it->second;
    cfg.output_path = tmp.file("s" + std::to_string(idx++) + ".csv");
    const auto out = run(cfg);
    const std::string csv = slurp(out.csv_path);
    EXPECT_NE(csv.find("# scenario=" + info.name), std::string::npos) << info.name;
    EXPECT_GT(csv.size(), 40u) << info.name;
  }
}

TEST(ScenarioConfigFile, ParseAndOverride) {
  TempDir tmp;
  {
    std::ofstream f(tmp.file("run.cfg"));
    f << "# comment line\n";
    f << "scenario=rabi_ground\n";
    f << "seed=7\n";
    f << "g_over_omega_steps=4\n";
  }
  ScenarioConfig cfg = load_config(tmp.file("run.cfg"));
  EXPECT_EQ(cfg.scenario, "rabi_ground");
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.params.at("g_over_omega_steps"), "4");
  EXPECT_THROW(load_config(tmp.file("missing.cfg")), ConfigError);
}
