// lightcone-qed: scenario runner for the perturbative QED, Rabi anti-Zeno
// and Majorana simulation engines.
//
//   lightcone-qed run  [--scenario S] [--preset NAME] [--config FILE]
//                      [--set key=value]... [--out PATH] [--seed N]
//   lightcone-qed list
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "lcq/scenarios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void print_usage() {
  std::cout
      << "usage: lightcone-qed run [--scenario S] [--preset NAME] [--config FILE]\n"
         "                         [--set key=value]... [--out PATH] [--seed N]\n"
         "       lightcone-qed list\n";
}

int cmd_list() {
  const auto& table = lcq::scenarios::scenario_table();
  std::printf("%-22s %s\n", "scenario", "reproduces");
  for (const auto& s : table) {
    std::printf("%-22s %s\n", s.name.c_str(), s.anchor.c_str());
    std::printf("%-22s   defaults:", "");
    for (const auto& [k, v] : s.defaults) std::printf(" %s=%s", k.c_str(), v.c_str());
    std::printf("\n");
  }
  std::printf("%zu scenarios\n", table.size());
  return kExitOk;
}

int cmd_run(const std::vector<std::string>& args) {
  lcq::scenarios::ScenarioConfig cfg;
  bool have_scenario = false;
  std::string preset;
  // first pass: config file, so that flags override it
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        std::cerr << "error: --config needs a path\n";
        return kExitConfig;
      }
      cfg = lcq::scenarios::load_config(args[i + 1]);
      have_scenario = !cfg.scenario.empty();
    }
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto next = [&](const char* flag) -> std::string {
      if (i + 1 >= args.size()) {
        throw lcq::scenarios::ConfigError(std::string(flag) + " needs a value");
      }
      return args[++i];
    };
    if (a == "--scenario") {
      cfg.scenario = next("--scenario");
      have_scenario = true;
    } else if (a == "--preset") {
      preset = next("--preset");
    } else if (a == "--config") {
      ++i;  // handled in the first pass
    } else if (a == "--set") {
      const std::string kv = next("--set");
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --set expects key=value\n";
        return kExitConfig;
      }
      cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    } else if (a == "--out") {
      cfg.output_path = next("--out");
    } else if (a == "--seed") {
      cfg.seed = std::stoull(next("--seed"));
    } else if (a == "--sweep") {
      // convenience alias: --sweep key=a:b:step expands to the range params
      const std::string kv = next("--sweep");
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --sweep expects key=min:max:step\n";
        return kExitConfig;
      }
      const std::string key = kv.substr(0, eq);
      const std::string range = kv.substr(eq + 1);
      double lo = 0, hi = 0, step = 0;
      if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
          step <= 0) {
        std::cerr << "error: bad sweep range '" << range << "'\n";
        return kExitConfig;
      }
      cfg.params[key + "_min"] = std::to_string(lo);
      cfg.params[key + "_max"] = std::to_string(hi);
      cfg.params[key + "_steps"] =
          std::to_string(static_cast<long>(std::floor((hi - lo) / step + 1.5)));
    } else {
      std::cerr << "error: unknown flag '" << a << "'\n";
      return kExitConfig;
    }
  }
  if (!have_scenario) {
    std::cerr << "error: no scenario given (use --scenario or --config)\n";
    return kExitConfig;
  }
  // a preset names the configuration that reproduces the scenario's figure;
  // every scenario ships exactly its thesis-figure preset plus "default"
  if (!preset.empty()) {
    lcq::scenarios::ParamMap implied;
    const auto& info = lcq::scenarios::find_scenario(cfg.scenario, &implied);
    static const std::map<std::string, std::string> figure_presets = {
        {"atom_concurrence", "fig1"},      {"atom_traced", "fig3"},
        {"bell_swap", "fig11"},            {"esd_cycle", "fig14"},
        {"circuit_lightcone", "fig6"},     {"fermi_causality", "fig32"},
        {"conditioned_click", "fig40"},    {"rabi_ground", "fig3-rabi"},
        {"antizeno", "fig8m"},             {"majorana_example", "fig33"},
        {"klein_scattering", "fig35"},     {"symmetry_replay", "fig35b"},
        {"potential_transform", "fig36"},  {"two_body_oscillator", "osc"}};
    const auto it = figure_presets.find(info.name);
    if (preset != "default" && (it == figure_presets.end() || preset != it->second)) {
      std::cerr << "error: unknown preset '" << preset << "' for scenario '"
                << info.name << "'\n";
      return kExitConfig;
    }
    // figure presets coincide with the defaults; nothing to override
  }

  const auto out = lcq::scenarios::run(cfg);
  std::cout << "wrote " << out.csv_path << " and " << out.manifest_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    print_usage();
    return kExitConfig;
  }
  const std::string cmd = args.front();
  args.erase(args.begin());
  try {
    if (cmd == "list") return cmd_list();
    if (cmd == "run") return cmd_run(args);
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
      print_usage();
      return kExitOk;
    }
    std::cerr << "error: unknown command '" << cmd << "'\n";
    return kExitConfig;
  } catch (const lcq::scenarios::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
