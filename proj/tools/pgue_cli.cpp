// Experiments driver: wires the scaling maps, the orthogonal-polynomial
// engine, the coupled Painleve system and the Psi kernel together, and emits
// CSV/JSON comparison reports.
//
// Exit codes: 0 success, 2 config error, 3 numeric/precision failure,
// 4 assertable-property breach when --assert is passed.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pgue/experiments.hpp"

namespace {

struct CliInputs {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  bool assert_mode = false;
};

pgue::RawConfig assemble_raw(const CliInputs& in, const std::string& experiment) {
  pgue::RawConfig raw;
  if (!in.config_path.empty()) raw = pgue::load_config_file(in.config_path);
  raw.kv["experiment"] = experiment;
  for (const auto& kv : in.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw pgue::config_error("override must be key=value: " + kv);
    }
    raw.kv[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return raw;
}

void add_common(CLI::App* cmd, CliInputs& in, std::map<std::string, std::string>& flags) {
  cmd->add_option("--config", in.config_path, "flat key = value config file");
  cmd->add_option("--set", in.overrides, "override any config key, key=value")
      ->take_all();
  for (auto& [key, val] : flags) {
    cmd->add_option("--" + key, val, "config key '" + key + "'");
  }
  cmd->add_option("--precision", flags["precision_bits"], "alias for --precision_bits");
  cmd->add_flag("--assert", in.assert_mode,
                "exit 4 when an assertable property of the run is violated");
}

int run(const std::string& experiment, const CliInputs& in,
        const std::map<std::string, std::string>& flags) {
  pgue::RawConfig raw = assemble_raw(in, experiment);
  for (const auto& [key, val] : flags) {
    if (!val.empty()) raw.kv[key] = val;
  }
  pgue::ExperimentConfig cfg = pgue::materialize_config(raw);
  cfg.assert_mode = in.assert_mode;

  if (experiment == "painleve-solve") {
    std::string csv = pgue::cmd_painleve_solve_csv(cfg);
    if (cfg.output_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream f(cfg.output_path);
      if (!f) throw pgue::config_error("cannot open " + cfg.output_path);
      f << csv;
    }
    return 0;
  }
  if (experiment == "recurrence") {
    std::string csv = pgue::cmd_recurrence_csv(cfg);
    if (cfg.output_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream f(cfg.output_path);
      if (!f) throw pgue::config_error("cannot open " + cfg.output_path);
      f << csv;
    }
    return 0;
  }

  pgue::CmdResult res = pgue::run_experiment(cfg);
  if (cfg.output_path.empty()) {
    std::cout << pgue::report_csv(res.rows);
  } else {
    pgue::write_report(cfg.output_path, res.rows);
    std::cout << "wrote " << res.rows.size() << " rows to " << cfg.output_path << "\n";
  }
  if (!res.violations.empty()) {
    for (const auto& v : res.violations) std::cerr << "violated: " << v << "\n";
    if (cfg.assert_mode) return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for pole-perturbed Gaussian unitary ensembles"};
  app.require_subcommand(1);

  const std::vector<std::string> experiments = {
      "kernel-limit", "partition-limit", "identities",
      "outer-partition", "b1-crosscheck", "painleve-solve", "recurrence"};

  std::map<std::string, CliInputs> inputs;
  std::map<std::string, std::map<std::string, std::string>> flagvals;
  const std::vector<std::string> keys = {"n_list", "m",   "tau",  "s",    "grid",
                                         "precision_bits", "rtol", "out",  "s0",
                                         "s_min",          "R",    "t",    "lambda",
                                         "outer_exponent", "step"};

  for (const auto& name : experiments) {
    CLI::App* cmd = app.add_subcommand(name);
    auto& fl = flagvals[name];
    for (const auto& k : keys) fl[k];
    add_common(cmd, inputs[name], fl);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& name : experiments) {
      if (app.get_subcommand(name)->parsed()) {
        return run(name, inputs[name], flagvals[name]);
      }
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const pgue::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pgue::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
