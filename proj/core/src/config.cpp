#include "pgue/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pgue {

namespace {
std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
}  // namespace

const std::string& RawConfig::get(const std::string& key) const {
  auto it = kv.find(key);
  if (it == kv.end()) throw config_error("missing config key: " + key);
  return it->second;
}

RawConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot open config file: " + path);
  RawConfig raw;
  std::string line;
  while (std::getline(f, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw config_error("malformed config line: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error("empty key in config line: " + line);
    raw.kv[key] = val;
  }
  return raw;
}

std::vector<Real> parse_real_list(const std::string& text) {
  std::vector<Real> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (cur.empty()) continue;
    try {
      out.emplace_back(cur);
    } catch (...) {
      throw config_error("cannot parse number: " + cur);
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (cur.empty()) continue;
    try {
      out.push_back(std::stoi(cur));
    } catch (...) {
      throw config_error("cannot parse integer: " + cur);
    }
  }
  return out;
}

ExperimentConfig materialize_config(const RawConfig& raw) {
  ExperimentConfig cfg;
  cfg.precision_bits = raw.has("precision_bits")
                           ? static_cast<unsigned>(std::stoul(raw.get("precision_bits")))
                           : 256u;
  set_precision_bits(cfg.precision_bits);

  if (raw.has("experiment")) cfg.experiment = raw.get("experiment");
  if (raw.has("n_list")) cfg.n_list = parse_int_list(raw.get("n_list"));
  if (raw.has("m")) cfg.m = std::stoi(raw.get("m"));
  if (cfg.m < 1) throw config_error("m must be positive");
  for (int n : cfg.n_list) {
    if (n < 1) throw config_error("n_list entries must be positive");
  }

  if (raw.has("tau")) {
    cfg.tau = parse_real_list(raw.get("tau"));
  } else {
    cfg.tau.assign(2 * cfg.m, Real(1));
  }
  if (cfg.tau.size() != static_cast<std::size_t>(2 * cfg.m)) {
    throw config_error("tau must have length 2m");
  }
  bool tau_zero = std::all_of(cfg.tau.begin(), cfg.tau.end(),
                              [](const Real& v) { return v == 0; });
  if (!tau_zero && cfg.tau.back() <= 0) throw config_error("tau_{2m} must be positive");

  cfg.s = raw.has("s") ? Real(raw.get("s")) : Real(0);
  if (raw.has("grid")) cfg.grid = parse_real_list(raw.get("grid"));
  cfg.rtol = raw.has("rtol") ? Real(raw.get("rtol")) : Real("1e-10");
  if (cfg.rtol <= 0) throw config_error("rtol must be positive");
  cfg.output_path = raw.has("out") ? raw.get("out") : "";
  cfg.s0 = raw.has("s0") ? Real(raw.get("s0")) : Real(25);
  cfg.s_min = raw.has("s_min") ? Real(raw.get("s_min")) : Real(-3);
  cfg.R = raw.has("R") ? Real(raw.get("R")) : Real(60);
  if (raw.has("t")) cfg.t = parse_real_list(raw.get("t"));
  cfg.lambda = raw.has("lambda") ? Real(raw.get("lambda")) : Real(0);
  cfg.outer_exponent = raw.has("outer_exponent") ? Real(raw.get("outer_exponent"))
                                                 : Real(2) / 5;
  cfg.step = raw.has("step") ? Real(raw.get("step")) : Real(1) / 4;

  bool kernel_like = cfg.experiment == "kernel-limit";
  if (kernel_like) {
    if (cfg.grid.empty()) throw config_error("kernel-limit needs a nonempty grid");
    for (const Real& g : cfg.grid) {
      if (g == 0) throw config_error("kernel grid must exclude 0");
    }
  }
  return cfg;
}

}  // namespace pgue
