#pragma once

#include <map>
#include <string>
#include <vector>

#include "pgue/real.hpp"
#include "pgue/scaling.hpp"

namespace pgue {

// Flat key = value text config; '#' starts a comment, lists are
// comma-separated. Every key can also be supplied as a CLI flag of the same
// name, which wins over the file.
struct RawConfig {
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) > 0; }
  const std::string& get(const std::string& key) const;
};

RawConfig load_config_file(const std::string& path);

struct ExperimentConfig {
  std::string experiment;
  std::vector<int> n_list{64, 128, 256};
  int m = 1;
  std::vector<Real> tau;          // length 2m; default (1,...,1)
  Real s = Real(0);
  std::vector<Real> grid;         // u/v points or lambda points
  unsigned precision_bits = 256;
  Real rtol;
  std::string output_path;
  // extended knobs
  Real s0;                        // Painleve anchoring point, default 25
  Real s_min;                     // trajectory lower end (painleve-solve)
  Real R;                         // Psi initialization radius, default 60
  std::vector<Real> t;            // explicit perturbation (identities, recurrence)
  Real lambda;                    // explicit pole location where applicable
  Real outer_exponent;            // lambda = 1 + n^{-outer_exponent}, default 2/5
  Real step;                      // dump step for painleve-solve
  bool assert_mode = false;

  TauVector tau_vector() const { return TauVector(m, tau); }
};

// Materializes the typed config. Sets the global precision from
// precision_bits before any Real field is parsed.
ExperimentConfig materialize_config(const RawConfig& raw);

std::vector<Real> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace pgue
