#pragma once

#include "pgue/config.hpp"
#include "pgue/orthopoly.hpp"
#include "pgue/painleve.hpp"
#include "pgue/psi_kernel.hpp"
#include "pgue/report.hpp"

namespace pgue {

struct CmdResult {
  std::vector<ReportRow> rows;
  std::vector<std::string> violations;  // assertable-property breaches
};

// default quadrature target tied to the working precision
Real default_grid_tol();

CmdResult cmd_kernel_limit(const ExperimentConfig& cfg);
CmdResult cmd_partition_limit(const ExperimentConfig& cfg);
CmdResult cmd_identities(const ExperimentConfig& cfg);
CmdResult cmd_outer_partition(const ExperimentConfig& cfg);
CmdResult cmd_b1_crosscheck(const ExperimentConfig& cfg);

// trajectory dump: s, b_1..b_{2m+1}, a1, integral-drift
std::string cmd_painleve_solve_csv(const ExperimentConfig& cfg);
// recurrence dump: k, alpha_k, beta_k, gamma_k, p1_k
std::string cmd_recurrence_csv(const ExperimentConfig& cfg);

CmdResult run_experiment(const ExperimentConfig& cfg);

// shared helpers
PainleveTrajectory trajectory_for(const ExperimentConfig& cfg, const Real& s_low,
                                  const Real& s_high);
LaxCoefficients lax_at(const TauVector& tau, const PainleveTrajectory* traj, const Real& s);

}  // namespace pgue
