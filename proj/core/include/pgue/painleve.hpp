#pragma once

#include <vector>

#include "pgue/ode.hpp"
#include "pgue/scaling.hpp"

namespace pgue {

// Conserved parameters tau~_p, p = 2m+2 .. 4m+2, of the coupled system.
struct TauTilde {
  std::vector<Real> values;  // index p - (2m+2)
  const Real& at_p(int p, int m) const { return values[p - (2 * m + 2)]; }
};

TauTilde tau_tilde(const TauVector& tau);

// First-order state: u_k = b_k, v_k = b_k', w_k = b_k''/2 - (2b_1+s)b_k - b_{k+1}.
struct P34State {
  int m = 1;
  Real s;
  std::vector<Real> u, v, w;  // length 2m+1 each

  std::size_t dim() const { return u.size(); }
};

// Values of the conserved combinations
//   F_p = sum_k [ u_{p-k} w_k - (1/4) v_k v_{p-k} ] + tau~_p,
// all zero along exact solutions.
std::vector<Real> first_integrals(const P34State& st, const TauTilde& tt);

struct InitReport {
  P34State state;
  std::vector<Real> ansatz_residual;  // F_p of the raw power-law ansatz
};

// Large-s initial data: b_1 = -tau_1/(2 s^{3/2}), b_k = (k-1) tau_{k-1} s^{-1/2}
// for k >= 2, derivatives from the ansatz; w solved exactly from the first
// integrals (anti-triangular in w, diagonal u_{2m+1} > 0).
InitReport asymptotic_init(const TauVector& tau, const Real& s0,
                           const Real& residual_tol = Real(1) / 20);

struct PainleveTrajectory {
  TauVector tau;
  TauTilde ttilde;
  Real s0, s_min;
  OdeResult<Real> ode;           // state layout: [u (2m+1), v, w, a1]
  std::vector<Real> drift;       // max_p |F_p|/max(1,|tau~_p|) per accepted step
  std::vector<Real> drift_s;

  P34State state_at(const Real& s) const;
  Real b1(const Real& s) const;
  Real a1(const Real& s) const;
  Real a1_derivative(const Real& s) const;   // from the dense interpolant
  Real b1_derivative(const Real& s) const;
  Real max_drift() const;
};

struct P34Options {
  Real rtol = Real(1) / 10000000000LL;  // 1e-10
  Real drift_tol_factor = Real(1000000);  // reject step if drift > factor*eps... see impl
  bool auto_raise_s0 = true;
  Real s0_cap = Real(200);
};

PainleveTrajectory integrate_p34(const TauVector& tau, const Real& s0, const Real& s_min,
                                 P34Options opts = {});

// Residuals of the differential recursion
//   b_{k+1}' - (1/4)(b_k''' - 4(2b_1+s)b_k' - 2(2b_1+s)'b_k),  k = 1..2m+1,
// with b_k''' taken from the second derivative of the dense v-interpolant.
std::vector<Real> lenard_residual(const PainleveTrajectory& traj, const Real& s);

// I(s) = int_s^inf (b_1(t)(t-s) + tau_1/(2 sqrt(t-s))) dt, quadrature on
// [s, s0] with a sqrt substitution plus the closed-form large-s tail.
Real partition_integral(const PainleveTrajectory& traj, const Real& s);

}  // namespace pgue
