#pragma once

#include "pgue/lax.hpp"

namespace pgue {

// Boundary column of the model Riemann-Hilbert solution at real x:
// (psi1, psi2)^T = Psi_+(x) (1,0)^T for x > 0 and Psi_+(x) (1,1)^T for x < 0,
// in the normalization without the constant lower-triangular prefactor (it
// drops out of the kernel). Derivatives come from the zeta-equation.
struct PsiVector {
  Real x;
  Cx psi1, psi2;
  Cx dpsi1, dpsi2;
  Real init_error;  // truncation estimate of the large-zeta series at |zeta| = R
};

struct PsiOptions {
  Real R = Real(60);
  Real rtol = Real(1) / 10000000000LL;  // 1e-10
  std::size_t series_terms = 64;
  // start point for the integration; when set, overrides the on-axis default
  bool have_start = false;
  Cx start;
};

PsiVector psi_solve(const LaxCoefficients& coeffs, const Real& x, PsiOptions opts = {});

// K_Psi(u, v) = (psi1(v) psi2(u) - psi1(u) psi2(v)) / (2 pi i (u - v)); the
// value is real up to numerical contamination, which is checked.
Real kernel_K_psi(const PsiVector& pu, const PsiVector& pv);
Real kernel_K_psi(const LaxCoefficients& coeffs, const Real& u, const Real& v,
                  PsiOptions opts = {});

}  // namespace pgue
