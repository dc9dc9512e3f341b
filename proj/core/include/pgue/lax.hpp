#pragma once

#include <vector>

#include "pgue/mat2.hpp"
#include "pgue/painleve.hpp"

namespace pgue {

// zeta-equation coefficients A(zeta) = sum_{k=0..2m+1} A_k zeta^{-k} + zeta E21
// built from one Painleve state: A_0 = (0,1; b1+s,0) and
// A_k = (b_k'/2, -b_k; w_k, -b_k'/2).
struct LaxCoefficients {
  int m = 1;
  Real s;
  Mat2 A0;
  std::vector<Mat2> Ak;  // k = 1 .. 2m+1

  static LaxCoefficients from_state(const P34State& st);
};

Mat2c lax_matrix(const LaxCoefficients& c, const Cx& zeta);

// Laurent coefficients of det A on the circle |zeta| = rho, orders
// p = 2m+2 .. 4m+2 (these equal -tau~_p for exact Painleve data); computed by
// the trapezoid rule, exact for the finite Laurent polynomial det A.
std::vector<Real> det_a_laurent(const LaxCoefficients& c, const Real& rho);

}  // namespace pgue
