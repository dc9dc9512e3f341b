#pragma once

#include <vector>

#include "pgue/mat2.hpp"
#include "pgue/quadrature.hpp"
#include "pgue/scaling.hpp"

namespace pgue {

// Three-term recurrence data for the monic orthogonal polynomials of the
// weight exp(-n V): pi_{k+1} = (x - alpha_k) pi_k - beta_k pi_{k-1}.
// h_k = <pi_k, pi_k> = gamma_k^{-2}; p1_k is the subleading monic coefficient.
struct RecurrenceTable {
  EnsembleSpec spec;
  QuadratureGrid grid;
  std::size_t N = 0;
  std::vector<Real> alpha;   // 0..N-1
  std::vector<Real> beta;    // beta[0] unused by the recurrence; beta[k] > 0
  std::vector<Real> h;       // 0..N
  std::vector<Real> log_h;   // 0..N
  std::vector<Real> p1;      // 0..N, p1[0] = 0

  Real gamma_sq(std::size_t k) const { return 1 / h[k]; }

  // pi_k(x) for k = 0..kmax; optionally derivatives
  void eval(const Real& x, std::size_t kmax, std::vector<Real>& pi_out) const;
  void eval_with_derivative(const Real& x, std::size_t kmax, std::vector<Real>& pi_out,
                            std::vector<Real>& dpi_out) const;
};

RecurrenceTable stieltjes(const EnsembleSpec& spec, std::size_t N, const QuadratureGrid& grid);

// Convenience: grid + recurrence in one step.
RecurrenceTable build_table(const EnsembleSpec& spec, std::size_t N, const Real& tol,
                            GridOptions opts = {});

// Christoffel-Darboux kernel K_n(x, y) with the sqrt(w(x) w(y)) factor.
Real cd_kernel(const RecurrenceTable& table, std::size_t n, const Real& x, const Real& y);
Real cd_kernel_diag(const RecurrenceTable& table, std::size_t n, const Real& x);

// integral of K_n(x,x) dx over an independently refined grid; equals n up to
// quadrature error
Real kernel_trace(const RecurrenceTable& table, std::size_t n);

// ln Z_n = ln n! - 2 sum_{k<n} ln gamma_k
Real partition_log_zn(const RecurrenceTable& table, std::size_t n);

// ln of the classical GUE partition function (n/2)ln 2pi - (n^2/2)ln 4n + sum ln j!
Real log_zn_gue(int n);

// d/dlambda ln Z_n = 4 n p1(n; lambda)
Real dlogZ_dlambda(const RecurrenceTable& table, std::size_t n);

// Boundary data of the orthogonal-polynomial Riemann-Hilbert matrix at the
// pole, in a real similarity gauge: off-diagonal Cauchy entries are scaled by
// the constant diag(1, 2 pi i) conjugation, which keeps all determinants.
struct YEdgeData {
  Real lambda;
  Mat2 Y;    // det = 1
  Mat2 H;    // Y * exp(-n lambda^2 sigma3), det = 1
  Mat2 dH;   // central finite difference in lambda
  Real det_dH_Hinv() const { return (dH * H.inverse()).det(); }
};

YEdgeData y_edge(const EnsembleSpec& spec, const RecurrenceTable& table, std::size_t n);

// Estimate of the Painleve function b1 at s = n^{2/3} f(lambda) from the
// second lambda-derivative of ln Z_n (central difference of dlogZ_dlambda).
struct B1Estimate {
  Real s;        // n^{2/3} f(lambda)
  Real value;
};
B1Estimate b1_oracle(const EdgeMap& f, int n, const Real& lambda, const TauVector& tau,
                     const Real& tol, GridOptions opts = {});

}  // namespace pgue
