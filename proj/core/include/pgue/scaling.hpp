#pragma once

#include <vector>

#include "pgue/complexr.hpp"
#include "pgue/real.hpp"
#include "pgue/series.hpp"

namespace pgue {

// Fixed direction vector (tau_1..tau_2m) of the multiple-scaling limit.
// tau_2m > 0, except that the all-zero vector is allowed (unperturbed case).
struct TauVector {
  int m = 1;
  std::vector<Real> tau;

  TauVector() = default;
  TauVector(int m_, std::vector<Real> tau_);

  bool is_zero() const;
};

// A concrete ensemble at finite n: potential 2x^2 + sum t_k (x-lambda)^-k.
// t_2m > 0, or t identically zero (classical GUE).
struct EnsembleSpec {
  int n = 1;
  int m = 1;
  Real lambda = Real(0);
  std::vector<Real> t;

  EnsembleSpec() = default;
  EnsembleSpec(int n_, int m_, Real lambda_, std::vector<Real> t_);

  bool t_is_zero() const;
};

Real potential_V(const EnsembleSpec& spec, const Real& x);
Real potential_dV(const EnsembleSpec& spec, const Real& x);
Real weight_w(const EnsembleSpec& spec, const Real& x);

// phi(z) = 2 z sqrt(z^2-1) - log(z + sqrt(z^2-1)), principal branches,
// analytic on C \ (-inf, 1].
Cx phi(const Cx& z);
Real phi(const Real& z);  // real z > 1

// Conformal map f(z) = ((3/2) phi(z))^(2/3) evaluated through its Taylor
// series at z = 1; analytic there with f(1) = 0, f'(1) = 2. Valid on
// |z - 1| < 1/2.
class EdgeMap {
 public:
  explicit EdgeMap(std::size_t degree = 48);

  Real value(const Real& lambda) const;
  Real derivative(const Real& lambda) const;
  Real second_derivative(const Real& lambda) const;
  Cx value(const Cx& z) const;

  const Series& coefficients() const { return f_; }
  static Real radius() { return Real(1) / 2; }

 private:
  Series f_;    // f(1+w) = sum f_[k] w^k, f_[0] = 0
  Series df_;   // derivative in w
  Series d2f_;
  void check_domain(const Real& w) const;
};

// Laurent-plus-constant coefficients of (f(z)-f(lambda))^{-j} around lambda:
// c(j,k) for 1 <= j <= 2m, 0 <= k <= j, with c(j,j) = f'(lambda)^{-j}.
struct CjkTable {
  Real lambda;
  int m;
  std::vector<std::vector<Real>> c;  // c[j-1][k], k = 0..j

  const Real& at(int j, int k) const { return c[j - 1][k]; }
};

CjkTable cjk_table(const EdgeMap& f, const Real& lambda, int m);

// Assumption-1 direction: t_k = 2 sum_{j>=k} c(j,k) tau_j n^{-(1+2j/3)}.
std::vector<Real> t_from_tau(const EdgeMap& f, int n, const Real& lambda, const TauVector& tau);

EnsembleSpec spec_from_tau(const EdgeMap& f, int n, const Real& lambda, const TauVector& tau);

// s = 2 n^{2/3} (lambda - 1) and its inverse.
Real s_of_lambda(int n, const Real& lambda);
Real lambda_of_s(int n, const Real& s);

}  // namespace pgue
