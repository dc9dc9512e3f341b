#include "pgue/scaling.hpp"

#include <cmath>

namespace pgue {

TauVector::TauVector(int m_, std::vector<Real> tau_) : m(m_), tau(std::move(tau_)) {
  if (m < 1) throw domain_error("TauVector: m must be positive");
  if (tau.size() != static_cast<std::size_t>(2 * m)) {
    throw domain_error("TauVector: tau must have length 2m");
  }
  if (!is_zero() && tau.back() <= 0) {
    throw domain_error("TauVector: tau_{2m} must be positive");
  }
}

bool TauVector::is_zero() const {
  for (const auto& v : tau) {
    if (v != 0) return false;
  }
  return true;
}

EnsembleSpec::EnsembleSpec(int n_, int m_, Real lambda_, std::vector<Real> t_)
    : n(n_), m(m_), lambda(std::move(lambda_)), t(std::move(t_)) {
  if (n < 1) throw domain_error("EnsembleSpec: n must be positive");
  if (m < 1) throw domain_error("EnsembleSpec: m must be positive");
  if (t.size() != static_cast<std::size_t>(2 * m)) {
    throw domain_error("EnsembleSpec: t must have length 2m");
  }
  if (!t_is_zero() && t.back() <= 0) {
    throw domain_error("EnsembleSpec: t_{2m} must be positive (integrable weight)");
  }
}

bool EnsembleSpec::t_is_zero() const {
  for (const auto& v : t) {
    if (v != 0) return false;
  }
  return true;
}

Real potential_V(const EnsembleSpec& spec, const Real& x) {
  if (!spec.t_is_zero() && x == spec.lambda) {
    throw domain_error("potential_V: pole at x = lambda");
  }
  Real v = 2 * x * x;
  if (spec.t_is_zero()) return v;
  Real u = x - spec.lambda;
  Real inv = 1 / u;
  Real p = inv;
  for (std::size_t k = 0; k < spec.t.size(); ++k) {
    v += spec.t[k] * p;
    p *= inv;
  }
  return v;
}

Real potential_dV(const EnsembleSpec& spec, const Real& x) {
  if (!spec.t_is_zero() && x == spec.lambda) {
    throw domain_error("potential_dV: pole at x = lambda");
  }
  Real v = 4 * x;
  if (spec.t_is_zero()) return v;
  Real u = x - spec.lambda;
  Real inv = 1 / u;
  Real p = inv * inv;
  for (std::size_t k = 0; k < spec.t.size(); ++k) {
    v -= Real(static_cast<long>(k + 1)) * spec.t[k] * p;
    p *= inv;
  }
  return v;
}

Real weight_w(const EnsembleSpec& spec, const Real& x) {
  if (!spec.t_is_zero() && x == spec.lambda) return Real(0);  // essential zero
  return exp(-spec.n * potential_V(spec, x));
}

Cx phi(const Cx& z) {
  if (z.im == 0 && z.re <= 1) throw domain_error("phi: z on the cut (-inf, 1]");
  // 2 int_1^z sqrt(x^2-1) dx in closed form. sqrt(z^2-1) is split as
  // sqrt(z-1) sqrt(z+1), each principal; the product is the branch analytic
  // off (-inf, 1] and positive on (1, inf).
  Cx r = sqrt_principal(z - Cx(Real(1))) * sqrt_principal(z + Cx(Real(1)));
  return z * r - log_principal(z + r);
}

Real phi(const Real& z) {
  if (z <= 1) throw domain_error("phi: need z > 1 on the real axis");
  Real r = sqrt(z * z - 1);
  return z * r - log(z + r);
}

EdgeMap::EdgeMap(std::size_t degree) {
  // phi(1+w) = w^{3/2} g(w),
  // g(w) = 2 sqrt(2) sum_k binom(1/2,k) 2^{-k} w^k / (k + 3/2)
  std::size_t n = degree + 1;
  Series g(n);
  Real binom(1);  // binom(1/2, k)
  Real two_k(1);
  for (std::size_t k = 0; k < n; ++k) {
    g[k] = 2 * sqrt(Real(2)) * binom / (two_k * (Real(static_cast<long>(k)) + Real(3) / 2));
    binom *= (Real(1) / 2 - Real(static_cast<long>(k))) / Real(static_cast<long>(k + 1));
    two_k *= 2;
  }
  // f(1+w) = w * ((3/2) g(w))^{2/3}
  Series h = g;
  for (auto& c : h) c *= Real(3) / 2;
  Series p = series_pow(h, Real(2) / 3, n);
  f_.assign(n + 1, Real(0));
  for (std::size_t k = 0; k < n; ++k) f_[k + 1] = p[k];
  df_ = series_derivative(f_);
  d2f_ = series_derivative(df_);
}

void EdgeMap::check_domain(const Real& w) const {
  if (abs(w) >= radius()) {
    throw domain_error("EdgeMap: |z - 1| must be < 1/2");
  }
}

Real EdgeMap::value(const Real& lambda) const {
  Real w = lambda - 1;
  check_domain(w);
  return series_eval(f_, w);
}

Real EdgeMap::derivative(const Real& lambda) const {
  Real w = lambda - 1;
  check_domain(w);
  return series_eval(df_, w);
}

Real EdgeMap::second_derivative(const Real& lambda) const {
  Real w = lambda - 1;
  check_domain(w);
  return series_eval(d2f_, w);
}

Cx EdgeMap::value(const Cx& z) const {
  Cx w = z - Cx(Real(1));
  if (abs(w) >= radius()) throw domain_error("EdgeMap: |z - 1| must be < 1/2");
  return series_eval(f_, w);
}

CjkTable cjk_table(const EdgeMap& f, const Real& lambda, int m) {
  Real w0 = lambda - 1;
  if (abs(w0) >= EdgeMap::radius()) {
    throw domain_error("cjk_table: lambda outside the analyticity neighborhood");
  }
  // Taylor of f at lambda, then g(u) = (f(lambda+u) - f(lambda))/u
  Series at_l = series_shift(f.coefficients(), w0);
  std::size_t need = static_cast<std::size_t>(2 * m) + 2;
  Series g(need);
  for (std::size_t k = 0; k < need; ++k) {
    g[k] = (k + 1 < at_l.size()) ? at_l[k + 1] : Real(0);
  }
  CjkTable tab;
  tab.lambda = lambda;
  tab.m = m;
  tab.c.resize(2 * m);
  for (int j = 1; j <= 2 * m; ++j) {
    // (f(z)-f(lambda))^{-j} = u^{-j} g(u)^{-j}; coefficient of u^{-k} is
    // the u^{j-k} coefficient of g^{-j}
    Series gj = series_pow(g, Real(-j), static_cast<std::size_t>(j) + 1);
    tab.c[j - 1].resize(j + 1);
    for (int k = 0; k <= j; ++k) tab.c[j - 1][k] = gj[j - k];
  }
  return tab;
}

std::vector<Real> t_from_tau(const EdgeMap& f, int n, const Real& lambda, const TauVector& tau) {
  std::vector<Real> t(2 * tau.m, Real(0));
  if (tau.is_zero()) return t;
  CjkTable tab = cjk_table(f, lambda, tau.m);
  Real n23 = pow(Real(n), Real(2) / 3);
  // n^{-(1 + 2j/3)} = n^{-1} (n^{2/3})^{-j}
  Real scale = 1 / Real(n);
  for (int j = 1; j <= 2 * tau.m; ++j) {
    scale /= n23;
    for (int k = 1; k <= j; ++k) {
      t[k - 1] += 2 * tab.at(j, k) * tau.tau[j - 1] * scale;
    }
  }
  return t;
}

EnsembleSpec spec_from_tau(const EdgeMap& f, int n, const Real& lambda, const TauVector& tau) {
  return EnsembleSpec(n, tau.m, lambda, t_from_tau(f, n, lambda, tau));
}

Real s_of_lambda(int n, const Real& lambda) {
  return 2 * pow(Real(n), Real(2) / 3) * (lambda - 1);
}

Real lambda_of_s(int n, const Real& s) { return 1 + s / (2 * pow(Real(n), Real(2) / 3)); }

}  // namespace pgue
