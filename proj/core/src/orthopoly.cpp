#include "pgue/orthopoly.hpp"

#include <cmath>

namespace pgue {

RecurrenceTable stieltjes(const EnsembleSpec& spec, std::size_t N, const QuadratureGrid& grid) {
  if (grid.size() < 4 * N) {
    throw domain_error("stieltjes: grid too coarse for requested degree");
  }
  RecurrenceTable tab;
  tab.spec = spec;
  tab.grid = grid;
  tab.N = N;
  tab.alpha.assign(N, Real(0));
  tab.beta.assign(N, Real(0));
  tab.h.assign(N + 1, Real(0));
  tab.log_h.assign(N + 1, Real(0));
  tab.p1.assign(N + 1, Real(0));

  const std::size_t M = grid.size();
  const std::vector<Real>& x = grid.nodes;
  const std::vector<Real>& r = grid.weights_w;

  std::vector<Real> pim(M, Real(0));  // pi_{k-1}
  std::vector<Real> pik(M, Real(1));  // pi_k

  Real hk(0), xk(0);
  for (std::size_t i = 0; i < M; ++i) {
    hk += r[i];
    xk += r[i] * x[i];
  }
  if (hk <= 0) throw precision_error("stieltjes: mu_0 <= 0");
  tab.h[0] = hk;
  tab.log_h[0] = log(hk);

  for (std::size_t k = 0; k < N; ++k) {
    Real ak = xk / hk;
    tab.alpha[k] = ak;
    tab.p1[k + 1] = tab.p1[k] - ak;
    // advance the recurrence on the grid
    Real hk1(0), xk1(0);
    if (k == 0) {
      for (std::size_t i = 0; i < M; ++i) {
        Real v = (x[i] - ak) * pik[i];
        pim[i] = pik[i];
        pik[i] = v;
        Real rv = r[i] * v;
        hk1 += rv * v;
        xk1 += rv * v * x[i];
      }
    } else {
      Real bk = tab.beta[k];
      for (std::size_t i = 0; i < M; ++i) {
        Real v = (x[i] - ak) * pik[i] - bk * pim[i];
        pim[i] = pik[i];
        pik[i] = v;
        Real rv = r[i] * v;
        hk1 += rv * v;
        xk1 += rv * v * x[i];
      }
    }
    if (hk1 <= 0) {
      throw precision_error("stieltjes: <pi,pi> <= 0 at degree " + std::to_string(k + 1) +
                            "; raise precision or refine the grid");
    }
    if (k + 1 < N) {
      tab.beta[k + 1] = hk1 / hk;
      if (tab.beta[k + 1] <= 0) {
        throw precision_error("stieltjes: beta <= 0 at degree " + std::to_string(k + 1));
      }
    }
    tab.h[k + 1] = hk1;
    tab.log_h[k + 1] = log(hk1);
    hk = hk1;
    xk = xk1;
  }
  return tab;
}

RecurrenceTable build_table(const EnsembleSpec& spec, std::size_t N, const Real& tol,
                            GridOptions opts) {
  QuadratureGrid grid = build_grid(spec, tol, opts);
  return stieltjes(spec, N, grid);
}

void RecurrenceTable::eval(const Real& x, std::size_t kmax, std::vector<Real>& pi_out) const {
  if (kmax > N) throw domain_error("RecurrenceTable::eval: degree exceeds table");
  pi_out.assign(kmax + 1, Real(0));
  pi_out[0] = 1;
  if (kmax == 0) return;
  pi_out[1] = x - alpha[0];
  for (std::size_t k = 1; k < kmax; ++k) {
    pi_out[k + 1] = (x - alpha[k]) * pi_out[k] - beta[k] * pi_out[k - 1];
  }
}

void RecurrenceTable::eval_with_derivative(const Real& x, std::size_t kmax,
                                           std::vector<Real>& pi_out,
                                           std::vector<Real>& dpi_out) const {
  eval(x, kmax, pi_out);
  dpi_out.assign(kmax + 1, Real(0));
  if (kmax == 0) return;
  dpi_out[1] = 1;
  for (std::size_t k = 1; k < kmax; ++k) {
    dpi_out[k + 1] = pi_out[k] + (x - alpha[k]) * dpi_out[k] - beta[k] * dpi_out[k - 1];
  }
}

Real cd_kernel(const RecurrenceTable& table, std::size_t n, const Real& x, const Real& y) {
  if (n > table.N) throw domain_error("cd_kernel: n exceeds table degree");
  if (x == y) return cd_kernel_diag(table, n, x);
  std::vector<Real> px, py;
  table.eval(x, n, px);
  table.eval(y, n, py);
  Real wx = weight_w(table.spec, x);
  Real wy = weight_w(table.spec, y);
  Real g2 = table.gamma_sq(n - 1);
  return g2 * sqrt(wx * wy) * (px[n] * py[n - 1] - px[n - 1] * py[n]) / (x - y);
}

Real cd_kernel_diag(const RecurrenceTable& table, std::size_t n, const Real& x) {
  if (n > table.N) throw domain_error("cd_kernel_diag: n exceeds table degree");
  std::vector<Real> p, dp;
  table.eval_with_derivative(x, n, p, dp);
  Real w = weight_w(table.spec, x);
  Real g2 = table.gamma_sq(n - 1);
  return g2 * w * (dp[n] * p[n - 1] - dp[n - 1] * p[n]);
}

Real kernel_trace(const RecurrenceTable& table, std::size_t n) {
  QuadratureGrid fine = refine_grid(table.grid);
  Real acc(0);
  std::vector<Real> p, dp;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const Real& x = fine.nodes[i];
    table.eval_with_derivative(x, n, p, dp);
    Real g2 = table.gamma_sq(n - 1);
    acc += fine.weights_w[i] * g2 * (dp[n] * p[n - 1] - dp[n - 1] * p[n]);
  }
  return acc;
}

Real partition_log_zn(const RecurrenceTable& table, std::size_t n) {
  if (n > table.N) throw domain_error("partition_log_zn: n exceeds table degree");
  Real acc = lgamma(Real(static_cast<long>(n)) + 1);
  for (std::size_t k = 0; k < n; ++k) acc += table.log_h[k];
  return acc;
}

Real log_zn_gue(int n) {
  Real acc = Real(n) / 2 * log(2 * pi()) - Real(n) * Real(n) / 2 * log(Real(4 * n));
  for (int j = 1; j <= n; ++j) acc += lgamma(Real(j) + 1);
  return acc;
}

Real dlogZ_dlambda(const RecurrenceTable& table, std::size_t n) {
  if (n > table.N) throw domain_error("dlogZ_dlambda: n exceeds table degree");
  return 4 * Real(static_cast<long>(n)) * table.p1[n];
}

namespace {

// Cauchy-type integrals (1/2 pi i) int pi_k(x) w(x) / (x - lambda) dx.
// The weight vanishes to all orders at lambda (t_2m > 0), so the integrand
// is regular; real part of the integral divided out, see YEdgeData gauge.
Real cauchy_integral(const RecurrenceTable& table, std::size_t k, const Real& lambda) {
  const QuadratureGrid& grid = table.grid;
  Real acc(0);
  std::vector<Real> p;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table.eval(grid.nodes[i], k, p);
    acc += grid.weights_w[i] * p[k] / (grid.nodes[i] - lambda);
  }
  return acc;
}

Mat2 y_matrix_real_gauge(const EnsembleSpec& spec, const RecurrenceTable& table, std::size_t n,
                         const Real& lambda) {
  // Y = [[pi_n, Cn/(2 pi i)], [-2 pi i g2 pi_{n-1}, -g2 C_{n-1}]] conjugated
  // by diag(1, 2 pi i); entries below are all real.
  std::vector<Real> p;
  table.eval(lambda, n, p);
  Real Cn = cauchy_integral(table, n, lambda);
  Real Cn1 = cauchy_integral(table, n - 1, lambda);
  Real g2 = table.gamma_sq(n - 1);
  Real pi2 = 4 * pi() * pi();
  (void)spec;
  return Mat2(p[n], -Cn / pi2, pi2 * g2 * p[n - 1], -g2 * Cn1);
}

}  // namespace

YEdgeData y_edge(const EnsembleSpec& spec, const RecurrenceTable& table, std::size_t n) {
  if (n > table.N) throw domain_error("y_edge: n exceeds table degree");
  YEdgeData out;
  out.lambda = spec.lambda;
  out.Y = y_matrix_real_gauge(spec, table, n, spec.lambda);

  auto to_H = [&](const Mat2& Y, const Real& lam) {
    Real el = exp(-spec.n * lam * lam);
    return Mat2(Y.a11 * el, Y.a12 / el, Y.a21 * el, Y.a22 / el);
  };
  out.H = to_H(out.Y, spec.lambda);

  // dH/dlambda by central difference: full rebuilds at lambda +- h
  Real hstep = ldexp(Real(1), -static_cast<int>(precision_bits()) / 3);
  EnsembleSpec sp(spec.n, spec.m, spec.lambda + hstep, spec.t);
  EnsembleSpec sm(spec.n, spec.m, spec.lambda - hstep, spec.t);
  RecurrenceTable tp = build_table(sp, n, table.grid.tol);
  RecurrenceTable tm = build_table(sm, n, table.grid.tol);
  Mat2 Hp = to_H(y_matrix_real_gauge(sp, tp, n, sp.lambda), sp.lambda);
  Mat2 Hm = to_H(y_matrix_real_gauge(sm, tm, n, sm.lambda), sm.lambda);
  Real inv2h = 1 / (2 * hstep);
  out.dH = Mat2((Hp.a11 - Hm.a11) * inv2h, (Hp.a12 - Hm.a12) * inv2h, (Hp.a21 - Hm.a21) * inv2h,
                (Hp.a22 - Hm.a22) * inv2h);
  return out;
}

B1Estimate b1_oracle(const EdgeMap& f, int n, const Real& lambda, const TauVector& tau,
                     const Real& tol, GridOptions opts) {
  Real n23 = pow(Real(n), Real(2) / 3);
  Real lo = 1 - 2 / n23;
  Real hi = 1 + Real(11) / 5 * pow(Real(n), -Real(1) / 3);
  if (lambda <= lo || lambda >= hi) {
    throw domain_error("b1_oracle: lambda outside the edge window");
  }
  Real hstep = ldexp(Real(1), -static_cast<int>(precision_bits()) / 3);
  auto dlz = [&](const Real& lam) {
    EnsembleSpec sp = spec_from_tau(f, n, lam, tau);
    RecurrenceTable t = build_table(sp, static_cast<std::size_t>(n), tol, opts);
    return dlogZ_dlambda(t, static_cast<std::size_t>(n));
  };
  Real d2 = (dlz(lambda + hstep) - dlz(lambda - hstep)) / (2 * hstep);
  Real s = n23 * f.value(lambda);
  Real fp = n23 * f.derivative(lambda);
  B1Estimate est;
  est.s = s;
  est.value = -d2 / (fp * fp) + n23 * f.value(lambda) / 2 - s / 2;
  return est;
}

}  // namespace pgue
