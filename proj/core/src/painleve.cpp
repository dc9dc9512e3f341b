#include "pgue/painleve.hpp"

#include <algorithm>

#include "pgue/quadrature.hpp"

namespace pgue {

TauTilde tau_tilde(const TauVector& tau) {
  int m = tau.m;
  TauTilde tt;
  tt.values.assign(2 * m + 1, Real(0));
  auto tau_at = [&](int idx) -> Real {
    // tau_0 = 0 and indices beyond 2m never contribute (factor vanishes)
    if (idx < 1 || idx > 2 * m) return Real(0);
    return tau.tau[idx - 1];
  };
  for (int p = 2 * m + 2; p <= 4 * m + 2; ++p) {
    Real acc(0);
    for (int k = p - 2 * m - 1; k <= 2 * m + 1; ++k) {
      acc += Real(k - 1) * Real(p - k - 1) * tau_at(k - 1) * tau_at(p - k - 1);
    }
    tt.values[p - (2 * m + 2)] = acc;
  }
  return tt;
}

std::vector<Real> first_integrals(const P34State& st, const TauTilde& tt) {
  int m = st.m;
  std::vector<Real> out(2 * m + 1, Real(0));
  for (int p = 2 * m + 2; p <= 4 * m + 2; ++p) {
    Real acc = tt.at_p(p, m);
    for (int k = p - 2 * m - 1; k <= 2 * m + 1; ++k) {
      int j = p - k;
      if (j < 1 || j > 2 * m + 1) continue;
      acc += st.u[j - 1] * st.w[k - 1] - st.v[k - 1] * st.v[j - 1] / 4;
    }
    out[p - (2 * m + 2)] = acc;
  }
  return out;
}

InitReport asymptotic_init(const TauVector& tau, const Real& s0, const Real& residual_tol) {
  int m = tau.m;
  int K = 2 * m + 1;
  P34State st;
  st.m = m;
  st.s = s0;
  st.u.assign(K, Real(0));
  st.v.assign(K, Real(0));
  st.w.assign(K, Real(0));
  TauTilde tt = tau_tilde(tau);

  if (tau.is_zero()) {
    InitReport rep;
    rep.state = st;
    rep.ansatz_residual.assign(K, Real(0));
    return rep;
  }
  if (s0 < 4) throw domain_error("asymptotic_init: s0 too small for the power-law ansatz");

  // Leading balance beta_k plus the next-order coefficients B_k fixed by the
  // first integrals as power-series identities: the s^{-1} order of F_p gives
  //   sum_{j+k=p, j,k>=2} 2 beta_j B_k = -sum_{j+k=p, j,k>=2, k<2m+1} beta_j beta_{k+1},
  // for p = 2m+3 .. 4m+2 (the p = 2m+2 equation is implied by integrability).
  std::vector<Real> beta(K + 1, Real(0));  // beta[k], k = 1..2m+1 (beta[1] = b1 coeff)
  beta[1] = -tau.tau[0] / 2;
  for (int k = 2; k <= K; ++k) beta[k] = Real(k - 1) * tau.tau[k - 2];
  std::vector<Real> B(K + 1, Real(0));  // corrections, k = 2..2m+1; B[1] stays 0
  {
    int nunk = K - 1;  // B_2 .. B_{2m+1}
    std::vector<std::vector<Real>> M(nunk, std::vector<Real>(nunk, Real(0)));
    std::vector<Real> rhs(nunk, Real(0));
    for (int p = 2 * m + 3; p <= 4 * m + 2; ++p) {
      int row = p - (2 * m + 3);
      for (int k = 2; k <= K; ++k) {
        int j = p - k;
        if (j < 2 || j > K) continue;
        M[row][k - 2] += 2 * beta[j];
        if (k + 1 <= K) rhs[row] -= beta[j] * beta[k + 1];
      }
    }
    // small dense solve with partial pivoting
    for (int col = 0; col < nunk; ++col) {
      int piv = col;
      for (int r = col + 1; r < nunk; ++r) {
        if (abs(M[r][col]) > abs(M[piv][col])) piv = r;
      }
      std::swap(M[piv], M[col]);
      std::swap(rhs[piv], rhs[col]);
      if (M[col][col] == 0) {
        throw precision_error("asymptotic_init: degenerate correction system");
      }
      for (int r = col + 1; r < nunk; ++r) {
        Real f = M[r][col] / M[col][col];
        for (int c2 = col; c2 < nunk; ++c2) M[r][c2] -= f * M[col][c2];
        rhs[r] -= f * rhs[col];
      }
    }
    for (int col = nunk - 1; col >= 0; --col) {
      Real acc = rhs[col];
      for (int c2 = col + 1; c2 < nunk; ++c2) acc -= M[col][c2] * B[c2 + 2];
      B[col + 2] = acc / M[col][col];
    }
  }

  Real rs = sqrt(s0);
  std::vector<Real> b2nd(K, Real(0));  // ansatz second derivatives
  // b_1 = beta_1 s^{-3/2}
  st.u[0] = beta[1] / (s0 * rs);
  st.v[0] = -Real(3) / 2 * beta[1] / (s0 * s0 * rs);
  b2nd[0] = Real(15) / 4 * beta[1] / (s0 * s0 * s0 * rs);
  // b_k = beta_k s^{-1/2} + B_k s^{-3/2}, k >= 2
  for (int k = 2; k <= K; ++k) {
    st.u[k - 1] = beta[k] / rs + B[k] / (s0 * rs);
    st.v[k - 1] = -beta[k] / (2 * s0 * rs) - Real(3) / 2 * B[k] / (s0 * s0 * rs);
    b2nd[k - 1] = 3 * beta[k] / (4 * s0 * s0 * rs) + Real(15) / 4 * B[k] / (s0 * s0 * s0 * rs);
  }
  // ansatz w_k and its residual (diagnostic only)
  Real lin = 2 * st.u[0] + s0;
  for (int k = 1; k <= K; ++k) {
    Real bk1 = (k < K) ? st.u[k] : Real(0);
    st.w[k - 1] = b2nd[k - 1] / 2 - lin * st.u[k - 1] - bk1;
  }
  InitReport rep;
  rep.ansatz_residual = first_integrals(st, tt);
  for (int p = 2 * m + 2; p <= 4 * m + 2; ++p) {
    Real scale = std::max(Real(1), Real(abs(tt.at_p(p, m))));
    if (abs(rep.ansatz_residual[p - (2 * m + 2)]) > residual_tol * scale) {
      throw accuracy_error("asymptotic_init: ansatz residual too large at s0 = " +
                           to_string_full(s0) + "; raise s0");
    }
  }

  // Solve the first integrals for w exactly (anti-triangular back-substitution:
  // the p = 2m+1+r equation determines w_r, descending r).
  for (int r = K; r >= 1; --r) {
    int p = 2 * m + 1 + r;
    Real acc = tt.at_p(p, m);
    for (int k = p - 2 * m - 1; k <= 2 * m + 1; ++k) {
      int j = p - k;
      if (j < 1 || j > 2 * m + 1) continue;
      acc -= st.v[k - 1] * st.v[j - 1] / 4;
      if (k != r) acc += st.u[j - 1] * st.w[k - 1];
    }
    // remaining term: u_{p-r} w_r = u_{2m+1} w_r
    st.w[r - 1] = -acc / st.u[K - 1];
  }
  rep.state = st;
  return rep;
}

namespace {

// state layout: y = [u_1..u_K, v_1..v_K, w_1..w_K, a1]
struct P34Rhs {
  int m;
  int K;

  void operator()(const Real& s, const std::vector<Real>& y, std::vector<Real>& dy) const {
    const Real* u = y.data();
    const Real* v = y.data() + K;
    const Real* w = y.data() + 2 * K;
    Real lin = 2 * u[0] + s;
    for (int k = 0; k < K; ++k) {
      Real uk1 = (k + 1 < K) ? u[k + 1] : Real(0);
      Real vk1 = (k + 1 < K) ? v[k + 1] : Real(0);
      dy[k] = v[k];
      dy[K + k] = 2 * (w[k] + lin * u[k] + uk1);
      dy[2 * K + k] = lin * v[k] + vk1;
    }
    dy[3 * K] = u[0] + s / 2;  // a1' = b1 + s/2
  }
};

P34State unpack(int m, const Real& s, const std::vector<Real>& y) {
  int K = 2 * m + 1;
  P34State st;
  st.m = m;
  st.s = s;
  st.u.assign(y.begin(), y.begin() + K);
  st.v.assign(y.begin() + K, y.begin() + 2 * K);
  st.w.assign(y.begin() + 2 * K, y.begin() + 3 * K);
  return st;
}

}  // namespace

PainleveTrajectory integrate_p34(const TauVector& tau, const Real& s0_in, const Real& s_min,
                                 P34Options opts) {
  if (s_min >= s0_in) throw domain_error("integrate_p34: need s_min < s0");
  int m = tau.m;
  int K = 2 * m + 1;
  TauTilde tt = tau_tilde(tau);

  Real s0 = s0_in;
  InitReport init;
  for (;;) {
    try {
      init = asymptotic_init(tau, s0);
      break;
    } catch (const accuracy_error&) {
      if (!opts.auto_raise_s0 || s0 * 3 / 2 > opts.s0_cap) throw;
      s0 = s0 * 3 / 2;
    }
  }

  std::vector<Real> y0(3 * K + 1, Real(0));
  for (int k = 0; k < K; ++k) {
    y0[k] = init.state.u[k];
    y0[K + k] = init.state.v[k];
    y0[2 * K + k] = init.state.w[k];
  }
  y0[3 * K] = s0 * s0 / 4 + (tau.is_zero() ? Real(0) : Real(tau.tau[0] / sqrt(s0)));

  PainleveTrajectory traj;
  traj.tau = tau;
  traj.ttilde = tt;
  traj.s0 = s0;
  traj.s_min = s_min;

  std::vector<Real> scales(K);
  for (int p = 2 * m + 2; p <= 4 * m + 2; ++p) {
    scales[p - (2 * m + 2)] = std::max(Real(1), Real(abs(tt.at_p(p, m))));
  }
  Real drift_budget = opts.rtol * opts.drift_tol_factor;

  OdeOptions<Real> oo;
  oo.rtol = opts.rtol;
  oo.store_dense = true;
  oo.monitor = [&](const Real& s, const std::vector<Real>& y) {
    P34State st = unpack(m, s, y);
    std::vector<Real> F = first_integrals(st, tt);
    Real worst(0);
    for (int i = 0; i < K; ++i) worst = std::max(worst, Real(abs(F[i]) / scales[i]));
    if (worst > drift_budget) return false;
    traj.drift.push_back(worst);
    traj.drift_s.push_back(s);
    return true;
  };

  P34Rhs rhs{m, K};
  traj.ode = dopri5<Real>(rhs, s0, y0, s_min, oo);
  return traj;
}

P34State PainleveTrajectory::state_at(const Real& s) const {
  std::vector<Real> y;
  ode.eval(s, y);
  return unpack(tau.m, s, y);
}

Real PainleveTrajectory::b1(const Real& s) const {
  std::vector<Real> y;
  ode.eval(s, y);
  return y[0];
}

Real PainleveTrajectory::a1(const Real& s) const {
  std::vector<Real> y;
  ode.eval(s, y);
  return y[3 * (2 * tau.m + 1)];
}

Real PainleveTrajectory::a1_derivative(const Real& s) const {
  std::vector<Real> dy;
  ode.eval(s, dy, 1);
  return dy[3 * (2 * tau.m + 1)];
}

Real PainleveTrajectory::b1_derivative(const Real& s) const {
  std::vector<Real> dy;
  ode.eval(s, dy, 1);
  return dy[0];
}

Real PainleveTrajectory::max_drift() const {
  Real worst(0);
  for (const auto& d : drift) worst = std::max(worst, d);
  return worst;
}

std::vector<Real> lenard_residual(const PainleveTrajectory& traj, const Real& s) {
  int m = traj.tau.m;
  int K = 2 * m + 1;
  std::vector<Real> y, d2;
  traj.ode.eval(s, y);
  traj.ode.eval(s, d2, 2);  // second derivative of the interpolant
  std::vector<Real> out(K);
  Real lin = 2 * y[0] + s;
  Real dlin = 2 * y[K] + 1;  // (2b_1+s)' = 2b_1' + 1
  for (int k = 0; k < K; ++k) {
    Real b3 = d2[K + k];  // (v_k)'' = b_k'''
    Real vk1 = (k + 1 < K) ? y[K + k + 1] : Real(0);
    out[k] = vk1 - (b3 - 4 * lin * y[K + k] - 2 * dlin * y[k]) / 4;
  }
  return out;
}

Real partition_integral(const PainleveTrajectory& traj, const Real& s) {
  const Real& s0 = traj.s0;
  if (s < traj.s_min || s > s0) {
    throw domain_error("partition_integral: s outside trajectory range");
  }
  Real tau1 = traj.tau.is_zero() ? Real(0) : traj.tau.tau[0];
  // substitution t = s + r^2:
  //   int_s^{s0} (b1(t)(t-s) + tau1/(2 sqrt(t-s))) dt
  //     = int_0^{sqrt(s0-s)} (2 b1(s+r^2) r^3 + tau1) dr
  Real rmax = sqrt(s0 - s);
  const GaussRule& rule = gauss_legendre(64);
  std::size_t panels = 8;
  Real acc(0);
  for (std::size_t p = 0; p < panels; ++p) {
    Real a = rmax * Real(static_cast<long>(p)) / Real(static_cast<long>(panels));
    Real b = rmax * Real(static_cast<long>(p + 1)) / Real(static_cast<long>(panels));
    Real half = (b - a) / 2, mid = (a + b) / 2;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      Real r = mid + half * rule.x[i];
      Real t = s + r * r;
      acc += half * rule.w[i] * (2 * traj.b1(t) * r * r * r + tau1);
    }
  }
  // tail over (s0, inf) with b1 ~ -tau1/(2 t^{3/2}) in closed form
  Real tail = tau1 * (sqrt(s0) + s / sqrt(s0) - sqrt(s0 - s));
  return acc + tail;
}

}  // namespace pgue
