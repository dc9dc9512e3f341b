#include "pgue/psi_kernel.hpp"

#include "pgue/ode.hpp"

namespace pgue {

namespace {

// Integer-power Laurent data of the scalar second-order reduction
//   v1'' = c1(zeta) v1' + c0(zeta) v1,   c1 = A12'/A12,
//   c0 = A12 A21 + A11^2 + A11' - A11 c1,
// where v2 = (v1' - A11 v1)/A12. All entries in powers of xq = 1/zeta.
struct ScalarReduction {
  Series a11, a12;      // coefficients of x^k, k >= 0
  Series c1;            // k >= 2
  Series c0_int;        // C_r, r >= 0 (the x^{-1} coefficient is exactly 1)
  std::size_t order;

  explicit ScalarReduction(const LaxCoefficients& c, std::size_t ord) : order(ord) {
    int K = 2 * c.m + 1;
    a11.assign(ord, Real(0));
    a12.assign(ord, Real(0));
    a12[0] = 1;
    Series a21(ord, Real(0));  // regular part; the x^{-1} term handled apart
    a21[0] = c.A0.a21;         // b1 + s
    for (int k = 1; k <= K && static_cast<std::size_t>(k) < ord; ++k) {
      a11[k] = c.Ak[k - 1].a11;
      a12[k] = c.Ak[k - 1].a12;
      a21[k] = c.Ak[k - 1].a21;
    }
    // dA/dzeta = -x^2 dA/dx for a series in x
    auto dzeta = [&](const Series& a) {
      Series d(ord, Real(0));
      for (std::size_t k = 1; k + 1 < ord; ++k) d[k + 1] = -Real(static_cast<long>(k)) * a[k];
      return d;
    };
    Series da12 = dzeta(a12);
    Series da11 = dzeta(a11);
    c1 = series_mul(da12, series_reciprocal(a12, ord), ord);
    // A12 * A21 = x^{-1} * P * Q with P = a12, Q = 1 + gamma0 x + sum gamma_k x^{k+1}
    Series Q(ord, Real(0));
    Q[0] = 1;
    for (std::size_t k = 0; k + 1 < ord; ++k) Q[k + 1] = a21[k];
    Series PQ = series_mul(a12, Q, ord);
    // c0 integer part: C_r = PQ[r+1] + (A11^2)[r] + (A11')[r] - (A11 c1)[r]
    Series a11sq = series_mul(a11, a11, ord);
    Series a11c1 = series_mul(a11, c1, ord);
    c0_int.assign(ord, Real(0));
    for (std::size_t r = 0; r + 1 < ord; ++r) {
      c0_int[r] = PQ[r + 1] + a11sq[r] + da11[r] - a11c1[r];
    }
  }
};

// Coefficients u_j of the formal solution v1 = e^{-sigma theta} zeta^{-1/4} u,
// u = sum u_j eta^j, eta = zeta^{-1/2}; sigma = +1 recessive, -1 dominant.
Series wkb_series(const ScalarReduction& red, const Real& s, int sigma, std::size_t terms) {
  std::size_t J = terms;
  Series W(2 * J + 8, Real(0));  // W~_w, eta-power coefficients
  Real sg(sigma);
  auto c1_at = [&](long r) -> Real {
    if (r < 2 || static_cast<std::size_t>(r) >= red.c1.size()) return Real(0);
    return red.c1[r];
  };
  auto c0_at = [&](long r) -> Real {
    if (r < 1 || static_cast<std::size_t>(r) >= red.c0_int.size()) return Real(0);
    return red.c0_int[r];
  };
  for (std::size_t w = 2; w < W.size(); ++w) {
    Real acc(0);
    if (w % 2 == 0) {
      long r = static_cast<long>(w) / 2;
      if (w == 2) acc += s * s / 4;
      if (w == 4) acc += Real(5) / 16;
      acc -= c0_at(r);
      if (w >= 6) acc += c1_at(r - 1) / 4;
    } else {
      if (w == 3) acc += sg * s / 2;
      acc += sg * c1_at((static_cast<long>(w) + 1) / 2);
      if (w >= 5) acc += sg * s / 2 * c1_at((static_cast<long>(w) - 1) / 2);
    }
    W[w] = acc;
  }
  Series u(J, Real(0));
  u[0] = 1;
  for (std::size_t N = 2; N <= J; ++N) {
    // sigma (N-1) u_{N-1} + lower-order contributions = 0
    Real acc(0);
    auto u_at = [&](long j) -> Real {
      if (j < 0 || static_cast<std::size_t>(j) >= u.size()) return Real(0);
      return u[j];
    };
    long Nl = static_cast<long>(N);
    acc += Real(Nl - 4) * Real(Nl - 1) / 4 * u_at(Nl - 4);
    acc += sg * s / 2 * Real(Nl - 3) * u_at(Nl - 3);
    for (long r = 2; 2 * r + 2 <= Nl; ++r) {
      acc += c1_at(r) * Real(Nl - 2 - 2 * r) / 2 * u_at(Nl - 2 - 2 * r);
    }
    for (std::size_t w = 2; w <= N; ++w) acc += W[w] * u_at(Nl - static_cast<long>(w));
    u[N - 1] = -acc / (sg * Real(Nl - 1));
  }
  return u;
}

struct ColumnValue {
  Cx v1, v2;
  Real trunc;  // relative size of the last kept series term
};

// Evaluate the formal column at zeta0 (principal branches; arg = +pi on the
// negative axis) and convert to the 2-vector via the first-order system.
ColumnValue eval_column(const ScalarReduction& red, int sigma, const Series& u, const Cx& zeta0,
                        const Real& s) {
  Cx eta = Cx(Real(1)) / sqrt_principal(zeta0);
  // u(eta) and du/dzeta = -(1/2) sum j u_j eta^{j+2}
  Cx uval, duval;
  Cx p(Real(1));
  Real umag(0), last(0);
  for (std::size_t j = 0; j < u.size(); ++j) {
    Cx term = u[j] * p;
    uval += term;
    duval += -Real(static_cast<long>(j)) / 2 * term * eta * eta;
    last = abs(term);
    umag = std::max(umag, last);
    p = p * eta;
  }
  Cx sqz = sqrt_principal(zeta0);
  Cx thp = sqz + Real(s / 2) / sqz;                    // theta'
  Cx theta = Real(2) / 3 * (zeta0 * sqz) + s * sqz;    // theta
  Cx mu = Real(sigma) * thp + Cx(Real(1)) / (Real(4) * zeta0);
  Real PI = pi();
  Cx lead = polar(1 / sqrt(Real(2)), -Real(sigma) * PI / 4);
  Cx pref = lead * exp(-Real(sigma) * theta) * pow_principal(zeta0, -Real(1) / 4);
  ColumnValue out;
  out.v1 = pref * uval;
  Cx dv1 = pref * (duval - mu * uval);
  // v2 from the first row of the system: v1' = A11 v1 + A12 v2
  Cx x = Cx(Real(1)) / zeta0;
  Cx a11v = series_eval(red.a11, x);
  Cx a12v = series_eval(red.a12, x);
  out.v2 = (dv1 - a11v * out.v1) / a12v;
  out.trunc = last / std::max(Real(abs(uval)), Real(1) / 1000);
  return out;
}

}  // namespace

PsiVector psi_solve(const LaxCoefficients& coeffs, const Real& x, PsiOptions opts) {
  if (abs(x) < Real(1) / 20) {
    throw domain_error("psi_solve: |x| < 0.05 is outside the supported domain");
  }
  Real R = opts.R;
  R = std::max(R, Real(50));
  R = std::max(R, Real(10 * abs(coeffs.s)));
  R = std::max(R, Real(10 * abs(x)));

  Cx zeta0 = opts.have_start ? opts.start : Cx(x > 0 ? R : -R);

  ScalarReduction red(coeffs, opts.series_terms + 8);
  Series u_rec = wkb_series(red, coeffs.s, +1, opts.series_terms);

  ColumnValue c1v = eval_column(red, +1, u_rec, zeta0, coeffs.s);
  Real trunc = c1v.trunc;
  Cx v1 = c1v.v1, v2 = c1v.v2;
  if (x < 0) {
    Series u_dom = wkb_series(red, coeffs.s, -1, opts.series_terms);
    ColumnValue c2v = eval_column(red, -1, u_dom, zeta0, coeffs.s);
    v1 += c2v.v1;
    v2 += c2v.v2;
    trunc = std::max(trunc, c2v.trunc);
  }
  if (trunc > opts.rtol) {
    throw accuracy_error("psi_solve: asymptotic initialization estimate " +
                         to_string_full(trunc) + " exceeds rtol; raise R");
  }

  // distance from the straight path to the origin
  {
    Cx d = Cx(x) - zeta0;
    Real t = -(zeta0.re * d.re + zeta0.im * d.im) / (d.re * d.re + d.im * d.im);
    t = std::min(Real(1), std::max(Real(0), t));
    Cx closest = zeta0 + t * d;
    if (abs(closest) < Real(1) / 1000) {
      throw domain_error("psi_solve: integration path too close to the origin");
    }
  }

  auto rhs = [&](const Real& t, const std::vector<Cx>& y, std::vector<Cx>& dy) {
    Cx z = zeta0 + t * (Cx(x) - zeta0);
    Cx dz = Cx(x) - zeta0;
    Mat2c A = lax_matrix(coeffs, z);
    dy[0] = dz * (A.a11 * y[0] + A.a12 * y[1]);
    dy[1] = dz * (A.a21 * y[0] + A.a22 * y[1]);
  };
  OdeOptions<Cx> oo;
  oo.rtol = opts.rtol;
  oo.store_dense = false;
  OdeResult<Cx> res = dopri5<Cx>(rhs, Real(0), std::vector<Cx>{v1, v2}, Real(1), oo);

  PsiVector out;
  out.x = x;
  out.psi1 = res.y_end[0];
  out.psi2 = res.y_end[1];
  Mat2c A = lax_matrix(coeffs, Cx(x));
  out.dpsi1 = A.a11 * out.psi1 + A.a12 * out.psi2;
  out.dpsi2 = A.a21 * out.psi1 + A.a22 * out.psi2;
  out.init_error = trunc;
  return out;
}

Real kernel_K_psi(const PsiVector& pu, const PsiVector& pv) {
  Real PI = pi();
  Cx num;
  Cx kc;
  if (pu.x == pv.x) {
    // confluent limit of the same bilinear form
    num = pu.psi1 * pu.dpsi2 - pu.dpsi1 * pu.psi2;
    kc = num / Cx(Real(0), 2 * PI);
  } else {
    num = pv.psi1 * pu.psi2 - pu.psi1 * pv.psi2;
    kc = num / Cx(Real(0), 2 * PI * (pu.x - pv.x));
  }
  if (abs(kc.im) > (1 + abs(kc.re)) / 1000000) {
    throw consistency_error("kernel_K_psi: imaginary contamination " + to_string_full(kc.im));
  }
  return kc.re;
}

Real kernel_K_psi(const LaxCoefficients& coeffs, const Real& u, const Real& v, PsiOptions opts) {
  PsiVector pu = psi_solve(coeffs, u, opts);
  if (u == v) return kernel_K_psi(pu, pu);
  PsiVector pv = psi_solve(coeffs, v, opts);
  return kernel_K_psi(pu, pv);
}

}  // namespace pgue
