#include "pgue/lax.hpp"

namespace pgue {

LaxCoefficients LaxCoefficients::from_state(const P34State& st) {
  LaxCoefficients c;
  c.m = st.m;
  c.s = st.s;
  c.A0 = Mat2(Real(0), Real(1), st.u[0] + st.s, Real(0));
  int K = 2 * st.m + 1;
  c.Ak.reserve(K);
  for (int k = 1; k <= K; ++k) {
    c.Ak.emplace_back(st.v[k - 1] / 2, -st.u[k - 1], st.w[k - 1], -st.v[k - 1] / 2);
  }
  return c;
}

Mat2c lax_matrix(const LaxCoefficients& c, const Cx& zeta) {
  if (abs(zeta) == 0) throw domain_error("lax_matrix: zeta = 0");
  Cx inv = Cx(Real(1)) / zeta;
  Mat2c acc(Cx(c.A0.a11), Cx(c.A0.a12), Cx(c.A0.a21), Cx(c.A0.a22));
  Cx p(Real(1));
  for (const Mat2& A : c.Ak) {
    p = p * inv;
    acc.a11 += A.a11 * p;
    acc.a12 += A.a12 * p;
    acc.a21 += A.a21 * p;
    acc.a22 += A.a22 * p;
  }
  acc.a21 += zeta;
  return acc;
}

std::vector<Real> det_a_laurent(const LaxCoefficients& c, const Real& rho) {
  // det A has powers zeta^1 .. zeta^{-(4m+2)}; N equally spaced samples with
  // N > 4m+4 make the discrete Fourier extraction exact up to roundoff
  int m = c.m;
  std::size_t N = 64;
  Real PI = pi();
  std::vector<Cx> det_vals(N);
  for (std::size_t j = 0; j < N; ++j) {
    Real th = 2 * PI * Real(static_cast<long>(j)) / Real(static_cast<long>(N));
    Cx z = polar(rho, th);
    det_vals[j] = lax_matrix(c, z).det();
  }
  std::vector<Real> out;
  out.reserve(2 * m + 1);
  for (int p = 2 * m + 2; p <= 4 * m + 2; ++p) {
    Cx acc;
    for (std::size_t j = 0; j < N; ++j) {
      Real th = 2 * PI * Real(static_cast<long>(j)) / Real(static_cast<long>(N));
      acc += det_vals[j] * polar(Real(1), p * th);
    }
    acc = acc * pow_int(rho, p) / Real(static_cast<long>(N));
    out.push_back(acc.re);
  }
  return out;
}

}  // namespace pgue
