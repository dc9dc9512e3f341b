#include "pgue/airy.hpp"

#include <vector>

namespace pgue {

namespace {

// Maclaurin: Ai = c1 f - c2 g with
//   f = sum 3^k (1/3)_k z^{3k} / (3k)!,  g = sum 3^k (2/3)_k z^{3k+1} / (3k+1)!
AiryValues airy_series(const Cx& z) {
  Real c1 = pow(Real(3), -Real(2) / 3) / tgamma(Real(2) / 3);
  Real c2 = pow(Real(3), -Real(1) / 3) / tgamma(Real(1) / 3);
  if (abs(z) == 0) return AiryValues{Cx(c1), Cx(-c2)};
  Cx z3 = z * z * z;
  // f, f', g, g' accumulated term-wise
  Cx tf(Real(1)), tg = z;
  Cx f = tf, g = tg;
  Cx df, dg(Real(1));
  Real eps = machine_eps();
  for (int k = 1; k < 4000; ++k) {
    long k3 = 3L * k;
    // t_f(k) = t_f(k-1) * z^3 / ((3k-1)(3k)),   term of f' = (3k) t_f(k)/z
    tf = tf * z3 / Real((k3 - 1) * k3);
    tg = tg * z3 / Real(k3 * (k3 + 1));
    f += tf;
    g += tg;
    // derivatives: f' term = 3k * z^{3k-1}/...; reuse via tf/z * 3k
    df += Real(k3) * tf / z;
    dg += Real(k3 + 1) * tg / z;
    if (abs(tf) < eps * abs(f) && abs(tg) < eps * (abs(g) + eps)) break;
  }
  AiryValues out;
  out.ai = c1 * f - c2 * g;
  out.dai = c1 * df - c2 * dg;
  return out;
}

// Poincare expansion for |arg z| <= ~0.8 pi:
//   Ai ~ e^{-xi}/(2 sqrt(pi) z^{1/4}) sum (-1)^k u_k xi^{-k},
//   Ai' ~ -z^{1/4} e^{-xi}/(2 sqrt(pi)) sum (-1)^k v_k xi^{-k}
AiryValues airy_asymptotic(const Cx& z) {
  Cx z12 = sqrt_principal(z);
  Cx z14 = sqrt_principal(z12);
  Cx xi = Real(2) / 3 * z * z12;
  Cx xin = Cx(Real(1)) / xi;
  Real uk(1);
  Cx su(Real(1)), sv(Real(1));
  Cx p(Real(1));
  Real prev = abs(xi);
  Real last_mag(1);
  for (int k = 1; k < 200; ++k) {
    uk *= Real((6 * k - 5)) * Real((6 * k - 3)) * Real((6 * k - 1)) /
          (Real(2 * k - 1) * 216 * Real(k));
    Real vk = uk * Real(6 * k + 1) / Real(1 - 6 * k);
    p = p * (Real(0) - Real(1)) * xin;  // (-1)^k xi^{-k}
    Cx tu = uk * p;
    Cx tv = vk * p;
    Real mag = abs(tu);
    if (k > 2 && mag > last_mag) break;  // divergence onset
    su += tu;
    sv += tv;
    last_mag = mag;
    if (mag < machine_eps()) break;
  }
  (void)prev;
  Cx ex = exp(-xi);
  Real pref = 1 / (2 * sqrt(pi()));
  AiryValues out;
  out.ai = pref * (ex / z14 * su);
  out.dai = -(pref * (z14 * ex * sv));
  return out;
}

}  // namespace

AiryValues airy_ai(const Cx& z) {
  Real r = abs(z);
  if (r <= 12) return airy_series(z);
  Real a = arg(z);
  Real cutoff = 2 * pi() / 3;
  if (abs(a) <= cutoff) return airy_asymptotic(z);
  // connection Ai(z) + omega Ai(omega z) + omega^2 Ai(omega^2 z) = 0; the
  // rotated arguments fall within |arg| <= 2pi/3 where the expansion holds
  Real PI = pi();
  Cx w = polar(Real(1), 2 * PI / 3);
  Cx w2 = polar(Real(1), -2 * PI / 3);
  AiryValues a1 = airy_asymptotic(w * z);
  AiryValues a2 = airy_asymptotic(w2 * z);
  AiryValues out;
  out.ai = -(w * a1.ai + w2 * a2.ai);
  // differentiate the connection: Ai'(z) = -omega^2 Ai'(omega z) - omega Ai'(omega^2 z)
  out.dai = -(w2 * a1.dai + w * a2.dai);
  return out;
}

Real airy_ai_real(const Real& x) { return airy_ai(Cx(x)).ai.re; }
Real airy_ai_prime_real(const Real& x) { return airy_ai(Cx(x)).dai.re; }

Mat2c airy_parametrix(const Cx& zeta) {
  Real a = arg(zeta);
  Real PI = pi();
  Real third = 2 * PI / 3;
  Cx w = polar(Real(1), third);    // omega
  Cx w2 = polar(Real(1), -third);  // omega^2 (= conj(omega))

  // M_Ai = sqrt(2 pi) e^{i pi/6} diag(1, -i)
  Cx mfac = polar(sqrt(2 * PI), PI / 6);
  Mat2c M(mfac, Cx(), Cx(), mfac * Cx(Real(0), Real(-1)));
  Cx e6p = polar(Real(1), -PI / 6);  // e^{-i pi/6}
  Cx e6m = polar(Real(1), PI / 6);

  AiryValues az = airy_ai(zeta);
  Mat2c body;
  Mat2c post = Mat2c::identity();
  if (a >= 0 && a < third) {
    AiryValues aw2 = airy_ai(w2 * zeta);
    body = Mat2c(az.ai, aw2.ai, az.dai, w2 * aw2.dai);
  } else if (a >= third && a <= PI) {
    AiryValues aw2 = airy_ai(w2 * zeta);
    body = Mat2c(az.ai, aw2.ai, az.dai, w2 * aw2.dai);
    post = Mat2c(Cx(Real(1)), Cx(), Cx(Real(-1)), Cx(Real(1)));
  } else if (a < 0 && a >= -third) {
    AiryValues aw = airy_ai(w * zeta);
    body = Mat2c(az.ai, -(w2 * aw.ai), az.dai, -aw.dai);
  } else {
    AiryValues aw = airy_ai(w * zeta);
    body = Mat2c(az.ai, -(w2 * aw.ai), az.dai, -aw.dai);
    post = Mat2c(Cx(Real(1)), Cx(), Cx(Real(1)), Cx(Real(1)));
  }
  // e^{-i pi/6 sigma3}
  Mat2c phase(e6p, Cx(), Cx(), e6m);
  return M * body * phase * post;
}

Real airy_kernel(const Real& x, const Real& y) {
  Real ax = airy_ai_real(x), dax = airy_ai_prime_real(x);
  if (x == y) return dax * dax - x * ax * ax;
  Real ay = airy_ai_real(y), day = airy_ai_prime_real(y);
  return (ax * day - dax * ay) / (x - y);
}

}  // namespace pgue
