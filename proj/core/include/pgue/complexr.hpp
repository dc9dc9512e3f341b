#pragma once

#include "pgue/real.hpp"

namespace pgue {

// Minimal complex type over Real. std::complex is not specified for
// multiprecision scalars, so the handful of operations we need live here.
struct Cx {
  Real re, im;

  Cx() : re(0), im(0) {}
  Cx(const Real& r) : re(r), im(0) {}
  Cx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Cx(long r) : re(r), im(0) {}

  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cx& operator-=(const Cx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cx& operator*=(const Cx& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
};

inline Cx operator+(Cx a, const Cx& b) { return a += b; }
inline Cx operator-(Cx a, const Cx& b) { return a -= b; }
inline Cx operator*(Cx a, const Cx& b) { return a *= b; }
inline Cx operator-(const Cx& a) { return Cx(-a.re, -a.im); }

inline Cx operator*(const Real& s, Cx a) {
  a.re *= s;
  a.im *= s;
  return a;
}
inline Cx operator*(Cx a, const Real& s) { return s * a; }

inline Cx operator/(const Cx& a, const Cx& b) {
  Real d = b.re * b.re + b.im * b.im;
  return Cx((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}
inline Cx operator/(Cx a, const Real& s) {
  a.re /= s;
  a.im /= s;
  return a;
}

inline Cx conj(const Cx& a) { return Cx(a.re, -a.im); }
inline Real abs(const Cx& a) { return hypot(a.re, a.im); }
inline Real arg(const Cx& a) { return atan2(a.im, a.re); }

inline Cx exp(const Cx& a) {
  Real m = exp(a.re);
  return Cx(m * cos(a.im), m * sin(a.im));
}

inline Cx polar(const Real& r, const Real& th) {
  return Cx(r * cos(th), r * sin(th));
}

// principal power z^a for z off (-inf, 0]; for z on the negative real axis
// the boundary value from above (arg = +pi) is taken
inline Cx pow_principal(const Cx& z, const Real& a) {
  Real r = abs(z);
  Real th = arg(z);
  return polar(pow(r, a), a * th);
}

inline Cx sqrt_principal(const Cx& z) { return pow_principal(z, Real(1) / 2); }

inline Cx log_principal(const Cx& z) { return Cx(log(abs(z)), arg(z)); }

inline Cx i_times(const Cx& a) { return Cx(-a.im, a.re); }

}  // namespace pgue
