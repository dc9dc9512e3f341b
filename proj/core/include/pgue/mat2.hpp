#pragma once

#include "pgue/complexr.hpp"

namespace pgue {

// 2x2 matrices, value semantics. T is Real or Cx.
template <class T>
struct Mat2T {
  T a11, a12, a21, a22;

  Mat2T() : a11(0), a12(0), a21(0), a22(0) {}
  Mat2T(T m11, T m12, T m21, T m22)
      : a11(std::move(m11)), a12(std::move(m12)), a21(std::move(m21)), a22(std::move(m22)) {}

  static Mat2T identity() { return Mat2T(T(1), T(0), T(0), T(1)); }

  T det() const { return a11 * a22 - a12 * a21; }
  T trace() const { return a11 + a22; }

  Mat2T inverse() const {
    T d = det();
    return Mat2T(a22 / d, T(0) - a12 / d, T(0) - a21 / d, a11 / d);
  }
};

template <class T>
Mat2T<T> operator*(const Mat2T<T>& x, const Mat2T<T>& y) {
  return Mat2T<T>(x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
                  x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22);
}

template <class T>
Mat2T<T> operator+(const Mat2T<T>& x, const Mat2T<T>& y) {
  return Mat2T<T>(x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22);
}

template <class T>
Mat2T<T> operator-(const Mat2T<T>& x, const Mat2T<T>& y) {
  return Mat2T<T>(x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22);
}

using Mat2 = Mat2T<Real>;
using Mat2c = Mat2T<Cx>;

inline Real max_abs(const Mat2& m) {
  Real r = abs(m.a11);
  r = std::max(r, Real(abs(m.a12)));
  r = std::max(r, Real(abs(m.a21)));
  r = std::max(r, Real(abs(m.a22)));
  return r;
}

inline Real max_abs(const Mat2c& m) {
  Real r = abs(m.a11);
  r = std::max(r, abs(m.a12));
  r = std::max(r, abs(m.a21));
  r = std::max(r, abs(m.a22));
  return r;
}

}  // namespace pgue
