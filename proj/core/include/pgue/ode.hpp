#pragma once

#include <array>
#include <functional>
#include <vector>

#include "pgue/complexr.hpp"
#include "pgue/real.hpp"

namespace pgue {

// Dormand-Prince 5(4) with adaptive steps. Scalar type T is Real or Cx;
// the independent variable is always Real. Dense output per accepted step is
// a quintic Hermite through (y, f) at both endpoints and the midpoint, the
// midpoint being taken from the standard 4th-order continuous extension.

namespace ode_detail {

inline Real scalar_abs(const Real& v) { return abs(v); }
inline Real scalar_abs(const Cx& v) { return abs(v); }

template <class T>
struct Tableau {
  // exact rational coefficients
  static Real frac(long long p, long long q) { return Real(p) / Real(q); }
};

}  // namespace ode_detail

template <class T>
struct DenseStep {
  Real t0, h;
  std::vector<T> y0, f0, ym, fm, y1, f1;

  // quintic Hermite in the local variable; derivatives up to order 2
  void eval(const Real& t, std::vector<T>& out, int deriv = 0) const {
    const std::size_t n = y0.size();
    out.assign(n, T(0));
    // nodes with multiplicity two each: t0, t0, tm, tm, t1, t1
    Real tm = t0 + h / 2;
    Real t1e = t0 + h;
    std::array<Real, 6> z{t0, t0, tm, tm, t1e, t1e};
    for (std::size_t c = 0; c < n; ++c) {
      // Newton divided differences with repeated nodes
      std::array<T, 6> fd{y0[c], y0[c], ym[c], ym[c], y1[c], y1[c]};
      std::array<T, 6> d1{f0[c], f0[c], fm[c], fm[c], f1[c], f1[c]};
      std::array<T, 6> dd;
      // first column
      dd = fd;
      std::array<T, 6> cur = dd;
      std::array<T, 6> coef;
      coef[0] = cur[0];
      for (int order = 1; order < 6; ++order) {
        std::array<T, 6> nxt{};
        for (int i = 0; i + order < 6; ++i) {
          if (z[i + order] == z[i]) {
            nxt[i] = d1[i];  // repeated node: derivative value (order 1 only)
          } else {
            nxt[i] = (cur[i + 1] - cur[i]) * Real(1 / (z[i + order] - z[i]));
          }
        }
        cur = nxt;
        coef[order] = cur[0];
      }
      // evaluate Newton form with derivatives via product-rule recurrences
      T p = coef[5];
      T dp = T(0);
      T d2p = T(0);
      for (int k = 4; k >= 0; --k) {
        Real dt = t - z[k];
        d2p = d2p * dt + dp * Real(2);
        dp = dp * dt + p;
        p = p * dt + coef[k];
      }
      out[c] = (deriv == 0) ? p : (deriv == 1 ? dp : d2p);
    }
  }
};

template <class T>
struct OdeOptions {
  Real rtol = Real(1) / 1000000000;  // 1e-9 default; callers override
  Real atol_scale = Real(0);         // absolute floor = atol_scale * sup|y|
  std::size_t max_steps = 2000000;
  bool store_dense = true;
  // returns false to veto an accepted step (e.g. invariant drift)
  std::function<bool(const Real&, const std::vector<T>&)> monitor;
};

template <class T>
struct OdeResult {
  Real t_end;
  std::vector<T> y_end;
  std::vector<DenseStep<T>> dense;
  std::size_t n_accepted = 0;
  std::size_t n_rejected = 0;

  void eval(const Real& t, std::vector<T>& out, int deriv = 0) const {
    if (dense.empty()) throw integration_error("dense output not stored");
    // steps are monotone in t (either direction); binary search
    bool fwd = dense.front().h > 0;
    std::size_t lo = 0, hi = dense.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      Real tend = dense[mid].t0 + dense[mid].h;
      if ((fwd && tend < t) || (!fwd && tend > t)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    dense[lo].eval(t, out, deriv);
  }
};

template <class T, class RHS>
OdeResult<T> dopri5(RHS&& rhs, const Real& t0, const std::vector<T>& y0, const Real& t1,
                    const OdeOptions<T>& opt) {
  using ode_detail::scalar_abs;
  auto fr = [](long long p, long long q) { return Real(p) / Real(q); };

  const Real c2 = fr(1, 5), c3 = fr(3, 10), c4 = fr(4, 5), c5 = fr(8, 9);
  const Real a21 = fr(1, 5);
  const Real a31 = fr(3, 40), a32 = fr(9, 40);
  const Real a41 = fr(44, 45), a42 = fr(-56, 15), a43 = fr(32, 9);
  const Real a51 = fr(19372, 6561), a52 = fr(-25360, 2187), a53 = fr(64448, 6561),
             a54 = fr(-212, 729);
  const Real a61 = fr(9017, 3168), a62 = fr(-355, 33), a63 = fr(46732, 5247), a64 = fr(49, 176),
             a65 = fr(-5103, 18656);
  const Real b1 = fr(35, 384), b3 = fr(500, 1113), b4 = fr(125, 192), b5 = fr(-2187, 6784),
             b6 = fr(11, 84);
  const Real e1 = fr(71, 57600), e3 = fr(-71, 16695), e4 = fr(71, 1920), e5 = fr(-17253, 339200),
             e6 = fr(22, 525), e7 = fr(-1, 40);
  // 4th-order continuous extension coefficients
  const Real d1 = fr(-12715105075LL, 11282082432LL), d3 = fr(87487479700LL, 32700410799LL),
             d4 = fr(-10690763975LL, 1880347072LL), d5 = fr(701980252875LL, 199316789632LL),
             d6 = fr(-1453857185LL, 822651844LL), d7 = fr(69997945LL, 29380423LL);

  const std::size_t n = y0.size();
  OdeResult<T> res;
  res.dense.reserve(256);

  std::vector<T> y = y0;
  std::vector<T> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);

  Real t = t0;
  Real dir = (t1 >= t0) ? Real(1) : Real(-1);
  rhs(t, y, k1);

  // initial step from the derivative scale
  Real ymax(0), fmax(0);
  for (std::size_t i = 0; i < n; ++i) {
    ymax = std::max(ymax, scalar_abs(y[i]));
    fmax = std::max(fmax, scalar_abs(k1[i]));
  }
  Real h = dir * std::min(Real(abs(t1 - t0) / 64), Real((1 + ymax) / (1 + fmax) / 10));
  if (h == 0) h = dir * abs(t1 - t0) / 1024;

  std::size_t steps = 0;
  bool last = false;
  while (!last) {
    if (++steps > opt.max_steps) {
      throw integration_error("dopri5: step budget exhausted near t = " + to_string_full(t));
    }
    if (abs(h) < abs(t) * machine_eps() * 64 + machine_eps()) {
      throw integration_error("dopri5: step underflow (suspected blow-up) at t = " +
                              to_string_full(t));
    }
    if (dir * (t + h - t1) >= 0) {
      h = t1 - t;
      last = true;
    }

    auto stage = [&](std::vector<T>& out, const Real& c, auto&&... terms) {
      (void)c;
      for (std::size_t i = 0; i < n; ++i) {
        T acc = T(0);
        ((acc += terms.first * terms.second[i]), ...);
        out[i] = y[i] + h * acc;
      }
    };
    using P = std::pair<const Real&, const std::vector<T>&>;
    stage(ytmp, c2, P{a21, k1});
    rhs(t + c2 * h, ytmp, k2);
    stage(ytmp, c3, P{a31, k1}, P{a32, k2});
    rhs(t + c3 * h, ytmp, k3);
    stage(ytmp, c4, P{a41, k1}, P{a42, k2}, P{a43, k3});
    rhs(t + c4 * h, ytmp, k4);
    stage(ytmp, c5, P{a51, k1}, P{a52, k2}, P{a53, k3}, P{a54, k4});
    rhs(t + c5 * h, ytmp, k5);
    stage(ytmp, Real(1), P{a61, k1}, P{a62, k2}, P{a63, k3}, P{a64, k4}, P{a65, k5});
    rhs(t + h, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i) {
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    rhs(t + h, ynew, k7);
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }

    // scaled max-norm error
    Real sup(0);
    for (std::size_t i = 0; i < n; ++i) {
      sup = std::max(sup, Real(std::max(scalar_abs(y[i]), scalar_abs(ynew[i]))));
    }
    Real floor_ = (opt.rtol + opt.atol_scale) * sup + machine_eps() * (1 + sup);
    Real enorm(0);
    for (std::size_t i = 0; i < n; ++i) {
      Real sc = floor_ + opt.rtol * std::max(scalar_abs(y[i]), scalar_abs(ynew[i]));
      enorm = std::max(enorm, Real(scalar_abs(err[i]) / sc));
    }

    if (enorm <= 1) {
      bool ok = true;
      if (opt.monitor && !opt.monitor(t + h, ynew)) ok = false;
      if (ok) {
        if (opt.store_dense) {
          DenseStep<T> ds;
          ds.t0 = t;
          ds.h = h;
          ds.y0 = y;
          ds.f0 = k1;
          ds.y1 = ynew;
          ds.f1 = k7;
          // midpoint from the 4th-order continuous extension
          ds.ym.resize(n);
          Real th = fr(1, 2), th1 = fr(1, 2);
          for (std::size_t i = 0; i < n; ++i) {
            T dy = ynew[i] - y[i];
            T bspl = h * k1[i] - dy;
            T r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                        d7 * k7[i]);
            T r4 = dy - h * k7[i] - bspl;
            ds.ym[i] = y[i] + th * (dy + th1 * (bspl + th * (r4 + th1 * r5)));
          }
          ds.fm.resize(n);
          rhs(t + h / 2, ds.ym, ds.fm);
          res.dense.push_back(std::move(ds));
        }
        t += h;
        y.swap(ynew);
        k1.swap(k7);
        ++res.n_accepted;
        Real fac = enorm > 0 ? Real(Real(9) / 10 * pow(enorm, -Real(1) / 5)) : Real(5);
        fac = std::min(Real(5), std::max(Real(1) / 5, fac));
        h *= fac;
        continue;
      }
      // monitor veto: retry with half step
      last = false;
      h /= 2;
      ++res.n_rejected;
      continue;
    }
    last = false;
    ++res.n_rejected;
    Real fac = Real(9) / 10 * pow(enorm, -Real(1) / 5);
    fac = std::min(Real(1), std::max(Real(1) / 10, fac));
    h *= fac;
  }
  res.t_end = t;
  res.y_end = y;
  return res;
}

}  // namespace pgue
