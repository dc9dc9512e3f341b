#include "pgue/series.hpp"

namespace pgue {

Series series_mul(const Series& a, const Series& b, std::size_t n) {
  Series c(n, Real(0));
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    std::size_t jmax = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < jmax; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Series series_pow(const Series& a, const Real& alpha, std::size_t n) {
  if (a.empty() || a[0] <= 0) throw domain_error("series_pow: need a[0] > 0");
  Series h(n, Real(0));
  h[0] = pow(a[0], alpha);
  for (std::size_t m = 1; m < n; ++m) {
    // m*a0*h_m = sum_{k=1..m} ((alpha+1)k - m) a_k h_{m-k}
    Real acc(0);
    for (std::size_t k = 1; k <= m && k < a.size(); ++k) {
      acc += ((alpha + 1) * Real(static_cast<long>(k)) - Real(static_cast<long>(m))) * a[k] *
             h[m - k];
    }
    h[m] = acc / (Real(static_cast<long>(m)) * a[0]);
  }
  return h;
}

Series series_reciprocal(const Series& a, std::size_t n) {
  if (a.empty() || a[0] == 0) throw domain_error("series_reciprocal: a[0] = 0");
  Series r(n, Real(0));
  r[0] = 1 / a[0];
  for (std::size_t m = 1; m < n; ++m) {
    Real acc(0);
    for (std::size_t k = 1; k <= m && k < a.size(); ++k) acc += a[k] * r[m - k];
    r[m] = -acc / a[0];
  }
  return r;
}

Series series_shift(const Series& a, const Real& x0) {
  // Horner-style synthetic shift, exact through the truncation degree
  std::size_t n = a.size();
  Series b = a;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = n - 1; k > j; --k) b[k - 1] += x0 * b[k];
  }
  return b;
}

Series series_derivative(const Series& a) {
  if (a.size() <= 1) return Series{Real(0)};
  Series d(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = Real(static_cast<long>(k)) * a[k];
  return d;
}

Real series_eval(const Series& a, const Real& x) {
  Real acc(0);
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + a[k];
  return acc;
}

Cx series_eval(const Series& a, const Cx& x) {
  Cx acc;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + Cx(a[k]);
  return acc;
}

}  // namespace pgue
