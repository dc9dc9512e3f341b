#pragma once

#include <vector>

#include "pgue/complexr.hpp"
#include "pgue/real.hpp"

namespace pgue {

// Truncated power series sum_k c[k] x^k with Real coefficients.
using Series = std::vector<Real>;

Series series_mul(const Series& a, const Series& b, std::size_t n);

// a^alpha for a[0] > 0, via the standard logarithmic-derivative recurrence.
Series series_pow(const Series& a, const Real& alpha, std::size_t n);

Series series_reciprocal(const Series& a, std::size_t n);

// Re-expansion around x0: returns coefficients of f(x0 + u) in powers of u.
Series series_shift(const Series& a, const Real& x0);

Series series_derivative(const Series& a);

Real series_eval(const Series& a, const Real& x);
Cx series_eval(const Series& a, const Cx& x);

}  // namespace pgue
