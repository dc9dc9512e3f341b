#include "pgue/real.hpp"

#include <cmath>
#include <sstream>

namespace pgue {

namespace {
unsigned g_bits = 256;
}

void set_precision_bits(unsigned bits) {
  if (bits < 24 || bits > 65536) {
    throw config_error("precision_bits out of range [24, 65536]");
  }
  g_bits = bits;
  // digits10 such that the mpfr mantissa holds at least `bits` bits
  unsigned digits = static_cast<unsigned>(std::ceil(bits * 0.3010299957)) + 1;
  Real::default_precision(digits);
}

unsigned precision_bits() { return g_bits; }

unsigned precision_digits10() { return Real::default_precision(); }

Real pi() {
  Real p(0);
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

Real machine_eps() {
  Real one(1);
  return ldexp(one, 1 - static_cast<long>(g_bits));
}

Real pow_int(const Real& x, long k) {
  if (k == 0) return Real(1);
  Real base = k > 0 ? x : 1 / x;
  unsigned long e = static_cast<unsigned long>(k > 0 ? k : -k);
  Real acc(1);
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Real from_string(const std::string& s) { return Real(s); }

std::string to_string_full(const Real& x) {
  std::ostringstream os;
  os.precision(precision_digits10() + 4);
  os << x;
  return os.str();
}

}  // namespace pgue
