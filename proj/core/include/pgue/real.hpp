#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <stdexcept>
#include <string>

namespace pgue {

// Arbitrary-precision real scalar. Precision is a process-wide setting
// (see set_precision_bits); every value created after the call carries it.
using Real = boost::multiprecision::mpfr_float;

// Set the working precision in bits (default 256). Must be called before
// any Real is constructed by the caller; values created earlier keep their
// original precision.
void set_precision_bits(unsigned bits);
unsigned precision_bits();
unsigned precision_digits10();

Real pi();
Real machine_eps();   // 2^(1-bits) for the current precision

Real pow_int(const Real& x, long k);
Real from_string(const std::string& s);
std::string to_string_full(const Real& x);

// Error taxonomy used across the library. All derive from std::runtime_error
// so callers can catch coarsely; the CLI maps them to exit codes.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct domain_error : numeric_error {
  using numeric_error::numeric_error;
};
struct precision_error : numeric_error {
  using numeric_error::numeric_error;
};
struct resource_error : numeric_error {
  using numeric_error::numeric_error;
};
struct accuracy_error : numeric_error {
  using numeric_error::numeric_error;
};
struct consistency_error : numeric_error {
  using numeric_error::numeric_error;
};
struct integration_error : numeric_error {
  using numeric_error::numeric_error;
};
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pgue
