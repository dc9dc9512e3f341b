#pragma once

#include "pgue/mat2.hpp"

namespace pgue {

// Ai and Ai' on the complex plane: Maclaurin series for |z| <= 12, Poincare
// asymptotics beyond (with the rotation connection formula near the negative
// axis). Accuracy is limited by the working precision for the series and by
// optimal truncation (well below 1e-20 at |z| >= 12) for the asymptotics.
struct AiryValues {
  Cx ai, dai;
};

AiryValues airy_ai(const Cx& z);
Real airy_ai_real(const Real& x);
Real airy_ai_prime_real(const Real& x);

// Piecewise 2x2 Airy model function with jump (1,1;0,1) on the positive axis,
// (0,1;-1,0) on the negative axis and (1,0;1,1) on the rays arg = +-2pi/3.
// Points on a ray are treated as the sector counterclockwise of it.
Mat2c airy_parametrix(const Cx& zeta);

// (Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x - y), confluent diagonal Ai'(x)^2 - x Ai(x)^2.
Real airy_kernel(const Real& x, const Real& y);

}  // namespace pgue
