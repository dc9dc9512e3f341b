#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "pgue/real.hpp"
#include "pgue/scaling.hpp"

namespace pgue {

// Gauss-Legendre nodes/weights on [-1, 1], computed at working precision.
struct GaussRule {
  std::vector<Real> x;
  std::vector<Real> w;
};
const GaussRule& gauss_legendre(std::size_t order);

struct GridOptions {
  std::size_t gl_order = 48;
  // max allowed variation of n*V across one panel; controls panel width
  Real kappa = Real(24);
  std::size_t max_panels = 40000;
  bool self_check = true;  // doubling check on mu_0 at build time
};

// Composite panel grid adapted to w(x) = exp(-n V(x)): Gauss-Legendre panels
// on [-X,X] split at lambda, geometrically graded toward the essential zero,
// with a dead zone where the weight is below resolvable size.
struct QuadratureGrid {
  EnsembleSpec spec;
  Real tol;
  Real x_max;
  Real dead_halfwidth;                       // nodes excluded within this of lambda
  std::vector<std::pair<Real, Real>> panels;
  std::vector<Real> nodes;
  std::vector<Real> gl_weights;              // quadrature weights (no w factor)
  std::vector<Real> weights_w;               // gl_weights * w(node)

  std::size_t size() const { return nodes.size(); }

  // integrate f dx (plain measure)
  Real integrate(const std::function<Real(const Real&)>& f) const;
  // integrate f(x) w(x) dx
  Real integrate_w(const std::function<Real(const Real&)>& f) const;
};

QuadratureGrid build_grid(const EnsembleSpec& spec, const Real& tol, GridOptions opts = {});

// Same panel structure with every panel halved; for self-consistency checks.
QuadratureGrid refine_grid(const QuadratureGrid& grid);

}  // namespace pgue
