#include "pgue/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace pgue {

namespace {

GaussRule compute_gauss_legendre(std::size_t g) {
  GaussRule rule;
  rule.x.assign(g, Real(0));
  rule.w.assign(g, Real(0));
  Real PI = pi();
  for (std::size_t i = 0; i < (g + 1) / 2; ++i) {
    // Newton from the Chebyshev-angle seed
    Real x = cos(PI * (Real(static_cast<long>(i)) + Real(3) / 4) /
                 (Real(static_cast<long>(g)) + Real(1) / 2));
    Real p, dp;
    for (int it = 0; it < 60; ++it) {
      // Legendre P_g and derivative by recurrence
      Real p0(1), p1 = x;
      for (std::size_t k = 2; k <= g; ++k) {
        Real k_(static_cast<long>(k));
        Real p2 = ((2 * k_ - 1) * x * p1 - (k_ - 1) * p0) / k_;
        p0 = p1;
        p1 = p2;
      }
      p = p1;
      dp = Real(static_cast<long>(g)) * (x * p1 - p0) / (x * x - 1);
      Real dx = p / dp;
      x -= dx;
      if (abs(dx) < machine_eps() * 8) break;
    }
    Real w = 2 / ((1 - x * x) * dp * dp);
    rule.x[i] = -x;  // ascending order
    rule.w[i] = w;
    rule.x[g - 1 - i] = x;
    rule.w[g - 1 - i] = w;
  }
  if (g % 2 == 1) rule.x[g / 2] = Real(0);
  return rule;
}

std::mutex g_rule_mutex;
std::map<std::pair<std::size_t, unsigned>, GaussRule> g_rules;

}  // namespace

const GaussRule& gauss_legendre(std::size_t order) {
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto key = std::make_pair(order, precision_bits());
  auto it = g_rules.find(key);
  if (it == g_rules.end()) {
    it = g_rules.emplace(key, compute_gauss_legendre(order)).first;
  }
  return it->second;
}

namespace {

// Split [a,b] until n*|V| varies by at most kappa per panel (3-point probe).
void split_panel(const EnsembleSpec& spec, const Real& a, const Real& b, const Real& kappa,
                 int depth, std::vector<std::pair<Real, Real>>& out) {
  Real mid = (a + b) / 2;
  Real va = spec.n * potential_V(spec, a);
  Real vm = spec.n * potential_V(spec, mid);
  Real vb = spec.n * potential_V(spec, b);
  Real var = abs(va - vm) + abs(vm - vb);
  if (depth >= 40 || var <= kappa) {
    out.emplace_back(a, b);
    return;
  }
  split_panel(spec, a, mid, kappa, depth + 1, out);
  split_panel(spec, mid, b, kappa, depth + 1, out);
}

void add_region(const EnsembleSpec& spec, const Real& a, const Real& b, const Real& kappa,
                std::vector<std::pair<Real, Real>>& out) {
  if (b <= a) return;
  split_panel(spec, a, b, kappa, 0, out);
}

}  // namespace

QuadratureGrid build_grid(const EnsembleSpec& spec, const Real& tol, GridOptions opts) {
  if (tol <= 0) throw domain_error("build_grid: tol must be positive");
  QuadratureGrid grid;
  grid.spec = spec;
  grid.tol = tol;

  // Truncation X with 2n X^2 - 2N ln X > ln(1e3/tol) + margin; degrees up to
  // ~2n enter the moment integrals, so solve the bound by fixed point.
  Real L = log(1 / tol) + log(Real(1000)) + 20;
  long Ndeg = 2 * spec.n + 8;
  Real X = sqrt((L + Ndeg) / (2 * spec.n));
  for (int it = 0; it < 50; ++it) {
    Real rhs = sqrt((L + Ndeg * log(std::max(X, Real(2)))) / (2 * spec.n));
    if (rhs <= X) break;
    X = rhs;
  }
  X = std::max(X, Real(2));
  bool pole = !spec.t_is_zero();
  if (pole) X = std::max(X, Real(abs(spec.lambda) + 1));
  grid.x_max = X;

  // Dead zone: |x-lambda| < d_min has w below anything resolvable.
  Real d_min(0);
  if (pole) {
    Real P = (Real(precision_digits10()) + 20) * log(Real(10));
    d_min = pow(spec.n * spec.t.back() / P, Real(1) / (2 * spec.m));
  }
  grid.dead_halfwidth = d_min;

  Real lam = spec.lambda;
  std::vector<std::pair<Real, Real>>& panels = grid.panels;
  if (pole && lam - d_min > -X && lam + d_min < X) {
    Real d0 = Real(1) / 2;
    Real left_edge = std::min(Real(lam - d0), Real(lam - d_min));
    add_region(spec, -X, left_edge, opts.kappa, panels);
    for (Real d = d0; d > d_min; d /= 2) {
      Real lo = lam - std::min(d, d0);
      Real hi = lam - std::max(Real(d / 2), d_min);
      if (hi > lo && lo >= -X) add_region(spec, lo, hi, opts.kappa, panels);
    }
    for (Real d = d0; d > d_min; d /= 2) {
      Real lo = lam + std::max(Real(d / 2), d_min);
      Real hi = lam + std::min(d, d0);
      if (hi > lo && hi <= X) add_region(spec, lo, hi, opts.kappa, panels);
    }
    Real right_edge = std::max(Real(lam + d0), Real(lam + d_min));
    add_region(spec, right_edge, X, opts.kappa, panels);
  } else if (pole) {
    // pole outside the truncated support
    Real cut = std::min(X, Real(lam - d_min));
    add_region(spec, -X, cut, opts.kappa, panels);
    if (lam + d_min < X) add_region(spec, Real(lam + d_min), X, opts.kappa, panels);
  } else {
    // pure Gaussian weight; still split at lambda so no node lands there
    if (lam > -X && lam < X) {
      add_region(spec, -X, lam, opts.kappa, panels);
      add_region(spec, lam, X, opts.kappa, panels);
    } else {
      add_region(spec, -X, X, opts.kappa, panels);
    }
  }
  std::sort(panels.begin(), panels.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });

  if (panels.size() > opts.max_panels) {
    throw resource_error("build_grid: panel budget exceeded; relax tol");
  }

  const GaussRule& rule = gauss_legendre(opts.gl_order);
  grid.nodes.reserve(panels.size() * opts.gl_order);
  grid.gl_weights.reserve(panels.size() * opts.gl_order);
  for (const auto& [a, b] : panels) {
    Real half = (b - a) / 2;
    Real midp = (a + b) / 2;
    for (std::size_t i = 0; i < opts.gl_order; ++i) {
      grid.nodes.push_back(midp + half * rule.x[i]);
      grid.gl_weights.push_back(half * rule.w[i]);
    }
  }
  grid.weights_w.resize(grid.nodes.size());
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    grid.weights_w[i] = grid.gl_weights[i] * weight_w(spec, grid.nodes[i]);
  }

  if (opts.self_check) {
    Real mu0(0);
    for (const auto& v : grid.weights_w) mu0 += v;
    QuadratureGrid fine = refine_grid(grid);
    Real mu0f(0);
    for (const auto& v : fine.weights_w) mu0f += v;
    if (abs(mu0 - mu0f) > tol * abs(mu0f)) {
      throw resource_error("build_grid: self-consistency check failed; tighten kappa");
    }
  }
  return grid;
}

QuadratureGrid refine_grid(const QuadratureGrid& grid) {
  QuadratureGrid fine;
  fine.spec = grid.spec;
  fine.tol = grid.tol;
  fine.x_max = grid.x_max;
  fine.dead_halfwidth = grid.dead_halfwidth;
  fine.panels.reserve(grid.panels.size() * 2);
  for (const auto& [a, b] : grid.panels) {
    Real mid = (a + b) / 2;
    fine.panels.emplace_back(a, mid);
    fine.panels.emplace_back(mid, b);
  }
  std::size_t g = grid.nodes.size() / grid.panels.size();
  const GaussRule& rule = gauss_legendre(g);
  fine.nodes.reserve(fine.panels.size() * g);
  fine.gl_weights.reserve(fine.panels.size() * g);
  for (const auto& [a, b] : fine.panels) {
    Real half = (b - a) / 2;
    Real midp = (a + b) / 2;
    for (std::size_t i = 0; i < g; ++i) {
      fine.nodes.push_back(midp + half * rule.x[i]);
      fine.gl_weights.push_back(half * rule.w[i]);
    }
  }
  fine.weights_w.resize(fine.nodes.size());
  for (std::size_t i = 0; i < fine.nodes.size(); ++i) {
    fine.weights_w[i] = fine.gl_weights[i] * weight_w(fine.spec, fine.nodes[i]);
  }
  return fine;
}

Real QuadratureGrid::integrate(const std::function<Real(const Real&)>& f) const {
  Real acc(0);
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += gl_weights[i] * f(nodes[i]);
  return acc;
}

Real QuadratureGrid::integrate_w(const std::function<Real(const Real&)>& f) const {
  Real acc(0);
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights_w[i] * f(nodes[i]);
  return acc;
}

}  // namespace pgue
