#include "pgue/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

namespace pgue {

namespace {

using Clock = std::chrono::steady_clock;

long elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string tau_label(const std::vector<Real>& tau) {
  std::ostringstream os;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (i) os << ";";
    os << to_string_full(tau[i]);
  }
  return os.str();
}

std::map<std::string, std::string> base_labels(const ExperimentConfig& cfg) {
  return {{"experiment", cfg.experiment},
          {"m", std::to_string(cfg.m)},
          {"s", to_string_full(cfg.s)},
          {"tau", tau_label(cfg.tau)},
          {"precision_bits", std::to_string(cfg.precision_bits)},
          {"rtol", to_string_full(cfg.rtol)}};
}

// run fn(i) for i in [0, count) on a small worker pool, preserving order
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned precision) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = std::min<std::size_t>(std::max(1u, hw), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t wid = 0; wid < workers; ++wid) {
    pool.emplace_back([&, wid] {
      set_precision_bits(precision);
      try {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= count) break;
          fn(i);
        }
      } catch (...) {
        errors[wid] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Real fd_step() { return ldexp(Real(1), -static_cast<int>(precision_bits()) / 3); }

P34State zero_state(int m, const Real& s) {
  P34State st;
  st.m = m;
  st.s = s;
  st.u.assign(2 * m + 1, Real(0));
  st.v.assign(2 * m + 1, Real(0));
  st.w.assign(2 * m + 1, Real(0));
  return st;
}

}  // namespace

Real default_grid_tol() {
  long digits = static_cast<long>(precision_digits10());
  long e = std::min<long>(30, digits * 45 / 100);
  return pow(Real(10), Real(-e));
}

PainleveTrajectory trajectory_for(const ExperimentConfig& cfg, const Real& s_low,
                                  const Real& s_high) {
  TauVector tau = cfg.tau_vector();
  P34Options po;
  po.rtol = cfg.rtol;
  Real s0 = std::max(cfg.s0, Real(s_high + 5));
  return integrate_p34(tau, s0, s_low, po);
}

LaxCoefficients lax_at(const TauVector& tau, const PainleveTrajectory* traj, const Real& s) {
  if (tau.is_zero() || traj == nullptr) {
    return LaxCoefficients::from_state(zero_state(tau.m, s));
  }
  return LaxCoefficients::from_state(traj->state_at(s));
}

CmdResult cmd_kernel_limit(const ExperimentConfig& cfg) {
  CmdResult out;
  TauVector tau = cfg.tau_vector();
  EdgeMap f;
  Real tol = default_grid_tol();

  std::unique_ptr<PainleveTrajectory> traj;
  if (!tau.is_zero()) {
    auto tr = trajectory_for(cfg, Real(cfg.s - 2), cfg.s);
    traj = std::make_unique<PainleveTrajectory>(std::move(tr));
  }
  LaxCoefficients coeffs = lax_at(tau, traj.get(), cfg.s);

  // limit side once per grid point
  PsiOptions po;
  po.R = cfg.R;
  po.rtol = cfg.rtol;
  std::vector<PsiVector> psi(cfg.grid.size());
  parallel_for(
      cfg.grid.size(), [&](std::size_t i) { psi[i] = psi_solve(coeffs, cfg.grid[i], po); },
      cfg.precision_bits);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    for (std::size_t j = i; j < cfg.grid.size(); ++j) pairs.emplace_back(i, j);
  }
  std::vector<Real> limitK(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    limitK[p] = kernel_K_psi(psi[pairs[p].first], psi[pairs[p].second]);
  }

  std::vector<std::vector<ReportRow>> rows_per_n(cfg.n_list.size());
  std::vector<Real> e_n(cfg.n_list.size(), Real(0));
  parallel_for(
      cfg.n_list.size(),
      [&](std::size_t ni) {
        auto t0 = Clock::now();
        int n = cfg.n_list[ni];
        Real n23 = pow(Real(n), Real(2) / 3);
        Real lambda = lambda_of_s(n, cfg.s);
        EnsembleSpec spec = spec_from_tau(f, n, lambda, tau);
        RecurrenceTable table = build_table(spec, static_cast<std::size_t>(n), tol);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          const Real& u = cfg.grid[pairs[p].first];
          const Real& v = cfg.grid[pairs[p].second];
          Real xs = lambda + u / (2 * n23);
          Real ys = lambda + v / (2 * n23);
          Real finite = cd_kernel(table, static_cast<std::size_t>(n), xs, ys) / (2 * n23);
          auto labels = base_labels(cfg);
          labels["n"] = std::to_string(n);
          labels["u"] = to_string_full(u);
          labels["v"] = to_string_full(v);
          ReportRow row = ReportRow::make(labels, finite, limitK[p]);
          row.meta["wall_ms"] = std::to_string(elapsed_ms(t0));
          e_n[ni] = std::max(e_n[ni], row.abs_error);
          rows_per_n[ni].push_back(std::move(row));
        }
        auto labels = base_labels(cfg);
        labels["n"] = std::to_string(n);
        labels["u"] = "max";
        labels["v"] = "max";
        ReportRow summary = ReportRow::make(labels, e_n[ni], Real(0));
        summary.meta["wall_ms"] = std::to_string(elapsed_ms(t0));
        rows_per_n[ni].push_back(std::move(summary));
      },
      cfg.precision_bits);

  for (auto& rs : rows_per_n) {
    for (auto& r : rs) out.rows.push_back(std::move(r));
  }
  for (std::size_t ni = 0; ni + 1 < cfg.n_list.size(); ++ni) {
    if (!(e_n[ni + 1] < e_n[ni])) {
      out.violations.push_back("kernel error not strictly decreasing: e_" +
                               std::to_string(cfg.n_list[ni + 1]) + " >= e_" +
                               std::to_string(cfg.n_list[ni]));
    }
  }
  if (cfg.n_list.size() >= 2) {
    Real ratio = e_n.back() / e_n.front();
    Real bound = Real(3) / 2 *
                 pow(Real(cfg.n_list.back()) / Real(cfg.n_list.front()), -Real(1) / 3);
    if (!(ratio <= bound)) {
      out.violations.push_back("kernel error ratio " + to_string_full(ratio) +
                               " exceeds rate bound " + to_string_full(bound));
    }
  }
  return out;
}

CmdResult cmd_partition_limit(const ExperimentConfig& cfg) {
  CmdResult out;
  TauVector tau = cfg.tau_vector();
  EdgeMap f;
  Real tol = default_grid_tol();

  Real integral(0);
  Real tau1 = tau.is_zero() ? Real(0) : tau.tau[0];
  std::unique_ptr<PainleveTrajectory> traj;
  if (!tau.is_zero()) {
    auto tr = trajectory_for(cfg, Real(cfg.s - 1), cfg.s);
    traj = std::make_unique<PainleveTrajectory>(std::move(tr));
    integral = partition_integral(*traj, cfg.s);
  }

  std::vector<ReportRow> rows(cfg.n_list.size());
  std::vector<Real> r_n(cfg.n_list.size(), Real(0));
  parallel_for(
      cfg.n_list.size(),
      [&](std::size_t ni) {
        auto t0 = Clock::now();
        int n = cfg.n_list[ni];
        Real lambda = lambda_of_s(n, cfg.s);
        EnsembleSpec spec = spec_from_tau(f, n, lambda, tau);
        RecurrenceTable table = build_table(spec, static_cast<std::size_t>(n), tol);
        Real lnz = partition_log_zn(table, static_cast<std::size_t>(n));
        Real finite = lnz - log_zn_gue(n);
        Real limit = 2 * pow(Real(n), Real(1) / 3) * tau1 - integral;
        auto labels = base_labels(cfg);
        labels["n"] = std::to_string(n);
        ReportRow row = ReportRow::make(labels, finite, limit);
        row.meta["wall_ms"] = std::to_string(elapsed_ms(t0));
        r_n[ni] = row.abs_error;
        rows[ni] = std::move(row);
      },
      cfg.precision_bits);
  out.rows = std::move(rows);
  for (std::size_t ni = 0; ni + 1 < cfg.n_list.size(); ++ni) {
    if (!(r_n[ni + 1] < r_n[ni])) {
      out.violations.push_back("partition remainder not strictly decreasing at n = " +
                               std::to_string(cfg.n_list[ni + 1]));
    }
  }
  return out;
}

CmdResult cmd_identities(const ExperimentConfig& cfg) {
  CmdResult out;
  for (int n : cfg.n_list) {
    if (n > 8) throw config_error("identities: n must be <= 8 (finite-difference runs)");
  }
  std::vector<Real> t = cfg.t;
  if (t.empty()) {
    t.assign(2 * cfg.m, Real(0));
    t[0] = Real(1) / 100;
    t[1] = Real(1) / 1000;
  }
  std::vector<Real> lambdas = cfg.grid;
  if (lambdas.empty()) lambdas.push_back(Real(3) / 2);
  Real tol = default_grid_tol();
  Real h = fd_step();

  for (int n : cfg.n_list) {
    for (const Real& lam : lambdas) {
      auto t0 = Clock::now();
      auto lnz_at = [&](const Real& l) {
        EnsembleSpec sp(n, cfg.m, l, t);
        RecurrenceTable tb = build_table(sp, static_cast<std::size_t>(n), tol);
        return partition_log_zn(tb, static_cast<std::size_t>(n));
      };
      Real zm2 = lnz_at(lam - 2 * h), zm1 = lnz_at(lam - h), z0 = lnz_at(lam),
           zp1 = lnz_at(lam + h), zp2 = lnz_at(lam + 2 * h);
      Real fd1 = (zp1 - zm1) / (2 * h);
      Real fd2 = (-zp2 + 16 * zp1 - 30 * z0 + 16 * zm1 - zm2) / (12 * h * h);

      EnsembleSpec spec(n, cfg.m, lam, t);
      RecurrenceTable table = build_table(spec, static_cast<std::size_t>(n), tol);
      Real direct1 = dlogZ_dlambda(table, static_cast<std::size_t>(n));
      YEdgeData ye = y_edge(spec, table, static_cast<std::size_t>(n));
      Real direct2 = 4 * Real(n) * Real(n) * (lam * lam - 1) + ye.det_dH_Hinv();

      auto labels = base_labels(cfg);
      labels["n"] = std::to_string(n);
      labels["u"] = to_string_full(lam);  // lambda recorded in the u column
      labels["v"] = "first";
      ReportRow r1 = ReportRow::make(labels, fd1, direct1);
      r1.meta["wall_ms"] = std::to_string(elapsed_ms(t0));
      Real rel1 = r1.abs_error / std::max(Real(abs(direct1)), Real(1) / 1000000);
      labels["v"] = "second";
      ReportRow r2 = ReportRow::make(labels, fd2, direct2);
      r2.meta["wall_ms"] = std::to_string(elapsed_ms(t0));
      Real rel2 = r2.abs_error / std::max(Real(abs(direct2)), Real(1) / 1000000);
      out.rows.push_back(std::move(r1));
      out.rows.push_back(std::move(r2));

      if (!(rel1 < Real(1) / 100000000)) {
        out.violations.push_back("first identity relative error " + to_string_full(rel1));
      }
      if (!(rel2 < Real(1) / 1000000)) {
        out.violations.push_back("second identity relative error " + to_string_full(rel2));
      }
    }
  }
  return out;
}

CmdResult cmd_outer_partition(const ExperimentConfig& cfg) {
  CmdResult out;
  TauVector tau = cfg.tau_vector();
  EdgeMap f;
  Real tol = default_grid_tol();

  std::vector<ReportRow> rows(cfg.n_list.size());
  std::vector<Real> err(cfg.n_list.size(), Real(0)), ratio(cfg.n_list.size(), Real(0));
  parallel_for(
      cfg.n_list.size(),
      [&](std::size_t ni) {
        auto t0 = Clock::now();
        int n = cfg.n_list[ni];
        Real lambda = 1 + pow(Real(n), -cfg.outer_exponent);
        EnsembleSpec spec = spec_from_tau(f, n, lambda, tau);
        RecurrenceTable table = build_table(spec, static_cast<std::size_t>(n), tol);
        Real lnz = partition_log_zn(table, static_cast<std::size_t>(n));
        Real finite = lnz - log_zn_gue(n);
        Real t1 = spec.t[0];
        Real limit = 2 * Real(n) * Real(n) * t1 / (lambda + sqrt(lambda * lambda - 1));
        auto labels = base_labels(cfg);
        labels["n"] = std::to_string(n);
        ReportRow row = ReportRow::make(labels, finite, limit);
        err[ni] = row.abs_error;
        ratio[ni] = err[ni] / (pow(Real(n), -Real(1) / 3) / sqrt(lambda - 1));
        row.meta["bound_ratio"] = to_string_full(ratio[ni]);
        row.meta["wall_ms"] = std::to_string(elapsed_ms(t0));
        rows[ni] = std::move(row);
      },
      cfg.precision_bits);
  out.rows = std::move(rows);
  for (std::size_t ni = 0; ni + 1 < cfg.n_list.size(); ++ni) {
    if (!(err[ni + 1] < err[ni])) {
      out.violations.push_back("outer error not decreasing at n = " +
                               std::to_string(cfg.n_list[ni + 1]));
    }
  }
  for (std::size_t ni = 1; ni < cfg.n_list.size(); ++ni) {
    if (!(ratio[ni] <= Real(3) / 2 * ratio[0])) {
      out.violations.push_back("outer bound-shape ratio grows at n = " +
                               std::to_string(cfg.n_list[ni]));
    }
  }
  return out;
}

CmdResult cmd_b1_crosscheck(const ExperimentConfig& cfg) {
  CmdResult out;
  TauVector tau = cfg.tau_vector();
  EdgeMap f;
  Real tol = default_grid_tol();
  std::vector<Real> svals = cfg.grid;
  if (svals.empty()) svals = {Real(0), Real(2), Real(4)};

  Real lo = svals[0], hi = svals[0];
  for (const Real& s : svals) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  std::unique_ptr<PainleveTrajectory> traj;
  if (!tau.is_zero()) {
    auto tr = trajectory_for(cfg, Real(lo - 2), hi);
    traj = std::make_unique<PainleveTrajectory>(std::move(tr));
  }

  struct Item {
    int n;
    Real s;
  };
  std::vector<Item> items;
  for (int n : cfg.n_list) {
    for (const Real& s : svals) items.push_back({n, s});
  }
  std::vector<ReportRow> rows(items.size());
  parallel_for(
      items.size(),
      [&](std::size_t i) {
        auto t0 = Clock::now();
        int n = items[i].n;
        const Real& s = items[i].s;
        Real lambda = lambda_of_s(n, s);
        B1Estimate est = b1_oracle(f, n, lambda, tau, tol);
        Real ref = (traj != nullptr) ? traj->b1(est.s) : Real(0);
        auto labels = base_labels(cfg);
        labels["n"] = std::to_string(n);
        labels["s"] = to_string_full(s);
        ReportRow row = ReportRow::make(labels, est.value, ref);
        row.meta["sigma"] = to_string_full(est.s);
        row.meta["wall_ms"] = std::to_string(elapsed_ms(t0));
        rows[i] = std::move(row);
      },
      cfg.precision_bits);
  out.rows = std::move(rows);

  // per-s monotone shrink when n doubles
  for (std::size_t si = 0; si < svals.size(); ++si) {
    for (std::size_t ni = 0; ni + 1 < cfg.n_list.size(); ++ni) {
      const ReportRow& a = out.rows[ni * svals.size() + si];
      const ReportRow& b = out.rows[(ni + 1) * svals.size() + si];
      if (!(b.abs_error < a.abs_error)) {
        out.violations.push_back("b1 mismatch not shrinking at n = " +
                                 std::to_string(cfg.n_list[ni + 1]) + ", s = " +
                                 to_string_full(svals[si]));
      }
    }
  }
  return out;
}

std::string cmd_painleve_solve_csv(const ExperimentConfig& cfg) {
  TauVector tau = cfg.tau_vector();
  P34Options po;
  po.rtol = cfg.rtol;
  PainleveTrajectory traj = integrate_p34(tau, cfg.s0, cfg.s_min, po);
  std::ostringstream os;
  os << "s";
  for (int k = 1; k <= 2 * cfg.m + 1; ++k) os << ",b" << k;
  os << ",a1,integral_drift\n";
  os.precision(precision_digits10() + 4);
  for (Real s = traj.s0; s >= traj.s_min; s -= cfg.step) {
    P34State st = traj.state_at(s);
    std::vector<Real> F = first_integrals(st, traj.ttilde);
    Real drift(0);
    for (std::size_t i = 0; i < F.size(); ++i) {
      Real scale = std::max(Real(1), Real(abs(traj.ttilde.values[i])));
      drift = std::max(drift, Real(abs(F[i]) / scale));
    }
    os << s;
    for (const Real& b : st.u) os << "," << b;
    os << "," << traj.a1(s) << "," << drift << "\n";
  }
  return os.str();
}

std::string cmd_recurrence_csv(const ExperimentConfig& cfg) {
  int n = cfg.n_list.empty() ? 16 : cfg.n_list[0];
  EnsembleSpec spec(1, 1, Real(0), std::vector<Real>{Real(0), Real(0)});
  if (!cfg.t.empty()) {
    spec = EnsembleSpec(n, cfg.m, cfg.lambda, cfg.t);
  } else {
    EdgeMap f;
    TauVector tau = cfg.tau_vector();
    Real lambda = lambda_of_s(n, cfg.s);
    spec = spec_from_tau(f, n, lambda, tau);
  }
  RecurrenceTable table = build_table(spec, static_cast<std::size_t>(n), default_grid_tol());
  std::ostringstream os;
  os << "k,alpha,beta,gamma,p1\n";
  os.precision(precision_digits10() + 4);
  for (std::size_t k = 0; k < table.N; ++k) {
    os << k << "," << table.alpha[k] << "," << (k == 0 ? Real(0) : table.beta[k]) << ","
       << (1 / sqrt(table.h[k])) << "," << table.p1[k] << "\n";
  }
  return os.str();
}

CmdResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "kernel-limit") return cmd_kernel_limit(cfg);
  if (cfg.experiment == "partition-limit") return cmd_partition_limit(cfg);
  if (cfg.experiment == "identities") return cmd_identities(cfg);
  if (cfg.experiment == "outer-partition") return cmd_outer_partition(cfg);
  if (cfg.experiment == "b1-crosscheck") return cmd_b1_crosscheck(cfg);
  throw config_error("unknown experiment: " + cfg.experiment);
}

}  // namespace pgue
