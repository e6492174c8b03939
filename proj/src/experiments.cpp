#include "isac/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "isac/capacity.hpp"
#include "isac/detection.hpp"
#include "isac/optimizer.hpp"

namespace isac {

namespace {

std::vector<int> resolve_nt_list(const SystemConfig& config,
                                 const ExperimentOptions& opts) {
  if (!opts.nt_list.empty()) return opts.nt_list;
  return {config.n_tx};
}

std::string nt_suffix(int nt) { return "_nt" + std::to_string(nt); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  auto v = linspace(std::log(lo), std::log(hi), n);
  for (double& x : v) x = std::exp(x);
  return v;
}

// threshold range that covers both the null quantiles and the H1 bulk
std::pair<double, double> tau_range(const SystemConfig& config,
                                    EigScaling scaling) {
  const auto derived = derive(config);
  const double sig2 = config.sigma_s2_mw();
  double hi = sig2;
  while (cdf_h0(hi, config, scaling) < 1.0 - 1e-6) hi *= 2.0;
  if (derived.a > 0.0) {
    double h1_tail = derived.b * (config.samples + derived.omega_trace) * 4.0;
    if (scaling == EigScaling::sample_mean) h1_tail /= config.samples;
    hi = std::max(hi, h1_tail);
  }
  return {sig2 * 0.02, hi};
}

}  // namespace

SystemConfig config_for_nt(const SystemConfig& base, int nt) {
  SystemConfig cfg = base;
  cfg.n_tx = nt;
  cfg.gain_t = base.gain_t * static_cast<double>(nt) / base.n_tx;
  cfg.validate();
  return cfg;
}

std::vector<SweepTable> run_roc(const SystemConfig& config,
                                const ExperimentOptions& opts) {
  std::vector<SweepTable> tables;
  for (int nt : resolve_nt_list(config, opts)) {
    const auto cfg = config_for_nt(config, nt);
    const auto derived = derive(cfg);
    auto t = make_table("roc" + nt_suffix(nt), cfg, opts.scaling,
                        {"p_f", "p_d_analytic", "p_d_empirical", "ci_halfwidth"});

    auto batch = run_batch(Hypothesis::H1, derived, cfg, opts.trials,
                           opts.scaling);
    std::sort(batch.lambda_samples.begin(), batch.lambda_samples.end());

    for (double target_pf : logspace(1e-3, 0.999, opts.grid_points)) {
      const double tau = cfar_threshold(target_pf, cfg, opts.scaling);
      const double p_d = pd(tau, derived, cfg, opts.scaling);
      const double p_d_emp = exceed_fraction(batch.lambda_samples, tau);
      t.append_row({target_pf, p_d, p_d_emp,
                    wilson_halfwidth(p_d_emp, opts.trials)});
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

std::vector<SweepTable> run_rate_sweep(const SystemConfig& config,
                                       const ExperimentOptions& opts) {
  std::vector<SweepTable> tables;
  for (int nt : resolve_nt_list(config, opts)) {
    const auto cfg_nt = config_for_nt(config, nt);
    auto t = make_table("rate_sweep" + nt_suffix(nt), cfg_nt, opts.scaling,
                        {"p_c_dbm", "rate_analytic", "rate_mc", "stderr"});
    for (double p_c_dbm :
         linspace(opts.p_min_dbm, opts.p_max_dbm, opts.p_points)) {
      // sweep coordinate is the communication power rho_c * P
      SystemConfig cfg = cfg_nt;
      cfg.total_power_dbm = p_c_dbm - 10.0 * std::log10(cfg.rho_c);
      const auto analytic = ergodic_rate(cfg.rho_c, cfg);
      const auto mc = ergodic_rate_mc(cfg.rho_c, cfg, opts.trials);
      t.append_row({p_c_dbm, analytic.rate_bps_hz, mc.rate_bps_hz,
                    mc.stderr_bps_hz});
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

std::vector<SweepTable> run_error_vs_threshold(const SystemConfig& config,
                                               const ExperimentOptions& opts) {
  std::vector<SweepTable> tables;
  for (int nt : resolve_nt_list(config, opts)) {
    const auto cfg = config_for_nt(config, nt);
    auto t = make_table("error_vs_threshold" + nt_suffix(nt), cfg,
                        opts.scaling, {"tau", "p_e"});
    const auto [lo, hi] = tau_range(cfg, opts.scaling);
    for (double tau : logspace(lo, hi, opts.grid_points))
      t.append_row({tau, total_error(tau, cfg.rho_c, cfg, opts.scaling)});
    tables.push_back(std::move(t));
  }
  return tables;
}

std::vector<SweepTable> run_sweep_power(const SystemConfig& config,
                                        const ExperimentOptions& opts) {
  std::vector<SweepTable> tables;
  for (int nt : resolve_nt_list(config, opts)) {
    const auto cfg_nt = config_for_nt(config, nt);
    auto t = make_table("sweep_power" + nt_suffix(nt), cfg_nt, opts.scaling,
                        {"p_dbm", "p_f_star", "p_md_star", "p_e_star",
                         "p_f_cfar", "p_md_cfar", "p_e_cfar", "feasible"});
    t.metadata["r_min"] = opts.r_min;
    t.metadata["alpha"] = opts.alpha;
    for (double p_dbm :
         linspace(opts.p_min_dbm, opts.p_max_dbm, opts.p_points)) {
      SystemConfig cfg = cfg_nt;
      cfg.total_power_dbm = p_dbm;
      const auto joint = joint_solve(opts.r_min, cfg, opts.scaling);

      SystemConfig cfg_star = cfg;
      cfg_star.rho_c = std::max(joint.rho_c_star, 1e-12);
      const auto derived_star = derive(cfg_star);
      const auto star = detection_point(joint.tau_star, derived_star, cfg_star,
                                        opts.scaling);

      const double tau_cfar = cfar_threshold(opts.alpha, cfg_star, opts.scaling);
      const auto cfar = detection_point(tau_cfar, derived_star, cfg_star,
                                        opts.scaling);

      t.append_row({p_dbm, star.p_f, star.p_md, star.p_e, cfar.p_f, cfar.p_md,
                    cfar.p_e, joint.feasible ? 1.0 : 0.0});
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

std::vector<SweepTable> run_sweep_rmin(const SystemConfig& config,
                                       const ExperimentOptions& opts) {
  std::vector<SweepTable> tables;
  for (double p_dbm : opts.p_list_dbm) {
    SystemConfig cfg = config;
    cfg.total_power_dbm = p_dbm;
    char label[32];
    std::snprintf(label, sizeof label, "_p%g", p_dbm);
    auto t = make_table("sweep_rmin" + std::string(label), cfg, opts.scaling,
                        {"r_min", "p_e_star", "achieved_rate", "feasible"});
    for (double r_min : linspace(opts.rmin_min, opts.rmin_max, opts.rmin_points)) {
      const auto joint = joint_solve(r_min, cfg, opts.scaling);
      t.append_row({r_min, joint.p_e_star, joint.achieved_rate,
                    joint.feasible ? 1.0 : 0.0});
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

}  // namespace isac
