#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isac/sweep.hpp"
#include "isac/system_model.hpp"

namespace isac {

struct ExperimentOptions {
  std::uint64_t trials = 100000;
  EigScaling scaling = EigScaling::sample_mean;
  std::vector<int> nt_list;      // empty -> just the config's n_tx
  double alpha = 0.1;            // CFAR false-alarm level
  double r_min = 5.0;            // throughput floor for the power sweep
  double p_min_dbm = 0.0;
  double p_max_dbm = 14.0;
  int p_points = 15;
  double rmin_min = 1.0;
  double rmin_max = 9.0;
  int rmin_points = 33;
  std::vector<double> p_list_dbm = {8.0, 10.0, 12.0};  // panels of the R_min sweep
  int grid_points = 101;         // threshold / operating-point grid density
};

// Antenna-count override: array gain scales with element count, so gain_t is
// rescaled by nt / base.n_tx along with n_tx itself.
SystemConfig config_for_nt(const SystemConfig& base, int nt);

// One table per antenna count: (p_f, p_d_analytic, p_d_empirical, ci_halfwidth).
std::vector<SweepTable> run_roc(const SystemConfig& config,
                                const ExperimentOptions& opts);

// One table per antenna count: (p_c_dbm, rate_analytic, rate_mc, stderr).
std::vector<SweepTable> run_rate_sweep(const SystemConfig& config,
                                       const ExperimentOptions& opts);

// One table per antenna count: (tau, p_e).
std::vector<SweepTable> run_error_vs_threshold(const SystemConfig& config,
                                               const ExperimentOptions& opts);

// One table per antenna count: joint optimum vs CFAR baseline across transmit
// power, (p_dbm, p_f_star, p_md_star, p_e_star, p_f_cfar, p_md_cfar,
// p_e_cfar, feasible). Infeasible points are kept, flagged feasible = 0.
std::vector<SweepTable> run_sweep_power(const SystemConfig& config,
                                        const ExperimentOptions& opts);

// One table per power level: (r_min, p_e_star, achieved_rate, feasible).
std::vector<SweepTable> run_sweep_rmin(const SystemConfig& config,
                                       const ExperimentOptions& opts);

}  // namespace isac
