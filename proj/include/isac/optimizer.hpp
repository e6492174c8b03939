#pragma once

#include <functional>
#include <string>

#include "isac/capacity.hpp"
#include "isac/detection.hpp"
#include "isac/system_model.hpp"

namespace isac {

struct ConvexityReport {
  bool convexity_ok = false;
  bool degenerate = false;       // flat objective, no usable curvature
  double first_derivative = 0.0;
  double second_derivative = 0.0;
  double min_second_derivative_bracket = 0.0;  // over +-20% around tau*
  std::string reason;
};

struct OptimizationResult {
  double rho_c_star = 0.0;
  double tau_star = 0.0;
  double p_e_star = 0.5;
  double achieved_rate = 0.0;
  bool feasible = false;
  bool convexity_ok = false;
  int iterations = 0;
  bool degenerate_objective = false;
  ConvexityReport convexity;
};

// Golden-section minimizer on [lo, hi]; terminates at |hi-lo| < rel_tol * x.
double golden_section_minimize(const std::function<double(double)>& f,
                               double lo, double hi, double rel_tol,
                               int* iterations = nullptr);

PowerSplit solve_power_split(double r_min, const SystemConfig& config);

struct ThresholdResult {
  double tau_star = 0.0;
  double p_e_star = 0.5;
  int iterations = 0;
  bool degenerate = false;
};

// Coarse log-spaced grid bracket, then golden-section refinement.
ThresholdResult solve_threshold(double rho_c_star, const SystemConfig& config,
                                EigScaling scaling = kDefaultScaling);

ConvexityReport verify_convexity(double rho_c_star, double tau_star,
                                 const SystemConfig& config,
                                 EigScaling scaling = kDefaultScaling);

OptimizationResult joint_solve(double r_min, const SystemConfig& config,
                               EigScaling scaling = kDefaultScaling);

}  // namespace isac
