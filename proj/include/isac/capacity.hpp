#pragma once

#include <cstdint>
#include <optional>

#include "isac/system_model.hpp"

namespace isac {

enum class RateMethod { analytic, monte_carlo };

struct RateResult {
  double rate_bps_hz = 0.0;
  RateMethod method = RateMethod::analytic;
  double stderr_bps_hz = 0.0;  // 0 for analytic
  bool saturated = false;      // set when the SNR argument left the safe regime
};

// Closed-form ergodic rate of the 2 x N_t link at power split rho_c.
// N_t = 1 is a derived special case (validated against the Monte Carlo path).
RateResult ergodic_rate(double rho_c, const SystemConfig& config);

// Sample mean of log2 det(I2 + rho_c P/(N_t sigma_c2) Hc Hc^H), deterministic
// for fixed config.seed.
RateResult ergodic_rate_mc(double rho_c, const SystemConfig& config,
                           std::uint64_t trials);

struct PowerSplit {
  double rho_c_star = 0.0;
  bool feasible = false;
};

// Minimal rho_c with rate(rho_c) = r_min; infeasible when even rho_c = 1
// cannot reach r_min (rho_c* = 0, all power to sensing).
PowerSplit rate_inverse(double r_min, const SystemConfig& config);

}  // namespace isac
