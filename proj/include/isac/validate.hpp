#pragma once

#include <cstdint>
#include <string>

#include "isac/montecarlo.hpp"
#include "isac/system_model.hpp"

namespace isac {

struct ValidationOptions {
  std::uint64_t trials = 200000;
  EigScaling scaling = EigScaling::sample_mean;
  // Fault-injection hook for the suite's own tests: scales the noise variance
  // fed to the sampler (and only the sampler), so any value != 1 must fail.
  double fault_sigma_scale = 1.0;
};

struct ValidationReport {
  bool passed = false;
  std::string text;  // deterministic: reruns with the same inputs are byte-identical
};

// Cross-checks every closed form against its independent oracle:
//   - C_k series vs adaptive quadrature (200-point random grid, negative s included)
//   - null-hypothesis eigenvalue CDF vs empirical CDF (sup-norm)
//   - target-present eigenvalue CDF vs empirical CDF (sup-norm)
//   - threshold-scaling arbitration (which convention matches the sampler)
//   - ergodic rate closed form vs Monte Carlo log-det
//   - CFAR threshold round trip at alpha = 0.1
// Sup-norm tolerance scales as 5/sqrt(trials).
ValidationReport run_validation(const SystemConfig& config,
                                const ValidationOptions& opts = {});

}  // namespace isac
