#pragma once

#include "isac/montecarlo.hpp"
#include "isac/special_math.hpp"
#include "isac/system_model.hpp"

namespace isac {

// Raised when a closed-form probability lands outside [0,1] by more than the
// clamp tolerance; that means a transcription bug, not roundoff.
class FormulaIntegrityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DetectionPoint {
  double tau = 0.0;
  double p_f = 0.0;
  double p_d = 0.0;
  double p_md = 0.0;
  double p_e = 0.0;
};

// The default convention: thresholds index the sample-mean eigenvalue
// lambda_max(R R^H / K). The raw-sum CDF is evaluated at K*tau. This is the
// arbitrated choice under which both closed forms match the sampler; see the
// validation report.
inline constexpr EigScaling kDefaultScaling = EigScaling::sample_mean;

// CDF of the largest eigenvalue under H0 (white Gaussian snapshots).
double cdf_h0(double tau, const SystemConfig& config,
              EigScaling scaling = kDefaultScaling);

// CDF of the largest eigenvalue under H1 (rank-one mean shift plus rank-one
// covariance perturbation). Requires derived.a > 0 and derived.beta_c2 > 0,
// samples >= 3.
double cdf_h1(double tau, const DerivedParams& derived,
              const SystemConfig& config,
              const SeriesControl& ctl = SeriesControl{},
              EigScaling scaling = kDefaultScaling);

double pf(double tau, const SystemConfig& config,
          EigScaling scaling = kDefaultScaling);
double pd(double tau, const DerivedParams& derived, const SystemConfig& config,
          EigScaling scaling = kDefaultScaling);

// Threshold with pf(tau) = alpha (bisection on the monotone tail).
double cfar_threshold(double alpha, const SystemConfig& config,
                      EigScaling scaling = kDefaultScaling);

// P_e = 0.5 (P_F + 1 - P_D) at the given threshold and power split.
double total_error(double tau, double rho_c, const SystemConfig& config,
                   EigScaling scaling = kDefaultScaling);

DetectionPoint detection_point(double tau, const DerivedParams& derived,
                               const SystemConfig& config,
                               EigScaling scaling = kDefaultScaling);

}  // namespace isac
