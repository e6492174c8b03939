#include "isac/capacity.hpp"

#include <cmath>
#include <numbers>

#include "isac/montecarlo.hpp"
#include "isac/special_math.hpp"

namespace isac {

namespace {

// effective inverse SNR: channel variance folded in so dBm inputs need no
// external path-loss scale
double snr_inverse(double rho_c, const SystemConfig& config) {
  const double P = config.total_power_mw();
  const double denom = rho_c * P * config.comm_channel_var;
  const double nt = (config.n_tx == 1) ? 1.0 : config.n_tx;
  return nt * config.sigma_c2_mw() / denom;
}

}  // namespace

RateResult ergodic_rate(double rho_c, const SystemConfig& config) {
  config.validate();
  RateResult res;
  res.method = RateMethod::analytic;
  if (rho_c <= 0.0) return res;

  const double mu = snr_inverse(rho_c, config);
  if (!std::isfinite(mu) || mu <= 0.0) {
    res.saturated = true;
    return res;
  }
  if (mu > 700.0) {
    // deep low-SNR: rate below double-precision resolution of the J sums
    res.rate_bps_hz = 0.0;
    res.saturated = true;
    return res;
  }
  const double ln2 = std::numbers::ln2;
  if (config.n_tx == 1) {
    // 2x1 link: log2(1 + gamma |h|^2), |h|^2 ~ Gamma(2)
    res.rate_bps_hz = j_function(2, mu) / ln2;
    return res;
  }
  const int nt = config.n_tx;
  const double a0 = nt / std::tgamma(nt - 1.0);
  const double a1 = -2.0 / std::tgamma(nt - 1.0);
  const double a2 = 1.0 / std::tgamma(static_cast<double>(nt));
  const double nats = a0 * j_function(nt - 1, mu) + a1 * j_function(nt, mu) +
                      a2 * j_function(nt + 1, mu);
  res.rate_bps_hz = std::max(nats / ln2, 0.0);
  return res;
}

RateResult ergodic_rate_mc(double rho_c, const SystemConfig& config,
                           std::uint64_t trials) {
  config.validate();
  if (trials < 1000)
    throw std::domain_error("ergodic_rate_mc: trials must be >= 1000");
  RateResult res;
  res.method = RateMethod::monte_carlo;
  if (rho_c <= 0.0) return res;

  const int nt = config.n_tx;
  const double gamma =
      rho_c * config.total_power_mw() / (nt * config.sigma_c2_mw());
  const double entry_sd = std::sqrt(config.comm_channel_var);

  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    CounterRng rng(config.seed, t);
    // W = H H^H for a 2 x N_t draw
    double w11 = 0.0, w22 = 0.0;
    cplx w21 = 0.0;
    for (int j = 0; j < nt; ++j) {
      const cplx h0 = entry_sd * rng.next_complex_normal();
      const cplx h1 = entry_sd * rng.next_complex_normal();
      w11 += std::norm(h0);
      w22 += std::norm(h1);
      w21 += h1 * std::conj(h0);
    }
    const double m11 = 1.0 + gamma * w11;
    const double m22 = 1.0 + gamma * w22;
    const double det = m11 * m22 - gamma * gamma * std::norm(w21);
    const double r = std::log2(det);
    sum += r;
    sum_sq += r * r;
  }
  const double mean = sum / trials;
  const double var = std::max(sum_sq / trials - mean * mean, 0.0);
  res.rate_bps_hz = mean;
  res.stderr_bps_hz = std::sqrt(var / trials);
  return res;
}

PowerSplit rate_inverse(double r_min, const SystemConfig& config) {
  if (!(r_min > 0.0)) throw std::domain_error("rate_inverse: r_min must be > 0");
  PowerSplit split;
  const double r_full = ergodic_rate(1.0, config).rate_bps_hz;
  if (r_full < r_min) return split;  // infeasible, rho_c* = 0

  double lo = 1e-9, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = ergodic_rate(mid, config).rate_bps_hz;
    if (std::fabs(r - r_min) < 1e-9) {
      split.rho_c_star = mid;
      split.feasible = true;
      return split;
    }
    (r < r_min ? lo : hi) = mid;
  }
  split.rho_c_star = 0.5 * (lo + hi);
  split.feasible = true;
  return split;
}

}  // namespace isac
