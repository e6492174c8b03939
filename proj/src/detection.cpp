#include "isac/detection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isac {

namespace {

double raw_threshold(double tau, const SystemConfig& config, EigScaling scaling) {
  return scaling == EigScaling::sample_mean ? config.samples * tau : tau;
}

double check_probability(double v, const char* where) {
  if (!(v > -1e-9 && v < 1.0 + 1e-9) || !std::isfinite(v))
    throw FormulaIntegrityError(std::string(where) +
                                ": probability out of range: " +
                                std::to_string(v));
  return std::min(std::max(v, 0.0), 1.0);
}

}  // namespace

double cdf_h0(double tau, const SystemConfig& config, EigScaling scaling) {
  if (!(tau > 0.0)) throw std::domain_error("cdf_h0: tau must be > 0");
  const int K = config.samples;
  if (K < 2) throw std::domain_error("cdf_h0: samples must be >= 2");
  const double u = raw_threshold(tau, config, scaling) / config.sigma_s2_mw();
  // P(lmax <= u) = [g(K+1,u) g(K-1,u) - g(K,u)^2] / (G(K) G(K-1)), evaluated
  // in logs so large u never overflows
  const double lg_norm = std::lgamma(K) + std::lgamma(K - 1.0);
  const double t_pos = std::exp(detail::log_lower_gamma(K + 1, u) +
                                detail::log_lower_gamma(K - 1, u) - lg_norm);
  const double t_neg =
      std::exp(2.0 * detail::log_lower_gamma(K, u) - lg_norm);
  return check_probability(t_pos - t_neg, "cdf_h0");
}

double cdf_h1(double tau, const DerivedParams& derived,
              const SystemConfig& config, const SeriesControl& ctl,
              EigScaling scaling) {
  if (!(tau > 0.0)) throw std::domain_error("cdf_h1: tau must be > 0");
  const int K = config.samples;
  if (K < 3) throw std::domain_error("cdf_h1: samples must be >= 3");
  if (!(derived.a > 0.0) || !(derived.beta_c2 > 0.0))
    throw std::domain_error(
        "cdf_h1: requires a > 0 and beta_c2 > 0 (use the sampler otherwise)");

  const double sigma_s2 = config.sigma_s2_mw();
  const double lam = raw_threshold(tau, config, scaling);
  const double u = lam / sigma_s2;
  const double a = derived.a;
  const double b = derived.b;
  const double c = a / (b * b);

  const double log_a_pref = -a / b + 2.0 * K * std::log(lam) -
                            std::lgamma(K) - std::lgamma(K - 1.0) -
                            K * std::log(sigma_s2) - K * std::log(b);
  const double log_u = std::log(u);
  const double lgKm1 = std::lgamma(K - 1.0);  // (K-2)!

  // first term: A B_K / (K-1) * C_{K-1}(1/b, a/b^2, lam)
  const double log_bk = detail::log_lower_gamma(K, u) - K * log_u;
  const double t1 =
      std::exp(log_a_pref + log_bk - std::log(K - 1.0) +
               detail::log_c_series(K - 1, 1.0 / b, c, lam, K, ctl));

  // second term: -A (K-2)! u^{-K} e^{-u} C_0(-beta^2|g2|^2/(b sig2), ., lam);
  // the series grows like e^{|s|lam} but the e^{-u} prefactor cancels it, so
  // the exponents must meet in log space
  const double s_neg = -derived.beta_c2 * derived.g2_norm2 / (b * sigma_s2);
  const double t2 = -std::exp(log_a_pref + lgKm1 - K * log_u - u +
                              detail::log_c_series(0, s_neg, c, lam, K, ctl));

  // third term: sum_k A (K-2)! e^{-u} / (k! u^{K-k}) C_k(1/b, ., lam)
  double t3 = 0.0;
  for (int k = 0; k < K; ++k) {
    t3 += std::exp(log_a_pref + lgKm1 - u - std::lgamma(k + 1.0) -
                   (K - k) * log_u +
                   detail::log_c_series(k, 1.0 / b, c, lam, K, ctl));
  }
  return check_probability(t1 + t2 + t3, "cdf_h1");
}

double pf(double tau, const SystemConfig& config, EigScaling scaling) {
  return 1.0 - cdf_h0(tau, config, scaling);
}

double pd(double tau, const DerivedParams& derived, const SystemConfig& config,
          EigScaling scaling) {
  return 1.0 - cdf_h1(tau, derived, config, SeriesControl{}, scaling);
}

double cfar_threshold(double alpha, const SystemConfig& config,
                      EigScaling scaling) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("cfar_threshold: alpha must be in (0,1)");
  // bracket: pf is 1 at tau -> 0+ and 0 at tau -> inf
  double lo = 1e-12, hi = config.sigma_s2_mw();
  while (pf(hi, config, scaling) > alpha) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = pf(mid, config, scaling);
    if (std::fabs(v - alpha) < 1e-9) return mid;
    (v > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double total_error(double tau, double rho_c, const SystemConfig& config,
                   EigScaling scaling) {
  SystemConfig cfg = config;
  // rho_c = 0 is the all-power-to-sensing limit; nudge it so beta_c2 stays
  // positive (the closed form needs it, and the perturbation is ~1e-12)
  cfg.rho_c = std::max(rho_c, 1e-12);
  const auto derived = derive(cfg);
  const double p_fa = pf(tau, cfg, scaling);
  const double p_det =
      derived.a > 0.0 ? pd(tau, derived, cfg, scaling) : p_fa;
  return 0.5 * (p_fa + 1.0 - p_det);
}

DetectionPoint detection_point(double tau, const DerivedParams& derived,
                               const SystemConfig& config, EigScaling scaling) {
  DetectionPoint pt;
  pt.tau = tau;
  pt.p_f = pf(tau, config, scaling);
  pt.p_d = derived.a > 0.0 ? pd(tau, derived, config, scaling) : pt.p_f;
  pt.p_md = 1.0 - pt.p_d;
  pt.p_e = 0.5 * (pt.p_f + pt.p_md);
  return pt;
}

}  // namespace isac
