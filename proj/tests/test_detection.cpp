#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "isac/detection.hpp"
#include "isac/montecarlo.hpp"
#include "isac/system_model.hpp"

using namespace isac;

namespace {

SystemConfig scenario() {
  SystemConfig cfg;
  cfg.samples = 10;
  cfg.gain_t = 0.0803050588898899;
  cfg.rho_c = 0.9;
  cfg.total_power_dbm = 8.0;
  cfg.seed = 20250823;
  return cfg;
}

double sup_norm_vs(const std::vector<double>& sorted,
                   const SystemConfig& cfg, bool h1) {
  const auto d = derive(cfg);
  double sup = 0.0;
  const size_t n = sorted.size();
  for (int j = 0; j <= 60; ++j) {
    const size_t idx = j * (n - 1) / 60;
    const double emp = static_cast<double>(idx + 1) / n;
    const double ana = h1 ? cdf_h1(sorted[idx], d, cfg) : cdf_h0(sorted[idx], cfg);
    sup = std::max(sup, std::fabs(emp - ana));
  }
  return sup;
}

}  // namespace

TEST_CASE("null CDF limits and monotonicity") {
  const auto cfg = scenario();
  CHECK(cdf_h0(1e-4, cfg) < 1e-6);
  CHECK(cdf_h0(50.0, cfg) > 1.0 - 1e-9);
  double prev = 0.0;
  for (double tau = 0.05; tau < 12.0; tau *= 1.3) {
    const double v = cdf_h0(tau, cfg);
    CHECK(v >= prev);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
  CHECK_THROWS_AS(cdf_h0(-1.0, cfg), std::domain_error);
}

TEST_CASE("target-present CDF limits and monotonicity") {
  const auto cfg = scenario();
  const auto d = derive(cfg);
  CHECK(cdf_h1(1e-4, d, cfg) < 1e-6);
  CHECK(cdf_h1(200.0, d, cfg) > 1.0 - 1e-8);
  double prev = 0.0;
  for (double tau = 0.05; tau < 60.0; tau *= 1.25) {
    const double v = cdf_h1(tau, d, cfg);
    CHECK(v >= prev - 1e-12);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("both CDFs track the sampler (sup-norm)") {
  const auto cfg = scenario();
  const auto d = derive(cfg);
  const std::uint64_t trials = 100000;
  const double tol = 5.0 / std::sqrt(static_cast<double>(trials));

  auto b0 = run_batch(Hypothesis::H0, d, cfg, trials, EigScaling::sample_mean);
  std::sort(b0.lambda_samples.begin(), b0.lambda_samples.end());
  CHECK(sup_norm_vs(b0.lambda_samples, cfg, false) < tol);

  auto b1 = run_batch(Hypothesis::H1, d, cfg, trials, EigScaling::sample_mean);
  std::sort(b1.lambda_samples.begin(), b1.lambda_samples.end());
  CHECK(sup_norm_vs(b1.lambda_samples, cfg, true) < tol);
}

TEST_CASE("scaling conventions are consistent mappings of one CDF") {
  const auto cfg = scenario();
  const auto d = derive(cfg);
  for (double tau : {0.3, 1.0, 2.5, 6.0}) {
    CHECK(cdf_h0(tau, cfg, EigScaling::sample_mean) ==
          doctest::Approx(cdf_h0(tau * cfg.samples, cfg, EigScaling::raw_sum))
              .epsilon(1e-13));
    CHECK(cdf_h1(tau, d, cfg, SeriesControl{}, EigScaling::sample_mean) ==
          doctest::Approx(cdf_h1(tau * cfg.samples, d, cfg, SeriesControl{},
                                 EigScaling::raw_sum))
              .epsilon(1e-12));
  }
}

TEST_CASE("cfar threshold round trip over alpha") {
  const auto cfg = scenario();
  for (double alpha : {0.01, 0.05, 0.1, 0.3, 0.7}) {
    const double tau = cfar_threshold(alpha, cfg);
    CHECK(pf(tau, cfg) == doctest::Approx(alpha).epsilon(1e-7));
  }
  CHECK_THROWS_AS(cfar_threshold(0.0, cfg), std::domain_error);
  CHECK_THROWS_AS(cfar_threshold(1.0, cfg), std::domain_error);
}

TEST_CASE("ROC lies above the chance diagonal") {
  const auto cfg = scenario();
  const auto d = derive(cfg);
  for (double alpha : {0.01, 0.05, 0.1, 0.2, 0.5}) {
    const double tau = cfar_threshold(alpha, cfg);
    CHECK(pd(tau, d, cfg) > alpha);
  }
}

TEST_CASE("total error: 0.5 at the extremes, below 0.5 in between") {
  const auto cfg = scenario();
  CHECK(total_error(1e-5, cfg.rho_c, cfg) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(total_error(500.0, cfg.rho_c, cfg) == doctest::Approx(0.5).epsilon(1e-6));
  const double tau_mid = cfar_threshold(0.1, cfg);
  CHECK(total_error(tau_mid, cfg.rho_c, cfg) < 0.5);
}

TEST_CASE("no detectability collapses total error to one half") {
  auto cfg = scenario();
  cfg.rho_c = 1.0;  // nothing left for sensing: a = 0
  for (double tau : {0.5, 1.0, 3.0})
    CHECK(total_error(tau, cfg.rho_c, cfg) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("detection_point fields are mutually consistent") {
  const auto cfg = scenario();
  const auto d = derive(cfg);
  const auto pt = detection_point(1.8, d, cfg);
  CHECK(pt.tau == 1.8);
  CHECK(pt.p_md == doctest::Approx(1.0 - pt.p_d).epsilon(1e-14));
  CHECK(pt.p_e == doctest::Approx(0.5 * (pt.p_f + pt.p_md)).epsilon(1e-14));
  CHECK(pt.p_f == doctest::Approx(pf(1.8, cfg)).epsilon(1e-14));
}

TEST_CASE("more sensing gain means better detection at matched false alarm") {
  const auto cfg = scenario();
  const double tau = cfar_threshold(0.1, cfg);
  double prev = 0.0;
  for (double g : {0.02, 0.08, 0.3}) {
    SystemConfig c2 = cfg;
    c2.gain_t = g;
    const double p = pd(tau, derive(c2), c2);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("H1 closed form needs a usable scenario") {
  auto cfg = scenario();
  const auto d = derive(cfg);
  SystemConfig bad = cfg;
  bad.samples = 2;
  CHECK_THROWS_AS(cdf_h1(1.0, d, bad), std::domain_error);

  SystemConfig no_target = cfg;
  no_target.rho_c = 1.0;
  CHECK_THROWS_AS(cdf_h1(1.0, derive(no_target), no_target), std::domain_error);
}
