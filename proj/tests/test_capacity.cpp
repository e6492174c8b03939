#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isac/capacity.hpp"
#include "isac/system_model.hpp"

using namespace isac;

namespace {

SystemConfig comm_config(int nt, double power_dbm, double var = 1.0) {
  SystemConfig cfg;
  cfg.n_tx = nt;
  cfg.samples = std::max(10, nt);
  cfg.total_power_dbm = power_dbm;
  cfg.rho_c = 1.0;
  cfg.comm_channel_var = var;
  cfg.seed = 20250823;
  return cfg;
}

}  // namespace

TEST_CASE("closed form matches Monte Carlo within 3 standard errors") {
  for (int nt : {1, 2, 4, 8}) {
    for (double p : {0.0, 6.0, 12.0, 20.0}) {
      const auto cfg = comm_config(nt, p);
      const auto analytic = ergodic_rate(cfg.rho_c, cfg);
      const auto mc = ergodic_rate_mc(cfg.rho_c, cfg, 100000);
      REQUIRE(mc.stderr_bps_hz > 0.0);
      CHECK(std::fabs(analytic.rate_bps_hz - mc.rate_bps_hz) <
            3.0 * mc.stderr_bps_hz);
    }
  }
}

TEST_CASE("rate is strictly increasing in the communication share") {
  const auto cfg = comm_config(2, 8.0, 2.5);
  double prev = 0.0;
  for (double rho : {0.05, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const double r = ergodic_rate(rho, cfg).rate_bps_hz;
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("rate increases with transmit antennas at fixed power") {
  for (double p : {2.0, 10.0}) {
    double prev = 0.0;
    for (int nt : {1, 2, 4, 8}) {
      const double r = ergodic_rate(1.0, comm_config(nt, p)).rate_bps_hz;
      CHECK(r > prev);
      prev = r;
    }
  }
}

TEST_CASE("zero communication power gives zero rate") {
  const auto cfg = comm_config(2, 8.0);
  CHECK(ergodic_rate(0.0, cfg).rate_bps_hz == 0.0);
  CHECK(ergodic_rate_mc(0.0, cfg, 10000).rate_bps_hz == 0.0);
}

TEST_CASE("deep low-SNR saturates instead of overflowing") {
  auto cfg = comm_config(2, -40.0);
  cfg.sigma_c2_dbm = 30.0;
  const auto res = ergodic_rate(1.0, cfg);
  CHECK(res.saturated);
  CHECK(res.rate_bps_hz == 0.0);
}

TEST_CASE("rate_inverse round trip and feasibility") {
  const auto cfg = comm_config(2, 8.0, 2.9795492167439104);
  const double r_full = ergodic_rate(1.0, cfg).rate_bps_hz;

  const auto split = rate_inverse(0.6 * r_full, cfg);
  REQUIRE(split.feasible);
  CHECK(ergodic_rate(split.rho_c_star, cfg).rate_bps_hz ==
        doctest::Approx(0.6 * r_full).epsilon(1e-7));

  const auto infeasible = rate_inverse(r_full * 1.01, cfg);
  CHECK_FALSE(infeasible.feasible);
  CHECK(infeasible.rho_c_star == 0.0);

  CHECK_THROWS_AS(rate_inverse(-1.0, cfg), std::domain_error);
}

TEST_CASE("monte carlo path is deterministic for a fixed seed") {
  const auto cfg = comm_config(4, 10.0);
  const auto r1 = ergodic_rate_mc(0.8, cfg, 20000);
  const auto r2 = ergodic_rate_mc(0.8, cfg, 20000);
  CHECK(r1.rate_bps_hz == r2.rate_bps_hz);
  CHECK(r1.stderr_bps_hz == r2.stderr_bps_hz);
}

TEST_CASE("single-antenna branch agrees with its own Monte Carlo across SNR") {
  for (double p : {-5.0, 3.0, 15.0}) {
    const auto cfg = comm_config(1, p, 1.6538508046904554);
    const auto analytic = ergodic_rate(1.0, cfg);
    const auto mc = ergodic_rate_mc(1.0, cfg, 200000);
    CHECK(std::fabs(analytic.rate_bps_hz - mc.rate_bps_hz) <
          3.0 * mc.stderr_bps_hz);
  }
}
