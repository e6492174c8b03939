#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isac/capacity.hpp"
#include "isac/detection.hpp"
#include "isac/montecarlo.hpp"
#include "isac/optimizer.hpp"
#include "isac/system_model.hpp"

using namespace isac;

namespace {

SystemConfig scenario() {
  SystemConfig cfg;
  cfg.samples = 10;
  cfg.gain_t = 0.4;
  cfg.rho_c = 0.9;
  cfg.total_power_dbm = 10.0;
  cfg.comm_channel_var = 2.9795492167439104;
  cfg.seed = 20250823;
  return cfg;
}

}  // namespace

TEST_CASE("golden section recovers analytic minima") {
  int iters = 0;
  const double x1 = golden_section_minimize(
      [](double x) { return (x - 2.75) * (x - 2.75); }, 0.0, 10.0, 1e-9, &iters);
  CHECK(std::fabs(x1 - 2.75) < 1e-7);
  CHECK(iters > 0);

  const double x2 = golden_section_minimize(
      [](double x) { return std::cosh(x - 0.5); }, -4.0, 4.0, 1e-10);
  CHECK(std::fabs(x2 - 0.5) < 1e-7);
}

TEST_CASE("threshold solver beats a dense grid scan") {
  const auto cfg = scenario();
  const auto res = solve_threshold(cfg.rho_c, cfg);
  REQUIRE_FALSE(res.degenerate);
  CHECK(res.p_e_star < 0.5);

  // dense scan around the reported optimum
  double best = 1.0;
  for (int i = 0; i <= 2000; ++i) {
    const double tau = res.tau_star * (0.5 + i * 1.0 / 2000.0);
    best = std::min(best, total_error(tau, cfg.rho_c, cfg));
  }
  CHECK(res.p_e_star <= best + 1e-10);
}

TEST_CASE("optimal threshold is a stationary convex point") {
  const auto cfg = scenario();
  const auto res = solve_threshold(cfg.rho_c, cfg);
  const auto rep = verify_convexity(cfg.rho_c, res.tau_star, cfg);
  CHECK(rep.convexity_ok);
  CHECK_FALSE(rep.degenerate);
  CHECK(std::fabs(rep.first_derivative) < 1e-5);
  CHECK(rep.second_derivative > 0.0);
}

TEST_CASE("flat objective is flagged degenerate, not 'solved'") {
  auto cfg = scenario();
  const auto res = solve_threshold(1.0, cfg);  // all power to comms: a = 0
  CHECK(res.degenerate);
  CHECK(res.p_e_star == doctest::Approx(0.5));
  const auto rep = verify_convexity(1.0, res.tau_star, cfg);
  CHECK(rep.degenerate);
  CHECK_FALSE(rep.convexity_ok);
}

TEST_CASE("joint solve honors the rate floor") {
  const auto cfg = scenario();
  const double r_min = 5.0;
  const auto joint = joint_solve(r_min, cfg);
  REQUIRE(joint.feasible);
  CHECK(joint.achieved_rate == doctest::Approx(r_min).epsilon(1e-7));
  CHECK(ergodic_rate(joint.rho_c_star, cfg).rate_bps_hz ==
        doctest::Approx(r_min).epsilon(1e-7));
  CHECK(joint.p_e_star < 0.5);
  CHECK(joint.convexity_ok);

  // a CFAR baseline at the same power split cannot beat the joint optimum
  SystemConfig at_split = cfg;
  at_split.rho_c = joint.rho_c_star;
  const double tau_cfar = cfar_threshold(0.1, at_split);
  CHECK(joint.p_e_star <= total_error(tau_cfar, joint.rho_c_star, cfg) + 1e-12);
}

TEST_CASE("joint solve reports infeasibility honestly") {
  const auto cfg = scenario();
  const double r_full = ergodic_rate(1.0, cfg).rate_bps_hz;
  const auto joint = joint_solve(r_full + 1.0, cfg);
  CHECK_FALSE(joint.feasible);
  CHECK(joint.rho_c_star == 0.0);
  CHECK(joint.achieved_rate == 0.0);
  // with everything on sensing the detector is at its best
  CHECK(joint.p_e_star < 0.5);
}

TEST_CASE("more power never hurts the optimized error") {
  const auto cfg = scenario();
  double prev = 1.0;
  for (double p : {2.0, 6.0, 10.0, 14.0}) {
    SystemConfig c = cfg;
    c.total_power_dbm = p;
    const auto joint = joint_solve(3.0, c);
    CHECK(joint.p_e_star < prev);
    prev = joint.p_e_star;
  }
}
