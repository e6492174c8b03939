#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isac/experiments.hpp"
#include "isac/sweep.hpp"
#include "isac/system_model.hpp"
#include "isac/validate.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::uint64_t trials = 100000;
  std::int64_t seed = -1;  // -1: keep the config's seed
  std::string out_dir = ".";
  std::vector<int> nt_list;
  std::string scaling = "sample_mean";
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "scenario config file")
      ->required();
  sub->add_option("--trials", args.trials, "Monte Carlo trials per batch");
  sub->add_option("--seed", args.seed, "override the config seed");
  sub->add_option("--out", args.out_dir, "output directory for CSV/JSON");
  sub->add_option("--nt", args.nt_list, "antenna counts, e.g. --nt 1,2,8")
      ->delimiter(',');
  sub->add_option("--scaling", args.scaling,
                  "eigenvalue threshold convention: raw_sum | sample_mean")
      ->check(CLI::IsMember({"raw_sum", "sample_mean"}));
}

isac::SystemConfig load(const CommonArgs& args) {
  auto cfg = isac::load_config(args.config_path);
  if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
  return cfg;
}

isac::ExperimentOptions make_opts(const CommonArgs& args) {
  isac::ExperimentOptions opts;
  opts.trials = args.trials;
  opts.scaling = isac::scaling_from_string(args.scaling);
  opts.nt_list = args.nt_list;
  return opts;
}

void write_all(const std::vector<isac::SweepTable>& tables,
               const std::string& out_dir) {
  for (const auto& t : tables) {
    t.write(out_dir);
    std::printf("wrote %s/%s.{csv,json} (%zu rows)\n", out_dir.c_str(),
                t.name.c_str(), t.rows());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue-based target detection for a 2-antenna sensing "
               "receiver: closed-form curves, Monte Carlo checks, and the "
               "joint power-split/threshold optimizer"};
  app.require_subcommand(1);

  CommonArgs args;

  auto* sub_validate = app.add_subcommand(
      "validate", "cross-check every closed form against its oracle");
  auto* sub_roc = app.add_subcommand("roc", "detection-vs-false-alarm curves");
  auto* sub_rate =
      app.add_subcommand("rate-sweep", "ergodic rate vs communication power");
  auto* sub_err = app.add_subcommand("error-vs-threshold",
                                     "total error probability vs threshold");
  auto* sub_power = app.add_subcommand(
      "sweep-power", "joint optimum vs CFAR baseline across transmit power");
  auto* sub_rmin = app.add_subcommand(
      "sweep-rmin", "optimum error and achieved rate vs throughput floor");

  for (auto* sub : {sub_validate, sub_roc, sub_rate, sub_err, sub_power, sub_rmin})
    add_common(sub, args);

  double alpha = 0.1, r_min = 5.0;
  double p_min = 0.0, p_max = 14.0;
  int p_points = 15, grid_points = 101, rmin_points = 33;
  double rmin_min = 1.0, rmin_max = 9.0;
  std::vector<double> p_list = {8.0, 10.0, 12.0};

  sub_power->add_option("--alpha", alpha, "CFAR false-alarm level");
  sub_power->add_option("--rmin", r_min, "throughput floor (bps/Hz)");
  for (auto* sub : {sub_rate, sub_power}) {
    sub->add_option("--pmin", p_min, "power grid start (dBm)");
    sub->add_option("--pmax", p_max, "power grid end (dBm)");
    sub->add_option("--ppoints", p_points, "power grid size");
  }
  for (auto* sub : {sub_roc, sub_err})
    sub->add_option("--grid", grid_points, "operating-point grid size");
  sub_rmin->add_option("--rmin-min", rmin_min, "R_min grid start (bps/Hz)");
  sub_rmin->add_option("--rmin-max", rmin_max, "R_min grid end (bps/Hz)");
  sub_rmin->add_option("--rmin-points", rmin_points, "R_min grid size");
  sub_rmin->add_option("--plist", p_list, "power levels (dBm), one panel each")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // any parse problem is a usage error
  }

  try {
    const auto cfg = load(args);
    auto opts = make_opts(args);
    opts.alpha = alpha;
    opts.r_min = r_min;
    opts.p_min_dbm = p_min;
    opts.p_max_dbm = p_max;
    opts.p_points = p_points;
    opts.grid_points = grid_points;
    opts.rmin_min = rmin_min;
    opts.rmin_max = rmin_max;
    opts.rmin_points = rmin_points;
    opts.p_list_dbm = p_list;

    if (sub_validate->parsed()) {
      isac::ValidationOptions vopts;
      vopts.trials = args.trials;
      vopts.scaling = opts.scaling;
      const auto report = isac::run_validation(cfg, vopts);
      std::fputs(report.text.c_str(), stdout);
      return report.passed ? 0 : 1;
    }
    if (sub_roc->parsed()) write_all(isac::run_roc(cfg, opts), args.out_dir);
    if (sub_rate->parsed())
      write_all(isac::run_rate_sweep(cfg, opts), args.out_dir);
    if (sub_err->parsed())
      write_all(isac::run_error_vs_threshold(cfg, opts), args.out_dir);
    if (sub_power->parsed())
      write_all(isac::run_sweep_power(cfg, opts), args.out_dir);
    if (sub_rmin->parsed())
      write_all(isac::run_sweep_rmin(cfg, opts), args.out_dir);
    return 0;
  } catch (const isac::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
