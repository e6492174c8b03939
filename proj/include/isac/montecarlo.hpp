#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "isac/system_model.hpp"

namespace isac {

enum class Hypothesis { H0, H1 };
enum class EigScaling { raw_sum, sample_mean };

const char* to_string(EigScaling s);
EigScaling scaling_from_string(const std::string& s);

// Counter-based stream: value(i) depends only on (seed, trial, i), so trial
// generation is order-invariant and embarrassingly parallel.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64();
  double next_uniform();              // (0, 1]
  cplx next_complex_normal();         // E|z|^2 = 1, re/im independent N(0, 1/2)

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct TrialBatch {
  Hypothesis hypothesis = Hypothesis::H0;
  std::uint64_t trials = 0;
  std::vector<double> lambda_samples;
  std::uint64_t seed = 0;
  EigScaling scaling = EigScaling::sample_mean;
};

// One received-signal draw R_s (2 x K, column-major: column k at 2k, 2k+1).
std::vector<cplx> sample_received(Hypothesis hyp, const DerivedParams& derived,
                                  const SystemConfig& config, CounterRng& stream);

// Largest eigenvalue of a Hermitian 2x2 (column-major m[0..3]).
double max_eig_2x2(const std::array<cplx, 4>& m);

TrialBatch run_batch(Hypothesis hyp, const DerivedParams& derived,
                     const SystemConfig& config, std::uint64_t trials,
                     EigScaling scaling);

struct DetectionCurvePoint {
  double tau = 0.0;
  double p_f = 0.0;
  double p_d = 0.0;
  double p_f_halfwidth = 0.0;  // Wilson 95% interval half-width
  double p_d_halfwidth = 0.0;
};

struct DetectionCurve {
  std::vector<DetectionCurvePoint> points;
};

DetectionCurve empirical_curve(const TrialBatch& batch_h0,
                               const TrialBatch& batch_h1,
                               const std::vector<double>& tau_grid);

// Fraction of samples strictly above tau (samples must be sorted ascending).
double exceed_fraction(const std::vector<double>& sorted_samples, double tau);

double wilson_halfwidth(double p_hat, std::uint64_t n);

// Binary dump: 16-byte header (magic u32, version u32, count u64), then
// little-endian 64-bit reals.
void dump_lambda_samples(const std::string& path, const std::vector<double>& samples);
std::vector<double> load_lambda_samples(const std::string& path);

}  // namespace isac
