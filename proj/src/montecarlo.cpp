#include "isac/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace isac {

const char* to_string(EigScaling s) {
  return s == EigScaling::raw_sum ? "raw_sum" : "sample_mean";
}

EigScaling scaling_from_string(const std::string& s) {
  if (s == "raw_sum") return EigScaling::raw_sum;
  if (s == "sample_mean") return EigScaling::sample_mean;
  throw std::invalid_argument("unknown scaling: " + s);
}

std::uint64_t CounterRng::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t trial)
    : key_(mix(seed ^ mix(trial))) {}

std::uint64_t CounterRng::next_u64() {
  return mix(key_ + 0x9E3779B97F4A7C15ULL * ++counter_);
}

double CounterRng::next_uniform() {
  // (0, 1]: never 0, safe under log
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

cplx CounterRng::next_complex_normal() {
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-std::log(u1));
  return std::polar(r, 2.0 * std::numbers::pi * u2);
}

std::vector<cplx> sample_received(Hypothesis hyp, const DerivedParams& derived,
                                  const SystemConfig& config, CounterRng& stream) {
  const int K = config.samples;
  const double sigma_s2 = config.sigma_s2_mw();
  const double sigma_s = std::sqrt(sigma_s2);
  std::vector<cplx> r(static_cast<size_t>(2) * K);

  if (hyp == Hypothesis::H0) {
    for (auto& v : r) v = sigma_s * stream.next_complex_normal();
    return r;
  }

  // H1: R = g2 alpha^H + L Z, Sigma = beta_c2 g2 g2^H + sigma_s2 I
  const cplx g20 = derived.g2[0];
  const cplx g21 = derived.g2[1];
  const double s11 = derived.beta_c2 * std::norm(g20) + sigma_s2;
  const cplx s21 = derived.beta_c2 * g21 * std::conj(g20);
  const double s22 = derived.beta_c2 * std::norm(g21) + sigma_s2;
  const double l11 = std::sqrt(s11);
  const cplx l21 = s21 / l11;
  const double l22 = std::sqrt(s22 - std::norm(l21));

  // alpha_k = sqrt(rho_s p) (Ss^H g1)_k; with the DFT waveform this is an
  // explicit phase sum over antennas
  const auto ss = sensing_waveform(config.n_tx, K);
  const double amp = std::sqrt(config.rho_s() * derived.p);
  for (int k = 0; k < K; ++k) {
    cplx acc = 0.0;
    for (int m = 0; m < config.n_tx; ++m) {
      acc += std::conj(ss[static_cast<size_t>(m) * K + k]) * derived.g1[m];
    }
    const cplx alpha_k = amp * acc;
    const cplx z0 = stream.next_complex_normal();
    const cplx z1 = stream.next_complex_normal();
    r[2 * k] = g20 * std::conj(alpha_k) + l11 * z0;
    r[2 * k + 1] = g21 * std::conj(alpha_k) + l21 * z0 + l22 * z1;
  }
  return r;
}

double max_eig_2x2(const std::array<cplx, 4>& m) {
  // column-major: m[0]=a11, m[1]=a21, m[2]=a12, m[3]=a22
  const double scale = std::max({std::abs(m[0]), std::abs(m[1]),
                                 std::abs(m[2]), std::abs(m[3]), 1.0});
  if (std::abs(m[1] - std::conj(m[2])) > 1e-12 * scale ||
      std::abs(m[0].imag()) > 1e-12 * scale ||
      std::abs(m[3].imag()) > 1e-12 * scale)
    throw std::domain_error("max_eig_2x2: matrix not Hermitian within tolerance");
  const double tr = m[0].real() + m[3].real();
  const double det = m[0].real() * m[3].real() - std::norm(m[1]);
  const double disc = std::max(tr * tr - 4.0 * det, 0.0);
  return 0.5 * (tr + std::sqrt(disc));
}

namespace {

double one_trial(Hypothesis hyp, const DerivedParams& derived,
                 const SystemConfig& config, std::uint64_t trial,
                 EigScaling scaling, const std::vector<cplx>& alpha,
                 double l11, cplx l21, double l22) {
  const int K = config.samples;
  CounterRng rng(config.seed, trial);
  std::array<cplx, 4> w{0.0, 0.0, 0.0, 0.0};
  const double sigma_s = std::sqrt(config.sigma_s2_mw());
  const cplx g20 = derived.g2.empty() ? cplx{} : derived.g2[0];
  const cplx g21 = derived.g2.empty() ? cplx{} : derived.g2[1];
  for (int k = 0; k < K; ++k) {
    cplx r0, r1;
    if (hyp == Hypothesis::H0) {
      r0 = sigma_s * rng.next_complex_normal();
      r1 = sigma_s * rng.next_complex_normal();
    } else {
      const cplx z0 = rng.next_complex_normal();
      const cplx z1 = rng.next_complex_normal();
      const cplx ak = std::conj(alpha[k]);
      r0 = g20 * ak + l11 * z0;
      r1 = g21 * ak + l21 * z0 + l22 * z1;
    }
    w[0] += r0 * std::conj(r0);
    w[1] += r1 * std::conj(r0);
    w[3] += r1 * std::conj(r1);
  }
  w[2] = std::conj(w[1]);
  double lambda = max_eig_2x2(w);
  if (scaling == EigScaling::sample_mean) lambda /= K;
  return lambda;
}

}  // namespace

TrialBatch run_batch(Hypothesis hyp, const DerivedParams& derived,
                     const SystemConfig& config, std::uint64_t trials,
                     EigScaling scaling) {
  if (trials < 1) throw std::domain_error("run_batch: trials must be >= 1");
  TrialBatch batch;
  batch.hypothesis = hyp;
  batch.trials = trials;
  batch.seed = config.seed;
  batch.scaling = scaling;
  batch.lambda_samples.resize(trials);

  // precompute the H1 column means and Cholesky factor once
  std::vector<cplx> alpha(config.samples, 0.0);
  double l11 = 0.0, l22 = 0.0;
  cplx l21 = 0.0;
  if (hyp == Hypothesis::H1) {
    const auto ss = sensing_waveform(config.n_tx, config.samples);
    const double amp = std::sqrt(config.rho_s() * derived.p);
    for (int k = 0; k < config.samples; ++k) {
      cplx acc = 0.0;
      for (int m = 0; m < config.n_tx; ++m)
        acc += std::conj(ss[static_cast<size_t>(m) * config.samples + k]) *
               derived.g1[m];
      alpha[k] = amp * acc;
    }
    const double sigma_s2 = config.sigma_s2_mw();
    const double s11 = derived.beta_c2 * std::norm(derived.g2[0]) + sigma_s2;
    const cplx s21 = derived.beta_c2 * derived.g2[1] * std::conj(derived.g2[0]);
    const double s22 = derived.beta_c2 * std::norm(derived.g2[1]) + sigma_s2;
    l11 = std::sqrt(s11);
    l21 = s21 / l11;
    l22 = std::sqrt(s22 - std::norm(l21));
    if (!(l11 > 0.0) || !(l22 > 0.0))
      throw std::runtime_error("run_batch: Cholesky factorization failed");
  }

  const unsigned n_threads =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(trials / 4096 + 1)));
  auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t t = lo; t < hi; ++t) {
      batch.lambda_samples[t] =
          one_trial(hyp, derived, config, t, scaling, alpha, l11, l21, l22);
    }
  };
  if (n_threads == 1) {
    worker(0, trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + n_threads - 1) / n_threads;
    for (unsigned i = 0; i < n_threads; ++i) {
      const std::uint64_t lo = i * chunk;
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, trials);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return batch;
}

double exceed_fraction(const std::vector<double>& sorted_samples, double tau) {
  auto it = std::upper_bound(sorted_samples.begin(), sorted_samples.end(), tau);
  return static_cast<double>(sorted_samples.end() - it) / sorted_samples.size();
}

double wilson_halfwidth(double p_hat, std::uint64_t n) {
  const double z = 1.959963984540054;  // 95%
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  return (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));
}

DetectionCurve empirical_curve(const TrialBatch& batch_h0,
                               const TrialBatch& batch_h1,
                               const std::vector<double>& tau_grid) {
  if (batch_h0.lambda_samples.empty() || batch_h1.lambda_samples.empty())
    throw std::invalid_argument("empirical_curve: empty batch");
  if (!std::is_sorted(tau_grid.begin(), tau_grid.end()))
    throw std::invalid_argument("empirical_curve: tau_grid must be sorted");
  auto s0 = batch_h0.lambda_samples;
  auto s1 = batch_h1.lambda_samples;
  std::sort(s0.begin(), s0.end());
  std::sort(s1.begin(), s1.end());
  DetectionCurve curve;
  curve.points.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    DetectionCurvePoint pt;
    pt.tau = tau;
    pt.p_f = exceed_fraction(s0, tau);
    pt.p_d = exceed_fraction(s1, tau);
    pt.p_f_halfwidth = wilson_halfwidth(pt.p_f, batch_h0.trials);
    pt.p_d_halfwidth = wilson_halfwidth(pt.p_d, batch_h1.trials);
    curve.points.push_back(pt);
  }
  return curve;
}

void dump_lambda_samples(const std::string& path,
                         const std::vector<double>& samples) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  const std::uint32_t magic = 0x4D414C45u;  // "ELAM"
  const std::uint32_t version = 1;
  const std::uint64_t count = samples.size();
  std::fwrite(&magic, 4, 1, f);
  std::fwrite(&version, 4, 1, f);
  std::fwrite(&count, 8, 1, f);
  std::fwrite(samples.data(), 8, samples.size(), f);
  std::fclose(f);
}

std::vector<double> load_lambda_samples(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open for read: " + path);
  std::uint32_t magic = 0, version = 0;
  std::uint64_t count = 0;
  if (std::fread(&magic, 4, 1, f) != 1 || std::fread(&version, 4, 1, f) != 1 ||
      std::fread(&count, 8, 1, f) != 1 || magic != 0x4D414C45u || version != 1) {
    std::fclose(f);
    throw std::runtime_error("bad lambda sample file header: " + path);
  }
  std::vector<double> samples(count);
  const size_t got = std::fread(samples.data(), 8, count, f);
  std::fclose(f);
  if (got != count) throw std::runtime_error("truncated lambda sample file: " + path);
  return samples;
}

}  // namespace isac
