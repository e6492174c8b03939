#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace isac {

using cplx = std::complex<double>;

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario parameters. Powers in dBm, angles in radians.
struct SystemConfig {
  int n_tx = 2;             // transmit antennas N_t
  int n_rx_comm = 2;        // fixed at 2
  int n_rx_sense = 2;       // fixed at 2
  int samples = 10;         // K, snapshots per coherence block
  double total_power_dbm = 8.0;
  double rho_c = 0.9;       // communication power fraction, [0,1]
  double sigma_c2_dbm = 0.0;
  double sigma_s2_dbm = 0.0;
  double theta_t = 0.5235987755982988;  // pi/6
  double theta_r = 0.5235987755982988;
  double gain_t = 1.0;      // a_t
  double gain_r = 1.0;      // a_r
  double comm_channel_var = 1.0;  // variance of H_c entries, absorbs path loss
  std::uint64_t seed = 20250823;

  double rho_s() const { return 1.0 - rho_c; }
  double total_power_mw() const;
  double sigma_c2_mw() const;
  double sigma_s2_mw() const;

  void validate() const;
};

// Scalars derived from the scenario, all in linear (mW) units.
struct DerivedParams {
  std::vector<cplx> g1;  // transmit steering, length N_t
  std::vector<cplx> g2;  // receive steering, length 2
  double p = 0.0;        // per-branch power P/(2 N_t)
  double beta_c2 = 0.0;  // rho_c p |g1|^2
  double a = 0.0;        // rho_s p (g1^H Ss Ss^H g1)(g2^H g2)
  double b = 0.0;        // sigma_s2 + beta_c2 |g2|^2
  double omega_trace = 0.0;  // trace of the non-centrality, = a/b
  double alpha_norm2 = 0.0;  // |alpha_s|^2
  double g2_norm2 = 0.0;     // |g2|^2 = 2 a_r
};

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

// Entry m (0-based) is sqrt(gain) e^{-j pi m sin(theta)}.
std::vector<cplx> steering_vector(double theta, double gain, int n);

// Deterministic constant-modulus N_t x K waveform with orthogonal rows,
// Ss Ss^H = K I. Row-major: element (m, k) at m*samples + k.
std::vector<cplx> sensing_waveform(int n_tx, int samples);

DerivedParams derive(const SystemConfig& config);

// Flat key-value config file (key = value, '#' comments). Keys must match
// SystemConfig field names exactly; unknown keys are a hard error.
SystemConfig load_config(const std::string& path);
SystemConfig parse_config(const std::string& text);
std::string dump_config(const SystemConfig& config);

}  // namespace isac
