#include "isac/system_model.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace isac {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double SystemConfig::total_power_mw() const { return dbm_to_mw(total_power_dbm); }
double SystemConfig::sigma_c2_mw() const { return dbm_to_mw(sigma_c2_dbm); }
double SystemConfig::sigma_s2_mw() const { return dbm_to_mw(sigma_s2_dbm); }

void SystemConfig::validate() const {
  if (n_tx < 1) throw ConfigError("n_tx must be >= 1");
  if (n_rx_comm != 2) throw ConfigError("n_rx_comm is fixed at 2");
  if (n_rx_sense != 2) throw ConfigError("n_rx_sense is fixed at 2");
  if (samples < 2) throw ConfigError("samples must be >= 2");
  if (samples < n_tx) throw ConfigError("samples must be >= n_tx");
  if (!(rho_c >= 0.0 && rho_c <= 1.0)) throw ConfigError("rho_c must be in [0,1]");
  if (!(gain_t > 0.0)) throw ConfigError("gain_t must be > 0");
  if (!(gain_r > 0.0)) throw ConfigError("gain_r must be > 0");
  if (!(comm_channel_var > 0.0)) throw ConfigError("comm_channel_var must be > 0");
}

std::vector<cplx> steering_vector(double theta, double gain, int n) {
  if (n < 1) throw std::domain_error("steering_vector: n must be >= 1");
  if (!(gain > 0.0)) throw std::domain_error("steering_vector: gain must be > 0");
  std::vector<cplx> g(n);
  const double amp = std::sqrt(gain);
  const double phase_step = -std::numbers::pi * std::sin(theta);
  for (int m = 0; m < n; ++m) {
    g[m] = std::polar(amp, phase_step * m);
  }
  return g;
}

std::vector<cplx> sensing_waveform(int n_tx, int samples) {
  if (n_tx < 1) throw std::domain_error("sensing_waveform: n_tx must be >= 1");
  if (samples < n_tx)
    throw ConfigError("sensing_waveform: samples < n_tx, orthogonal rows impossible");
  // DFT rows: S(m,k) = e^{-2 pi i m k / K}. Unit modulus, Ss Ss^H = K I.
  std::vector<cplx> s(static_cast<size_t>(n_tx) * samples);
  const double w = -2.0 * std::numbers::pi / samples;
  for (int m = 0; m < n_tx; ++m) {
    for (int k = 0; k < samples; ++k) {
      s[static_cast<size_t>(m) * samples + k] = std::polar(1.0, w * m * k);
    }
  }
  return s;
}

DerivedParams derive(const SystemConfig& config) {
  config.validate();
  DerivedParams d;
  d.g1 = steering_vector(config.theta_t, config.gain_t, config.n_tx);
  d.g2 = steering_vector(config.theta_r, config.gain_r, 2);

  const double P = config.total_power_mw();
  const double sigma_s2 = config.sigma_s2_mw();
  d.p = P / (2.0 * config.n_tx);

  double g1_norm2 = 0.0;
  for (const auto& v : d.g1) g1_norm2 += std::norm(v);
  d.g2_norm2 = 0.0;
  for (const auto& v : d.g2) d.g2_norm2 += std::norm(v);

  // With orthogonal rows, g1^H Ss Ss^H g1 = K |g1|^2 exactly.
  const double beam_energy = config.samples * g1_norm2;

  d.beta_c2 = config.rho_c * d.p * g1_norm2;
  d.alpha_norm2 = config.rho_s() * d.p * beam_energy;
  d.a = d.alpha_norm2 * d.g2_norm2;
  d.b = sigma_s2 + d.beta_c2 * d.g2_norm2;
  d.omega_trace = d.alpha_norm2 * d.g2_norm2 / d.b;
  return d;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

SystemConfig parse_config(const std::string& text) {
  SystemConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "n_tx") cfg.n_tx = std::stoi(val);
      else if (key == "n_rx_comm") cfg.n_rx_comm = std::stoi(val);
      else if (key == "n_rx_sense") cfg.n_rx_sense = std::stoi(val);
      else if (key == "samples") cfg.samples = std::stoi(val);
      else if (key == "total_power_dbm") cfg.total_power_dbm = std::stod(val);
      else if (key == "rho_c") cfg.rho_c = std::stod(val);
      else if (key == "sigma_c2_dbm") cfg.sigma_c2_dbm = std::stod(val);
      else if (key == "sigma_s2_dbm") cfg.sigma_s2_dbm = std::stod(val);
      else if (key == "theta_t") cfg.theta_t = std::stod(val);
      else if (key == "theta_r") cfg.theta_r = std::stod(val);
      else if (key == "gain_t") cfg.gain_t = std::stod(val);
      else if (key == "gain_r") cfg.gain_r = std::stod(val);
      else if (key == "comm_channel_var") cfg.comm_channel_var = std::stod(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": bad value for '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const SystemConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "n_tx = " << c.n_tx << "\n"
      << "n_rx_comm = " << c.n_rx_comm << "\n"
      << "n_rx_sense = " << c.n_rx_sense << "\n"
      << "samples = " << c.samples << "\n"
      << "total_power_dbm = " << c.total_power_dbm << "\n"
      << "rho_c = " << c.rho_c << "\n"
      << "sigma_c2_dbm = " << c.sigma_c2_dbm << "\n"
      << "sigma_s2_dbm = " << c.sigma_s2_dbm << "\n"
      << "theta_t = " << c.theta_t << "\n"
      << "theta_r = " << c.theta_r << "\n"
      << "gain_t = " << c.gain_t << "\n"
      << "gain_r = " << c.gain_r << "\n"
      << "comm_channel_var = " << c.comm_channel_var << "\n"
      << "seed = " << c.seed << "\n";
  return out.str();
}

}  // namespace isac
