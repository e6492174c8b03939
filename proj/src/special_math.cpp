#include "isac/special_math.hpp"

#include <cmath>
#include <limits>

namespace isac {
namespace detail {

double exp1_scaled(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp1_scaled: x must be > 0");
  if (x <= 1.0) {
    // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    constexpr double euler_gamma = 0.57721566490153286060651209008240243;
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 64; ++k) {
      term *= -x / k;
      double add = -term / k;
      sum += add;
      if (std::fabs(add) < 1e-18 * std::fabs(sum) && k > 3) break;
    }
    return std::exp(x) * (-euler_gamma - std::log(x) + sum);
  }
  // Continued fraction (modified Lentz):
  // e^x E1(x) = 1/(x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...))))
  const double tiny = 1e-300;
  double f = tiny, c = f, d = 0.0;
  for (int i = 1; i < 300; ++i) {
    double an = (i == 1) ? 1.0 : -static_cast<double>(i - 1) * (i - 1);
    double bn = x + 2.0 * i - 1.0;
    d = bn + an * d;
    if (d == 0.0) d = tiny;
    c = bn + an / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

double upper_gamma_scaled(int a, double x) {
  if (!(x > 0.0)) throw std::domain_error("upper_gamma_scaled: x must be > 0");
  if (a > 0) throw std::domain_error("upper_gamma_scaled: a must be <= 0");
  double s = exp1_scaled(x);  // a = 0
  for (int aa = 0; aa > a; --aa) {
    // Gamma(a-1, x) = (Gamma(a, x) - x^{a-1} e^{-x}) / (a - 1), scaled by e^x
    s = (s - std::pow(x, aa - 1)) / (aa - 1);
  }
  return s;
}

double lower_gamma_ratio(int n, double x) {
  if (n < 1) throw std::domain_error("lower_gamma_ratio: n must be >= 1");
  if (x == 0.0) return 1.0 / n;
  if (x < 0.0) {
    // M(n, n+1, -x)/n: all-positive series for -x > 0
    const double y = -x;
    double s = 1.0, term = 1.0;
    for (int m = 1; m < 100000; ++m) {
      term *= y / m;
      double add = term * n / (n + m);
      s += add;
      if (add < 1e-17 * s && m > 4) break;
    }
    return s / n;
  }
  if (x <= n + 2.0) {
    // e^{-x} M(1, n+1, x)/n: all-positive series
    double s = 1.0, term = 1.0;
    for (int m = 1; m < 100000; ++m) {
      term *= x / (n + m);
      s += term;
      if (term < 1e-17 * s && m > 4) break;
    }
    return std::exp(-x) * s / n;
  }
  // complement form in logs; e^{-x} sum_{k<n} x^k/k! < 1 with no cancellation
  const double lx = std::log(x);
  double tail = 0.0;
  for (int k = 0; k < n; ++k) {
    tail += std::exp(k * lx - x - std::lgamma(k + 1.0));
  }
  return std::exp(std::lgamma(n) - n * lx) * (1.0 - tail);
}

double log_lower_gamma(int n, double x) {
  if (!(x > 0.0)) throw std::domain_error("log_lower_gamma: x must be > 0");
  return log_lower_gamma_ratio(n, x) + n * std::log(x);
}

double log_lower_gamma_ratio(int n, double x) {
  if (n < 1) throw std::domain_error("log_lower_gamma_ratio: n must be >= 1");
  if (x == 0.0) return -std::log(static_cast<double>(n));
  if (x < 0.0) {
    const double y = -x;
    if (y <= 600.0) return std::log(lower_gamma_ratio(n, x));
    // sum_m y^m/m! n/(n+m) = e^y E[n/(n+X)], X ~ Poisson(y); the Poisson mass
    // outside y +- 12 sqrt(y) is negligible, and the scaled weights are O(1)
    const double half = 12.0 * std::sqrt(y) + 40.0;
    const long m_lo = std::max(0L, static_cast<long>(y - half));
    const long m_hi = static_cast<long>(y + half);
    double s = 0.0;
    for (long m = m_lo; m <= m_hi; ++m) {
      const double lw = m * std::log(y) - std::lgamma(m + 1.0) - y;
      s += std::exp(lw) * (static_cast<double>(n) / (n + m));
    }
    return y + std::log(s) - std::log(static_cast<double>(n));
  }
  if (x <= n + 2.0) {
    double s = 1.0, term = 1.0;
    for (int m = 1; m < 100000; ++m) {
      term *= x / (n + m);
      s += term;
      if (term < 1e-17 * s && m > 4) break;
    }
    return -x + std::log(s) - std::log(static_cast<double>(n));
  }
  // complement form entirely in logs so large n / large x never underflow
  const double lx = std::log(x);
  double tail = 0.0;
  for (int k = 0; k < n; ++k)
    tail += std::exp(k * lx - x - std::lgamma(k + 1.0));
  return std::lgamma(static_cast<double>(n)) - n * lx + std::log1p(-tail);
}

}  // namespace detail

double lower_incomplete_gamma(int n, double x) {
  if (n < 1) throw std::domain_error("lower_incomplete_gamma: n must be >= 1");
  // gamma(n, x) = x^n * (gamma(n, x)/x^n); the ratio is stable everywhere
  return std::pow(x, n) * detail::lower_gamma_ratio(n, x);
}

double exponential_integral_e1(double x) {
  if (!(x > 0.0))
    throw std::domain_error("exponential_integral_e1: x must be > 0");
  return std::exp(-x) * detail::exp1_scaled(x);
}

double upper_incomplete_gamma_int(int a, double x) {
  if (!(x > 0.0))
    throw std::domain_error("upper_incomplete_gamma_int: x must be > 0");
  if (a >= 1) {
    // (a-1)! e^{-x} sum_{k<a} x^k/k!
    double sum = 1.0, term = 1.0;
    for (int k = 1; k < a; ++k) {
      term *= x / k;
      sum += term;
    }
    return std::tgamma(static_cast<double>(a)) * std::exp(-x) * sum;
  }
  return std::exp(-x) * detail::upper_gamma_scaled(a, x);
}

double j_function(int n, double mu) {
  if (n < 1) throw std::domain_error("j_function: n must be >= 1");
  if (!(mu > 0.0)) throw std::domain_error("j_function: mu must be > 0");
  // Scaled Gamma values e^mu Gamma(k-n, mu) for k = 1..n via one downward
  // recurrence pass; each term is O(1/mu) so no overflow at large mu.
  // Kahan summation guards the k-sum.
  double s = detail::exp1_scaled(mu);  // order 0, used when k = n
  double sum = 0.0, comp = 0.0;
  // orders a = k-n run from 0 down to 1-n; accumulate terms as we descend
  for (int a = 0; a >= 1 - n; --a) {
    int k = n + a;
    double term = s * std::pow(mu, n - k);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (a > 1 - n) s = (s - std::pow(mu, a - 1)) / (a - 1);
  }
  return std::tgamma(static_cast<double>(n)) * sum;
}

double c_series(int k, double s, double c, double t, int kk,
                const SeriesControl& ctl) {
  ctl.validate();
  if (k < 0) throw std::domain_error("c_series: k must be >= 0");
  if (s == 0.0) throw std::domain_error("c_series: s must be nonzero");
  if (c < 0.0) throw std::domain_error("c_series: c must be >= 0");
  if (!(t > 0.0)) throw std::domain_error("c_series: t must be > 0");
  if (kk < 1) throw std::domain_error("c_series: Pochhammer order must be >= 1");
  // (st)^{-(k+1)} (c/s)^l gamma(k+l+1, st) = (ct)^l * gamma(k+l+1, st)/(st)^{k+l+1},
  // which removes the sign-alternating powers when s < 0.
  const double st = s * t;
  const double ct = c * t;
  double sum = 0.0, comp = 0.0;
  double coef = 1.0;  // (ct)^l / ((kk)_l l!)
  int small_streak = 0;
  double last_ratio = std::numeric_limits<double>::infinity();
  for (int l = 0; l < ctl.max_terms; ++l) {
    double term = coef * detail::lower_gamma_ratio(k + l + 1, st);
    double y = term - comp;
    double tt = sum + y;
    comp = (tt - sum) - y;
    sum = tt;
    last_ratio = (sum != 0.0) ? std::fabs(term) / std::fabs(sum)
                              : std::numeric_limits<double>::infinity();
    if (last_ratio < ctl.rel_tolerance) {
      if (++small_streak >= 2) return sum;
    } else {
      small_streak = 0;
    }
    coef *= ct / ((static_cast<double>(kk) + l) * (l + 1));
  }
  throw ConvergenceError("c_series: no convergence within max_terms",
                         last_ratio);
}

namespace detail {

double log_c_series(int k, double s, double c, double t, int kk,
                    const SeriesControl& ctl) {
  ctl.validate();
  if (k < 0) throw std::domain_error("log_c_series: k must be >= 0");
  if (s == 0.0) throw std::domain_error("log_c_series: s must be nonzero");
  if (c < 0.0) throw std::domain_error("log_c_series: c must be >= 0");
  if (!(t > 0.0)) throw std::domain_error("log_c_series: t must be > 0");
  if (kk < 1)
    throw std::domain_error("log_c_series: Pochhammer order must be >= 1");
  const double st = s * t;
  const double log_ct = std::log(c * t);  // -inf when c = 0 is fine
  // streaming log-sum-exp: peak tracked by rescaling the partial sum
  double log_coef = 0.0;
  double peak = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  int small_streak = 0;
  double last_ratio = std::numeric_limits<double>::infinity();
  for (int l = 0; l < ctl.max_terms; ++l) {
    const double lt = log_coef + detail::log_lower_gamma_ratio(k + l + 1, st);
    if (lt > peak) {
      acc = acc * std::exp(peak - lt) + 1.0;
      peak = lt;
    } else {
      acc += std::exp(lt - peak);
    }
    last_ratio = std::exp(lt - peak) / acc;
    if (last_ratio < ctl.rel_tolerance) {
      if (++small_streak >= 2) return peak + std::log(acc);
    } else {
      small_streak = 0;
    }
    log_coef += log_ct - std::log((static_cast<double>(kk) + l) * (l + 1.0));
  }
  throw ConvergenceError("log_c_series: no convergence within max_terms",
                         last_ratio);
}

}  // namespace detail

double b_factor(double tau, int K, double sigma_s2) {
  if (!(tau > 0.0)) throw std::domain_error("b_factor: tau must be > 0");
  if (K < 2) throw std::domain_error("b_factor: K must be >= 2");
  if (!(sigma_s2 > 0.0)) throw std::domain_error("b_factor: sigma_s2 must be > 0");
  const double u = tau / sigma_s2;
  // small u: the complement 1 - e^{-u} sum cancels to ~u^K/K!, so use the
  // positive-series ratio instead
  if (u <= K + 2.0) return detail::lower_gamma_ratio(K, u);
  // (K-1)!/u^K - e^{-u} sum_{k<K} (K-1)!/(k! u^{K-k}), factored as
  // (K-1)! u^{-K} (1 - e^{-u} sum_{k<K} u^k/k!)
  double sum = 1.0, term = 1.0;
  for (int k = 1; k < K; ++k) {
    term *= u / k;
    sum += term;
  }
  return std::tgamma(static_cast<double>(K)) * std::pow(u, -K) *
         (1.0 - std::exp(-u) * sum);
}

}  // namespace isac
