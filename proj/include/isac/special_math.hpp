#pragma once

#include <stdexcept>

namespace isac {

// Truncation control for the infinite series in c_series.
struct SeriesControl {
  double rel_tolerance = 1e-12;
  int max_terms = 500;

  void validate() const {
    if (!(rel_tolerance > 0.0 && rel_tolerance < 1e-3))
      throw std::domain_error("SeriesControl: rel_tolerance out of range");
    if (max_terms < 10)
      throw std::domain_error("SeriesControl: max_terms must be >= 10");
  }
};

// Thrown when a series fails to meet its tolerance within max_terms.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_term_ratio)
      : std::runtime_error(what), last_term_ratio_(last_term_ratio) {}
  double last_term_ratio() const { return last_term_ratio_; }

 private:
  double last_term_ratio_;
};

// gamma(n, x) = (n-1)! * (1 - e^{-x} sum_{k<n} x^k/k!), the integer-order
// analytic continuation; equals the integral from 0 to x of z^{n-1} e^{-z}
// for x >= 0. Valid for any real x, n >= 1.
double lower_incomplete_gamma(int n, double x);

// E_1(x) = integral from x to infinity of e^{-t}/t dt, x > 0.
double exponential_integral_e1(double x);

// Gamma(a, x) for integer a of any sign, x > 0.
double upper_incomplete_gamma_int(int a, double x);

// J_n(mu) = (n-1)! e^mu sum_{k=1}^{n} Gamma(k-n, mu) mu^{n-k}.
// Evaluated in scaled form (e^mu folded into the Gamma factors) so large mu
// never overflows. Strictly decreasing in mu.
double j_function(int n, double mu);

// C_k(s, c, t) = (st)^{-(k+1)} sum_{l>=0} (c/s)^l / ((kk)_l l!) gamma(k+l+1, st)
//              = integral from 0 to 1 of e^{-stx} x^k 0F1(kk; ctx) dx.
// kk is the Pochhammer order (the sample count K). s may be negative.
double c_series(int k, double s, double c, double t, int kk,
                const SeriesControl& ctl = SeriesControl{});

// B_K(tau) = (K-1)!/u^K - e^{-u} sum_{k<K} (K-1)!/(k! u^{K-k}), u = tau/sigma_s2.
// Equals gamma(K, u) u^{-K}.
double b_factor(double tau, int K, double sigma_s2);

namespace detail {

// gamma(n, x) / x^n = integral from 0 to 1 of t^{n-1} e^{-xt} dt.
// Stable for all real x including small and negative arguments where the
// complement form 1 - e^{-x} sum cancels.
double lower_gamma_ratio(int n, double x);

// ln gamma(n, x) for x > 0.
double log_lower_gamma(int n, double x);

// ln of lower_gamma_ratio(n, x); never overflows, valid for any real x.
double log_lower_gamma_ratio(int n, double x);

// ln of c_series(k, s, c, t, kk); all series terms are positive for any sign
// of s, so the sum is taken in the log domain and never overflows. Used by
// the H1 CDF where huge exp factors cancel across terms.
double log_c_series(int k, double s, double c, double t, int kk,
                    const SeriesControl& ctl = SeriesControl{});

// e^x E_1(x), x > 0. No overflow for large x.
double exp1_scaled(double x);

// e^x Gamma(a, x) for integer a <= 0, x > 0.
double upper_gamma_scaled(int a, double x);

}  // namespace detail

}  // namespace isac
