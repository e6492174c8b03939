#include "isac/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace isac {

namespace {

// Kronrod 15-point nodes/weights on [-1, 1]; Gauss 7-point weights embedded
// at the odd indices.
constexpr double kKronrodNodes[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr double kKronrodWeights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

constexpr double kGaussWeights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct Panel {
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(mid + h * kKronrodNodes[i]);
    kron += kKronrodWeights[i] * v;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * v;
  }
  kron *= h;
  gauss *= h;
  return {kron, std::fabs(kron - gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth, int max_depth) {
  const Panel p = gk15(f, a, b);
  if (p.error < tol || depth >= max_depth) return p.value;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
         adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_depth) {
  if (!(b > a)) throw std::invalid_argument("integrate_gk: need b > a");
  return adapt(f, a, b, abs_tol, 0, max_depth);
}

double hyp0f1(int n, double z) {
  double sum = 1.0, term = 1.0;
  for (int m = 1; m < 10000; ++m) {
    term *= z / (static_cast<double>(n + m - 1) * m);
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum) && m > 4) break;
  }
  return sum;
}

}  // namespace isac
