#pragma once

#include <functional>

namespace isac {

// Adaptive Gauss-Kronrod (G7/K15) integration on [a, b]. Used as the
// independent check against the series implementations; keep it free of any
// special_math dependency.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol = 1e-13, int max_depth = 40);

// 0F1(n; z) by direct series, for oracle integrands.
double hyp0f1(int n, double z);

}  // namespace isac
