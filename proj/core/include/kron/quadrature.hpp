#pragma once

#include <cmath>
#include <functional>

namespace kron {

// Adaptive Simpson quadrature of f over [a, b] to the given absolute
// tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tolerance);

}  // namespace kron
