// quadrature.hpp: composite Gauss-Legendre integration with panel doubling

#pragma once

#include <functional>

namespace tricycle {

struct QuadratureSpec {
    double rel_tol{1e-9};
    int initial_panels{64};
    int max_panels{1 << 16};
};

struct QuadratureResult {
    double value;
    int panels;
};

// Integrates f over [a, b] with an 8-point Gauss-Legendre rule on equal
// panels, doubling the panel count until two successive estimates agree to
// spec.rel_tol. Throws ConvergenceError when max_panels is reached first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

} // namespace tricycle
