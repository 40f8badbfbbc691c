#include "tricycle/quadrature.hpp"

#include "tricycle/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tricycle {

namespace {

constexpr int kOrder = 8;

struct Rule {
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};
};

// Roots of P_8 by Newton iteration from the Chebyshev guesses.
Rule make_rule() {
    Rule r;
    for (int i = 0; i < kOrder; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= kOrder; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const Rule& rule() {
    static const Rule r = make_rule();
    return r;
}

double composite(const std::function<double(double)>& f, double a, double b, int panels) {
    const Rule& r = rule();
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double local = 0.0;
        for (int i = 0; i < kOrder; ++i) local += r.weights[i] * f(mid + 0.5 * h * r.nodes[i]);
        sum += 0.5 * h * local;
    }
    return sum;
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
    int panels = spec.initial_panels;
    double prev = composite(f, a, b, panels);
    while (panels < spec.max_panels) {
        panels *= 2;
        const double next = composite(f, a, b, panels);
        const double diff = std::abs(next - prev);
        if (diff <= spec.rel_tol * std::abs(next) || diff == 0.0) return {next, panels};
        prev = next;
    }
    std::ostringstream os;
    os << "quadrature did not reach relative tolerance " << spec.rel_tol << " with " << panels
       << " panels";
    throw ConvergenceError(os.str());
}

} // namespace tricycle
