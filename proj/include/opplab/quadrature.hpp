// Composite Gauss-Legendre quadrature with panel-doubling refinement.
// Callers get a hard QuadratureNotConverged error instead of a silently
// inaccurate value when refinement stalls.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "opplab/errors.hpp"
#include "opplab/numeric.hpp"

namespace opplab {

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1], computed by
// Newton iteration on the Legendre polynomial.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussRule(int n) {
        nodes.resize((std::size_t)n);
        weights.resize((std::size_t)n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[(std::size_t)i] = x;
            weights[(std::size_t)i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussRule& gauss16() {
    static const GaussRule rule(16);
    return rule;
}

template <typename F>
auto gl_panels(F&& f, double a, double b, int panels) {
    const GaussRule& rule = gauss16();
    using R = decltype(f(a));
    R total{};
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        double mid = lo + 0.5 * h;
        R acc{};
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        total += acc * (0.5 * h);
    }
    return total;
}

// Doubles the panel count until two successive composite rules agree to
// `tol` relative to max(1, |I|).
template <typename F>
auto gl_adaptive(F&& f, double a, double b, double tol = 1e-12, int max_panels = 1 << 13) {
    auto prev = gl_panels(f, a, b, 2);
    for (int panels = 4; panels <= max_panels; panels *= 2) {
        auto cur = gl_panels(f, a, b, panels);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw Error(Errc::quadrature_not_converged, "gl_adaptive: refinement stalled");
}

// Uniform trapezoid rule; used as the independent cross-check and for the
// long oscillatory t-integrals where the grid spacing is fixed elsewhere.
template <typename F>
auto trapezoid(F&& f, double a, double b, int intervals) {
    using R = decltype(f(a));
    double h = (b - a) / intervals;
    R acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < intervals; ++i) acc += f(a + i * h);
    return acc * h;
}

} // namespace opplab
