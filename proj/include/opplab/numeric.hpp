// Small numeric utilities: compensated summation, medians, and the
// ordinary-least-squares line fit used by every log-log exponent estimate.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "opplab/errors.hpp"

namespace opplab {

// Neumaier compensated accumulator.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
    KahanSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

inline double median(std::vector<double> xs) {
    if (xs.empty()) throw_validation("median of empty sample");
    std::sort(xs.begin(), xs.end());
    std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

inline double mean(std::span<const double> xs) {
    if (xs.empty()) throw_validation("mean of empty sample");
    KahanSum acc;
    for (double x : xs) acc.add(x);
    return acc.value() / (double)xs.size();
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double rss = 0.0;
    std::vector<double> residuals;
};

// OLS fit y ~ intercept + slope * x.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw_validation("fit_line needs >= 2 matched points");
    std::size_t n = x.size();
    double xb = mean(x), yb = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xb) * (x[i] - xb);
        sxy += (x[i] - xb) * (y[i] - yb);
    }
    if (sxx == 0.0) throw_validation("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = yb - fit.slope * xb;
    fit.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
        fit.rss += fit.residuals[i] * fit.residuals[i];
    }
    fit.stderr_slope = n > 2 ? std::sqrt(fit.rss / (double)(n - 2) / sxx) : 0.0;
    return fit;
}

} // namespace opplab
