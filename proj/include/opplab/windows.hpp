// Smooth bump windows w1, w2 with exact plateau/support endpoints, plus
// their Fourier/Mellin transforms by quadrature and a cached interpolation
// table for the Fourier kernel (evaluated ~1e5-1e6 times per spectral run).

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "opplab/errors.hpp"

namespace opplab::windows {

// w1: 1 on [1/2, 3/4], supported in [1/4, 1].
// w2: 1 on [-1, 1], supported in [-2, 2], even.
struct WindowSpec {
    double ramp_sharpness = 1.0;

    static constexpr double w1_support_lo = 0.25;
    static constexpr double w1_plateau_lo = 0.50;
    static constexpr double w1_plateau_hi = 0.75;
    static constexpr double w1_support_hi = 1.00;
    static constexpr double w2_plateau = 1.0;
    static constexpr double w2_support = 2.0;

    void validate() const {
        if (!(ramp_sharpness > 0.0)) throw_validation("ramp_sharpness must be positive");
    }
};

// C^inf step built from g(u) = exp(-s/u): 0 for u <= 0, 1 for u >= 1.
double smooth_step(const WindowSpec& spec, double u);

double eval_w1(const WindowSpec& spec, double x);
double eval_w2(const WindowSpec& spec, double t);

// Fourier transform \int w2(t) e^{-i s t} dt; real by symmetry.
double fourier_w2(const WindowSpec& spec, double s);

// Mellin transform in the 1/s normalization: \int_0^inf w1(x) x^s dx / s.
std::complex<double> mellin_w1(const WindowSpec& spec, std::complex<double> s);

// Standard Mellin transform \int_0^inf w1(x) x^{s-1} dx; this is the object
// whose value at 1+it is the residue term in the F2 line-shift.
std::complex<double> mellin_w1_std(const WindowSpec& spec, std::complex<double> s);

struct TransformTable {
    enum class Kind { fourier_w2, mellin_w1 };

    Kind kind = Kind::fourier_w2;
    double x0 = 0.0;
    double dx = 0.0;
    std::vector<std::complex<double>> values;
    double err_estimate = 0.0; // recorded max interpolation error on midpoints
    int interpolation_order = 3;

    double x_end() const { return x0 + dx * (double)(values.size() - 1); }

    // Cubic interpolation.  For fourier_w2 the argument is folded to |s| and
    // values beyond the table end (where the recorded tail is negligible)
    // evaluate to 0.
    double eval_real(double s) const;
    std::complex<double> eval_complex(double s) const;

    // Integral of |values| over [s, x_end] on the table grid.
    double tail_mass(double s) const;

    std::string to_csv() const;
};

// Samples w2-hat on a uniform grid out to where it has decayed below
// ~1e-14 of its peak, refining the spacing until the recorded cubic
// interpolation error is below tol.
TransformTable build_fourier_w2_table(const WindowSpec& spec, double tol = 1e-9,
                                      int threads = 1);

// Samples the 1/s-normalized Mellin transform along Re s = sigma.
TransformTable build_mellin_w1_table(const WindowSpec& spec, double sigma, double t_lo,
                                     double t_hi, std::size_t n, int threads = 1);

} // namespace opplab::windows
