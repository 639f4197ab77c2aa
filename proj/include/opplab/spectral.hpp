// The smoothed-count machinery: F1, F2, the direct triple sum, the spectral
// integral that must reproduce it, the main/oscillatory kernel split, and
// the zeta-pole approximation of F2.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "opplab/forms.hpp"
#include "opplab/phase_sum.hpp"
#include "opplab/windows.hpp"

namespace opplab::spectral {

using forms::FormParams;
using windows::TransformTable;
using windows::WindowSpec;

// Uniform trapezoid grid over [-t_max, t_max].  Spacing oversamples the
// fastest integrand oscillation (phase derivative <= log(2N^2)) by >= 8x;
// truncation is placed where the recorded w2-hat tail mass is negligible.
struct SpectralGrid {
    double smoothing_scale = 0.0; // T
    double t_max = 0.0;
    double dt = 0.0;
    std::size_t n_nodes = 0;
    double tail_mass_rel = 0.0; // recorded tail mass beyond t_max, relative to w2hat(0)

    double node(std::size_t k) const { return -t_max + dt * (double)k; }
    double weight(std::size_t k) const {
        return (k == 0 || k + 1 == n_nodes) ? 0.5 * dt : dt;
    }
};

SpectralGrid make_spectral_grid(std::int64_t n_bound, double smoothing_scale,
                                const TransformTable& w2_table, double tail_rel = 1e-8);

// One grid node; f2 is evaluated at the doubled frequency, matching the
// integrand F1(t) conj(F2(2t)).
struct SpectrumSample {
    double t = 0.0;
    std::complex<double> f1{0.0, 0.0};
    std::complex<double> f2{0.0, 0.0};
};

// Log-form operations need x1^2 + alpha2 x2^2 - xi > 0 on the window
// support, i.e. xi < (1 + alpha2) N^2 / 16.
void require_log_positivity(const FormParams& params);

// Term lists shared by the single-t evaluators and the grid scans.
PhaseSum f1_terms(const FormParams& params, const WindowSpec& spec);
PhaseSum f2_terms(const WindowSpec& spec, std::int64_t n_bound);
PhaseSum f2_terms_weighted(std::int64_t n_bound,
                           const std::function<double(double)>& weight);

std::complex<double> eval_F1(const FormParams& params, const WindowSpec& spec, double t);
std::complex<double> eval_F2(const WindowSpec& spec, std::int64_t n_bound, double t);

std::vector<SpectrumSample> build_spectrum(const FormParams& params, const WindowSpec& spec,
                                           const SpectralGrid& grid, int threads = 1);

// Variant with a custom weight in the x3 slot (replaces w1 inside F2).
std::vector<SpectrumSample> build_spectrum_weighted(
    const FormParams& params, const WindowSpec& spec, const SpectralGrid& grid,
    const std::function<double(double)>& x3_weight, int threads = 1);

// (1/(2 pi T)) sum_k w_k kernel(t_k) f1 conj(f2) e^{-i t_k log alpha3}.
// The 2 pi comes from inverting the e^{-ist} transform convention.
std::complex<double> integrate_spectrum_kernel(std::span<const SpectrumSample> samples,
                                               const SpectralGrid& grid, double alpha3,
                                               const std::function<double(double)>& kernel);

// kernel = w2hat(t / T) from the cached table.
std::complex<double> integrate_spectrum(std::span<const SpectrumSample> samples,
                                        const SpectralGrid& grid,
                                        const TransformTable& w2_table, double alpha3);

// Exact O(N^3) reference: sum of w1 w1 w1 * w2(T u) with
// u = log(x1^2 + alpha2 x2^2 - xi) - 2 log x3 - log alpha3.
double smoothed_count_direct(const FormParams& params, const WindowSpec& spec,
                             double smoothing_scale, int threads = 1);

// Same quantity through the spectral integral; throws QuadratureImbalance
// if the imaginary part fails to cancel.
double smoothed_count_spectral(const FormParams& params, const WindowSpec& spec,
                               const SpectralGrid& grid, const TransformTable& w2_table,
                               int threads = 1);

struct SplitResult {
    double main_part = 0.0;
    double oscillatory = 0.0;
};

// Splits the kernel as w2hat(t/t_split) + [w2hat(t/T) - w2hat(t/t_split)].
SplitResult split_main_oscillatory(const FormParams& params, const WindowSpec& spec,
                                   const SpectralGrid& grid, const TransformTable& w2_table,
                                   double t_split, int threads = 1);

// Residue term of the F2 line shift: (int w1(x) x^{it} dx) * N^{1+it}.
std::complex<double> pole_term(const WindowSpec& spec, std::int64_t n_bound, double t);

std::string spectrum_to_csv(std::span<const SpectrumSample> samples,
                            const SpectralGrid& grid);

} // namespace opplab::spectral
