#include "opplab/spectral.hpp"

#include <cmath>
#include <numbers>

#include "opplab/io.hpp"
#include "opplab/numeric.hpp"
#include "opplab/parallel.hpp"

namespace opplab::spectral {

void require_log_positivity(const FormParams& params) {
    double n2 = (double)params.n_bound * (double)params.n_bound;
    if (!(params.xi < (1.0 + params.alpha2) * n2 / 16.0))
        throw Error(Errc::positivity_violated,
                    "xi must be < (1 + alpha2) N^2 / 16 for log-form operations");
}

SpectralGrid make_spectral_grid(std::int64_t n_bound, double smoothing_scale,
                                const TransformTable& w2_table, double tail_rel) {
    if (n_bound < 2) throw_validation("n_bound must be >= 2");
    if (!(smoothing_scale > 0.0)) throw_validation("smoothing scale T must be positive");
    double n2 = (double)n_bound * (double)n_bound;
    double dt_bound = std::numbers::pi / (4.0 * std::log(2.0 * n2));

    // Smallest s with tail mass below tail_rel * w2hat(0).
    double peak = std::abs(w2_table.values.at(0));
    double s_star = w2_table.x_end();
    for (double s = 1.0; s < w2_table.x_end(); s += 0.5) {
        if (w2_table.tail_mass(s) < tail_rel * peak) {
            s_star = s;
            break;
        }
    }

    SpectralGrid grid;
    grid.smoothing_scale = smoothing_scale;
    grid.t_max = smoothing_scale * s_star;
    std::size_t intervals = (std::size_t)std::ceil(2.0 * grid.t_max / dt_bound);
    grid.dt = 2.0 * grid.t_max / (double)intervals;
    grid.n_nodes = intervals + 1;
    grid.tail_mass_rel = w2_table.tail_mass(s_star) / peak;
    return grid;
}

PhaseSum f1_terms(const FormParams& params, const WindowSpec& spec) {
    params.validate();
    spec.validate();
    require_log_positivity(params);
    const std::int64_t n = params.n_bound;
    const double dn = (double)n;
    PhaseSum sum;
    for (std::int64_t x1 = n / 4; x1 <= n; ++x1) {
        double w1x = eval_w1(spec, (double)x1 / dn);
        if (w1x == 0.0) continue;
        for (std::int64_t x2 = n / 4; x2 <= n; ++x2) {
            double w2x = eval_w1(spec, (double)x2 / dn);
            if (w2x == 0.0) continue;
            dd::DD v = dd::add(dd::two_prod(params.alpha2, (double)(x2 * x2)),
                               (double)(x1 * x1));
            v = dd::sub(v, params.xi);
            double vd = dd::to_double(v);
            if (!(vd > 0.0))
                throw Error(Errc::positivity_violated,
                            "x1^2 + alpha2 x2^2 - xi <= 0 inside the window support");
            sum.add_term(vd, {w1x * w2x, 0.0});
        }
    }
    return sum;
}

PhaseSum f2_terms(const WindowSpec& spec, std::int64_t n_bound) {
    spec.validate();
    return f2_terms_weighted(n_bound,
                             [&spec](double x) { return eval_w1(spec, x); });
}

PhaseSum f2_terms_weighted(std::int64_t n_bound,
                           const std::function<double(double)>& weight) {
    if (n_bound < 4) throw_validation("n_bound must be >= 4");
    PhaseSum sum;
    const double dn = (double)n_bound;
    for (std::int64_t m = n_bound / 4; m <= n_bound; ++m) {
        if (m < 1) continue;
        double w = weight((double)m / dn);
        if (w == 0.0) continue;
        sum.add_term((double)m, {w, 0.0});
    }
    return sum;
}

std::complex<double> eval_F1(const FormParams& params, const WindowSpec& spec, double t) {
    return f1_terms(params, spec).eval(t);
}

std::complex<double> eval_F2(const WindowSpec& spec, std::int64_t n_bound, double t) {
    return f2_terms(spec, n_bound).eval(t);
}

namespace {

std::vector<SpectrumSample> assemble_spectrum(const PhaseSum& f1, const PhaseSum& f2,
                                              const SpectralGrid& grid, int threads) {
    std::vector<std::complex<double>> f1_vals =
        f1.scan(-grid.t_max, grid.dt, grid.n_nodes, threads);
    std::vector<std::complex<double>> f2_vals =
        f2.scan(-2.0 * grid.t_max, 2.0 * grid.dt, grid.n_nodes, threads);
    std::vector<SpectrumSample> samples(grid.n_nodes);
    for (std::size_t k = 0; k < grid.n_nodes; ++k) {
        samples[k].t = grid.node(k);
        samples[k].f1 = f1_vals[k];
        samples[k].f2 = f2_vals[k];
    }
    return samples;
}

} // namespace

std::vector<SpectrumSample> build_spectrum(const FormParams& params, const WindowSpec& spec,
                                           const SpectralGrid& grid, int threads) {
    return assemble_spectrum(f1_terms(params, spec), f2_terms(spec, params.n_bound), grid,
                             threads);
}

std::vector<SpectrumSample> build_spectrum_weighted(
    const FormParams& params, const WindowSpec& spec, const SpectralGrid& grid,
    const std::function<double(double)>& x3_weight, int threads) {
    return assemble_spectrum(f1_terms(params, spec),
                             f2_terms_weighted(params.n_bound, x3_weight), grid, threads);
}

std::complex<double> integrate_spectrum_kernel(std::span<const SpectrumSample> samples,
                                               const SpectralGrid& grid, double alpha3,
                                               const std::function<double(double)>& kernel) {
    if (samples.size() != grid.n_nodes)
        throw_validation("sample count does not match grid");
    if (!(alpha3 > 0.0)) throw_validation("alpha3 must be positive");
    dd::DD log_a3 = dd::log(alpha3);
    KahanSum re, im;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const SpectrumSample& s = samples[k];
        double kv = kernel(s.t);
        if (kv == 0.0) continue;
        std::complex<double> z =
            s.f1 * std::conj(s.f2) * dd::unit_phase(-s.t, log_a3) * (kv * grid.weight(k));
        re.add(z.real());
        im.add(z.imag());
    }
    double norm = 2.0 * std::numbers::pi * grid.smoothing_scale;
    return {re.value() / norm, im.value() / norm};
}

std::complex<double> integrate_spectrum(std::span<const SpectrumSample> samples,
                                        const SpectralGrid& grid,
                                        const TransformTable& w2_table, double alpha3) {
    return integrate_spectrum_kernel(samples, grid, alpha3, [&](double t) {
        return w2_table.eval_real(t / grid.smoothing_scale);
    });
}

double smoothed_count_direct(const FormParams& params, const WindowSpec& spec,
                             double smoothing_scale, int threads) {
    if (!(smoothing_scale > 0.0)) throw_validation("smoothing scale T must be positive");
    PhaseSum pair_terms = f1_terms(params, spec);
    const std::int64_t n = params.n_bound;
    const double dn = (double)n;
    dd::DD log_a3 = dd::log(params.alpha3);

    std::vector<std::int64_t> x3s;
    for (std::int64_t x3 = n / 4; x3 <= n; ++x3)
        if (x3 >= 1 && eval_w1(spec, (double)x3 / dn) != 0.0) x3s.push_back(x3);

    std::vector<double> slice(x3s.size(), 0.0);
    parallel_for_blocks(x3s.size(), 4, threads, [&](std::size_t k0, std::size_t k1) {
        for (std::size_t k = k0; k < k1; ++k) {
            std::int64_t x3 = x3s[k];
            double w3 = eval_w1(spec, (double)x3 / dn);
            dd::DD shift = dd::add(dd::mul(dd::log((double)x3), 2.0), log_a3);
            KahanSum acc;
            for (const PhaseSum::Term& term : pair_terms.terms) {
                double u = dd::to_double(dd::sub(term.logv, shift));
                double w2v = eval_w2(spec, smoothing_scale * u);
                if (w2v != 0.0) acc.add(term.coeff.real() * w2v);
            }
            slice[k] = w3 * acc.value();
        }
    });
    KahanSum total;
    for (double v : slice) total.add(v);
    return total.value();
}

double smoothed_count_spectral(const FormParams& params, const WindowSpec& spec,
                               const SpectralGrid& grid, const TransformTable& w2_table,
                               int threads) {
    std::vector<SpectrumSample> samples = build_spectrum(params, spec, grid, threads);
    std::complex<double> val = integrate_spectrum(samples, grid, w2_table, params.alpha3);
    double scale = std::max(std::abs(val.real()), 1e-6);
    if (std::abs(val.imag()) > 1e-6 * scale)
        throw Error(Errc::quadrature_imbalance,
                    "spectral integral imaginary part failed to cancel: " +
                        fmt17(val.imag()));
    return val.real();
}

SplitResult split_main_oscillatory(const FormParams& params, const WindowSpec& spec,
                                   const SpectralGrid& grid, const TransformTable& w2_table,
                                   double t_split, int threads) {
    if (!(t_split > 0.0) || !(t_split <= grid.smoothing_scale))
        throw_validation("t_split must lie in (0, T]");
    std::vector<SpectrumSample> samples = build_spectrum(params, spec, grid, threads);
    std::complex<double> main_val =
        integrate_spectrum_kernel(samples, grid, params.alpha3, [&](double t) {
            return w2_table.eval_real(t / t_split);
        });
    std::complex<double> osc_val =
        integrate_spectrum_kernel(samples, grid, params.alpha3, [&](double t) {
            return w2_table.eval_real(t / grid.smoothing_scale) -
                   w2_table.eval_real(t / t_split);
        });
    return {main_val.real(), osc_val.real()};
}

std::complex<double> pole_term(const WindowSpec& spec, std::int64_t n_bound, double t) {
    std::complex<double> residue = windows::mellin_w1_std(spec, {1.0, t});
    return residue * ((double)n_bound * dd::unit_phase(t, dd::log((double)n_bound)));
}

std::string spectrum_to_csv(std::span<const SpectrumSample> samples,
                            const SpectralGrid& grid) {
    CsvWriter csv({"t", "re_f1", "im_f1", "re_f2", "im_f2", "weight"});
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const SpectrumSample& s = samples[k];
        csv.row({fmt17(s.t), fmt17(s.f1.real()), fmt17(s.f1.imag()), fmt17(s.f2.real()),
                 fmt17(s.f2.imag()), fmt17(grid.weight(k))});
    }
    return csv.str();
}

} // namespace opplab::spectral
