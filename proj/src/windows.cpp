#include "opplab/windows.hpp"

#include <cmath>

#include "opplab/io.hpp"
#include "opplab/numeric.hpp"
#include "opplab/parallel.hpp"
#include "opplab/quadrature.hpp"

namespace opplab::windows {

double smooth_step(const WindowSpec& spec, double u) {
    if (!(u > 0.0)) return 0.0;
    if (u >= 1.0) return 1.0;
    // g(u)/(g(u)+g(1-u)) with g(u) = exp(-s/u), rearranged for stability.
    double e = spec.ramp_sharpness * (1.0 / u - 1.0 / (1.0 - u));
    return 1.0 / (1.0 + std::exp(e));
}

double eval_w1(const WindowSpec& spec, double x) {
    if (!(x > WindowSpec::w1_support_lo) || !(x < WindowSpec::w1_support_hi)) return 0.0;
    if (x >= WindowSpec::w1_plateau_lo && x <= WindowSpec::w1_plateau_hi) return 1.0;
    if (x < WindowSpec::w1_plateau_lo)
        return smooth_step(spec, (x - WindowSpec::w1_support_lo) /
                                     (WindowSpec::w1_plateau_lo - WindowSpec::w1_support_lo));
    return smooth_step(spec, (WindowSpec::w1_support_hi - x) /
                                 (WindowSpec::w1_support_hi - WindowSpec::w1_plateau_hi));
}

double eval_w2(const WindowSpec& spec, double t) {
    double a = std::abs(t);
    if (!(a < WindowSpec::w2_support)) return 0.0;
    if (a <= WindowSpec::w2_plateau) return 1.0;
    return smooth_step(spec, WindowSpec::w2_support - a);
}

double fourier_w2(const WindowSpec& spec, double s) {
    spec.validate();
    auto integrand = [&](double t) -> std::complex<double> {
        return eval_w2(spec, t) * std::complex<double>(std::cos(s * t), -std::sin(s * t));
    };
    std::complex<double> val =
        gl_adaptive(integrand, -WindowSpec::w2_support, WindowSpec::w2_support);
    if (std::abs(val.imag()) >= 1e-12)
        throw Error(Errc::quadrature_imbalance,
                    "fourier_w2: imaginary part " + fmt17(val.imag()) + " above 1e-12");
    return val.real();
}

std::complex<double> mellin_w1(const WindowSpec& spec, std::complex<double> s) {
    if (s == std::complex<double>(0.0, 0.0))
        throw_validation("mellin_w1: s = 0 is outside the 1/s normalization");
    spec.validate();
    auto integrand = [&](double x) -> std::complex<double> {
        return eval_w1(spec, x) * std::exp(s * std::log(x));
    };
    std::complex<double> val =
        gl_adaptive(integrand, WindowSpec::w1_support_lo, WindowSpec::w1_support_hi);
    return val / s;
}

std::complex<double> mellin_w1_std(const WindowSpec& spec, std::complex<double> s) {
    spec.validate();
    auto integrand = [&](double x) -> std::complex<double> {
        return eval_w1(spec, x) * std::exp((s - 1.0) * std::log(x));
    };
    return gl_adaptive(integrand, WindowSpec::w1_support_lo, WindowSpec::w1_support_hi);
}

double TransformTable::eval_real(double s) const {
    return eval_complex(s).real();
}

std::complex<double> TransformTable::eval_complex(double s) const {
    if (kind == Kind::fourier_w2) s = std::abs(s);
    std::size_t n = values.size();
    if (n < 4) throw_validation("transform table too small");
    double u = (s - x0) / dx;
    if (kind == Kind::fourier_w2 && u > (double)(n - 1)) return {0.0, 0.0};
    if (u < 0.0) u = 0.0;
    if (u > (double)(n - 1)) u = (double)(n - 1);
    // 4-point Lagrange stencil centered on the bracketing interval.
    std::ptrdiff_t i = (std::ptrdiff_t)u - 1;
    if (i < 0) i = 0;
    if (i > (std::ptrdiff_t)n - 4) i = (std::ptrdiff_t)n - 4;
    double r = u - (double)i; // in [0, 3]
    double c0 = -(r - 1.0) * (r - 2.0) * (r - 3.0) / 6.0;
    double c1 = r * (r - 2.0) * (r - 3.0) / 2.0;
    double c2 = -r * (r - 1.0) * (r - 3.0) / 2.0;
    double c3 = r * (r - 1.0) * (r - 2.0) / 6.0;
    return c0 * values[(std::size_t)i] + c1 * values[(std::size_t)i + 1] +
           c2 * values[(std::size_t)i + 2] + c3 * values[(std::size_t)i + 3];
}

double TransformTable::tail_mass(double s) const {
    KahanSum acc;
    std::size_t n = values.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double x_hi = x0 + dx * (double)(k + 1);
        if (x_hi <= s) continue;
        acc.add(0.5 * dx * (std::abs(values[k]) + std::abs(values[k + 1])));
    }
    return acc.value();
}

std::string TransformTable::to_csv() const {
    CsvWriter csv({"abscissa", "real", "imag"});
    for (std::size_t k = 0; k < values.size(); ++k) {
        double x = x0 + dx * (double)k;
        csv.row({fmt17(x), fmt17(values[k].real()), fmt17(values[k].imag())});
    }
    return csv.str();
}

namespace {

// Locate where |w2hat| has decayed below floor_rel * w2hat(0) and stays there.
double find_fourier_cutoff(const WindowSpec& spec, double floor_rel) {
    double peak = fourier_w2(spec, 0.0);
    double probe = 0.5;
    for (double s_end = 8.0; s_end <= 512.0; s_end += 8.0) {
        bool quiet = true;
        for (double s = s_end - 8.0 + probe; s <= s_end; s += probe) {
            if (std::abs(fourier_w2(spec, s)) >= floor_rel * peak) {
                quiet = false;
                break;
            }
        }
        if (quiet) return s_end;
    }
    throw Error(Errc::quadrature_not_converged, "fourier_w2 tail did not decay by s = 512");
}

} // namespace

TransformTable build_fourier_w2_table(const WindowSpec& spec, double tol, int threads) {
    spec.validate();
    double s_end = find_fourier_cutoff(spec, 1e-14);
    TransformTable table;
    table.kind = TransformTable::Kind::fourier_w2;
    table.x0 = 0.0;
    for (double h = 1.0 / 64.0; h >= 1.0 / 4096.0; h /= 2.0) {
        std::size_t n = (std::size_t)std::ceil(s_end / h) + 1;
        table.dx = h;
        table.values.assign(n, {0.0, 0.0});
        parallel_for_blocks(n, 64, threads, [&](std::size_t k0, std::size_t k1) {
            for (std::size_t k = k0; k < k1; ++k)
                table.values[k] = {fourier_w2(spec, h * (double)k), 0.0};
        });
        // Interpolation error probed at midpoints; densest where curvature is.
        double worst = 0.0;
        std::size_t stride = n > 512 ? n / 256 : 1;
        for (std::size_t k = 1; k + 2 < n; k += stride) {
            double s = table.x0 + h * ((double)k + 0.5);
            worst = std::max(worst, std::abs(table.eval_real(s) - fourier_w2(spec, s)));
        }
        table.err_estimate = worst;
        if (worst <= tol) return table;
    }
    throw Error(Errc::quadrature_not_converged,
                "fourier_w2 table refinement failed to reach tolerance");
}

TransformTable build_mellin_w1_table(const WindowSpec& spec, double sigma, double t_lo,
                                     double t_hi, std::size_t n, int threads) {
    if (n < 4) throw_validation("mellin table needs >= 4 nodes");
    if (!(t_hi > t_lo)) throw_validation("mellin table range is empty");
    TransformTable table;
    table.kind = TransformTable::Kind::mellin_w1;
    table.x0 = t_lo;
    table.dx = (t_hi - t_lo) / (double)(n - 1);
    table.values.assign(n, {0.0, 0.0});
    parallel_for_blocks(n, 16, threads, [&](std::size_t k0, std::size_t k1) {
        for (std::size_t k = k0; k < k1; ++k) {
            std::complex<double> s(sigma, t_lo + table.dx * (double)k);
            table.values[k] = mellin_w1(spec, s);
        }
    });
    table.err_estimate = 1e-12;
    return table;
}

} // namespace opplab::windows
