#include "opplab/phase_sum.hpp"

#include <algorithm>

#include "opplab/parallel.hpp"

namespace opplab {

std::complex<double> PhaseSum::eval(double t) const {
    std::complex<double> acc{0.0, 0.0};
    for (const Term& term : terms) acc += term.coeff * dd::unit_phase(t, term.logv);
    return acc;
}

std::vector<std::complex<double>> PhaseSum::scan(double t0, double dt, std::size_t n,
                                                 int threads) const {
    std::vector<std::complex<double>> out(n, {0.0, 0.0});
    parallel_for_blocks(n, kScanBlock, threads, [&](std::size_t k0, std::size_t k1) {
        double t_start = t0 + dt * (double)k0;
        for (const Term& term : terms) {
            std::complex<double> z = term.coeff * dd::unit_phase(t_start, term.logv);
            std::complex<double> rot = dd::unit_phase(dt, term.logv);
            for (std::size_t k = k0; k < k1; ++k) {
                out[k] += z;
                z *= rot;
            }
        }
    });
    return out;
}

std::vector<double> PhaseSum::scan_abs(double t0, double dt, std::size_t n,
                                       int threads) const {
    std::vector<std::complex<double>> vals = scan(t0, dt, n, threads);
    std::vector<double> out(n);
    std::transform(vals.begin(), vals.end(), out.begin(),
                   [](std::complex<double> z) { return std::abs(z); });
    return out;
}

} // namespace opplab
