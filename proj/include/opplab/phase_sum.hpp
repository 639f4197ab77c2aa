// Shared engine for exponential sums S(t) = sum_k c_k e^{i t log v_k}.
// Single-t evaluation goes through the double-double phase kernel; uniform
// t-grids use a per-term rotator recurrence restarted on fixed node blocks,
// which keeps scans fast, accurate, and byte-identical for any thread count.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "opplab/dd.hpp"

namespace opplab {

struct PhaseSum {
    struct Term {
        dd::DD logv;
        std::complex<double> coeff;
    };

    std::vector<Term> terms;

    void add_term(double v, std::complex<double> coeff) {
        terms.push_back({dd::log(v), coeff});
    }

    std::complex<double> eval(double t) const;

    // S at nodes t0 + k*dt, k = 0..n-1.  Block size is a fixed constant so
    // the rotator restart points do not depend on the thread count.
    std::vector<std::complex<double>> scan(double t0, double dt, std::size_t n,
                                           int threads = 1) const;

    std::vector<double> scan_abs(double t0, double dt, std::size_t n, int threads = 1) const;

    static constexpr std::size_t kScanBlock = 4096;
};

} // namespace opplab
