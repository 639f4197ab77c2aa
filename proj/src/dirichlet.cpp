#include "opplab/dirichlet.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "opplab/errors.hpp"
#include "opplab/io.hpp"
#include "opplab/numeric.hpp"
#include "opplab/rng.hpp"

namespace opplab::dirichlet {

void DirichletPoly::validate() const {
    if (n_lo < 1) throw_validation("n_lo must be >= 1");
    if (n_hi <= n_lo) throw_validation("n_hi must exceed n_lo");
    if (coeffs.size() != size()) throw_validation("coefficient count must match range");
    for (const auto& c : coeffs)
        if (std::abs(c) > 1.0 + 1e-12) throw_validation("|a_n| must be <= 1");
}

DirichletPoly rademacher_poly(std::int64_t n_lo, std::int64_t n_hi, std::uint64_t seed) {
    DirichletPoly poly{n_lo, n_hi, {}};
    poly.coeffs.reserve((std::size_t)(n_hi - n_lo));
    for (std::int64_t n = n_lo; n < n_hi; ++n) {
        SplitMix64 stream = split_stream(seed, (std::uint64_t)n);
        poly.coeffs.push_back({(double)stream.next_sign(), 0.0});
    }
    poly.validate();
    return poly;
}

DirichletPoly unit_poly(std::int64_t n_lo, std::int64_t n_hi) {
    DirichletPoly poly{n_lo, n_hi, {}};
    poly.coeffs.assign((std::size_t)(n_hi - n_lo), {1.0, 0.0});
    poly.validate();
    return poly;
}

PhaseSum poly_terms(const DirichletPoly& poly) {
    poly.validate();
    PhaseSum sum;
    sum.terms.reserve(poly.size());
    for (std::int64_t n = poly.n_lo; n < poly.n_hi; ++n)
        sum.add_term((double)n, poly.coeffs[(std::size_t)(n - poly.n_lo)]);
    return sum;
}

PhaseSum hn_terms(std::int64_t n_bound) {
    if (n_bound < 1) throw_validation("n_bound must be >= 1");
    PhaseSum sum;
    for (std::int64_t n = n_bound; n < 2 * n_bound; ++n) sum.add_term((double)n, {1.0, 0.0});
    return sum;
}

PhaseSum epstein_terms(double alpha, std::int64_t n_bound) {
    if (!(alpha > 0.0)) throw_validation("alpha must be positive");
    if (n_bound < 4) throw_validation("n_bound must be >= 4");
    PhaseSum sum;
    sum.terms.reserve((std::size_t)(n_bound * n_bound));
    for (std::int64_t m = n_bound; m < 2 * n_bound; ++m)
        for (std::int64_t n = n_bound; n < 2 * n_bound; ++n) {
            dd::DD v = dd::add(dd::two_prod(alpha, (double)(n * n)), (double)(m * m));
            sum.add_term(dd::to_double(v), {1.0, 0.0});
        }
    return sum;
}

std::complex<double> eval_S(const DirichletPoly& poly, double t) {
    return poly_terms(poly).eval(t);
}

std::complex<double> eval_H(std::int64_t n_bound, double t) {
    return hn_terms(n_bound).eval(t);
}

std::complex<double> eval_epstein_sum(double alpha, std::int64_t n_bound, double t) {
    return epstein_terms(alpha, n_bound).eval(t);
}

double mean_square_samples(std::span<const double> abs_samples, double dt) {
    if (abs_samples.size() < 2) throw_validation("mean_square needs >= 2 samples");
    KahanSum acc;
    for (std::size_t k = 0; k < abs_samples.size(); ++k) {
        double w = (k == 0 || k + 1 == abs_samples.size()) ? 0.5 : 1.0;
        acc.add(w * abs_samples[k] * abs_samples[k]);
    }
    return dt * acc.value();
}

double mean_square_terms(const PhaseSum& terms, double log_v_max, double T, double dt,
                         int threads) {
    if (!(T > 0.0) || !(dt > 0.0)) throw_validation("T and dt must be positive");
    double dt_bound = std::numbers::pi / (4.0 * log_v_max);
    if (dt > dt_bound)
        throw_validation("dt must be <= pi / (4 log v_max) to resolve oscillations");
    std::size_t intervals = (std::size_t)std::ceil(2.0 * T / dt);
    double dt_eff = 2.0 * T / (double)intervals;
    std::vector<double> abs_vals = terms.scan_abs(-T, dt_eff, intervals + 1, threads);
    return mean_square_samples(abs_vals, dt_eff);
}

double mean_square(const DirichletPoly& poly, double T, double dt, int threads) {
    return mean_square_terms(poly_terms(poly), std::log((double)poly.n_hi), T, dt, threads);
}

std::vector<LevelSetReport> level_set_stats(std::span<const double> abs_samples,
                                            double t_lo, double dt,
                                            std::span<const double> thresholds) {
    if (!(dt > 0.0)) throw_validation("dt must be positive");
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (!(thresholds[i] >= thresholds[i - 1]))
            throw_validation("thresholds must be sorted ascending");
    std::vector<LevelSetReport> reports;
    reports.reserve(thresholds.size());
    for (double v : thresholds) {
        LevelSetReport rep;
        rep.threshold = v;
        rep.t_lo = t_lo;
        rep.t_hi = t_lo + dt * (double)(abs_samples.size() - 1);
        rep.dt = dt;
        std::int64_t exceed = 0;
        double last_accepted = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < abs_samples.size(); ++k) {
            if (abs_samples[k] > v) {
                ++exceed;
                double t = t_lo + dt * (double)k;
                if (t >= last_accepted + 1.0) {
                    ++rep.separated_count;
                    last_accepted = t;
                }
            }
        }
        rep.grid_measure = dt * (double)exceed;
        reports.push_back(rep);
    }
    return reports;
}

std::string level_sets_to_csv(std::span<const double> abs_samples, double t_lo, double dt,
                              std::span<const double> thresholds) {
    std::vector<std::string> header = {"t", "abs_s"};
    for (double v : thresholds) header.push_back("exceeds_" + fmt17(v));
    CsvWriter csv(header);
    for (std::size_t k = 0; k < abs_samples.size(); ++k) {
        std::vector<std::string> row = {fmt17(t_lo + dt * (double)k), fmt17(abs_samples[k])};
        for (double v : thresholds) row.push_back(abs_samples[k] > v ? "1" : "0");
        csv.row(row);
    }
    return csv.str();
}

} // namespace opplab::dirichlet
