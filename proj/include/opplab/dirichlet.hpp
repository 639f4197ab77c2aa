// Dirichlet polynomials S(t) = sum_{n ~ N} a_n n^{it}, the dyadic unit-
// coefficient sum H_N, Epstein-type double sums (m^2 + alpha n^2)^{it},
// mean-square estimates, and level-set statistics over t-grids.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opplab/phase_sum.hpp"

namespace opplab::dirichlet {

// Coefficients over the dyadic range [n_lo, n_hi), n_hi ~ 2 n_lo.
struct DirichletPoly {
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    std::vector<std::complex<double>> coeffs;

    void validate() const;
    std::size_t size() const { return (std::size_t)(n_hi - n_lo); }
};

DirichletPoly rademacher_poly(std::int64_t n_lo, std::int64_t n_hi, std::uint64_t seed);
DirichletPoly unit_poly(std::int64_t n_lo, std::int64_t n_hi);

PhaseSum poly_terms(const DirichletPoly& poly);
PhaseSum hn_terms(std::int64_t n_bound);                       // n in [N, 2N), a_n = 1
PhaseSum epstein_terms(double alpha, std::int64_t n_bound);    // m, n in [N, 2N)

std::complex<double> eval_S(const DirichletPoly& poly, double t);
std::complex<double> eval_H(std::int64_t n_bound, double t);
std::complex<double> eval_epstein_sum(double alpha, std::int64_t n_bound, double t);

// Trapezoid estimate of int_{|t|<T} |S(t)|^2 dt from uniform samples with
// spacing dt (dt must resolve the fastest oscillation, pi / (4 log v_max)).
double mean_square_samples(std::span<const double> abs_samples, double dt);
double mean_square(const DirichletPoly& poly, double T, double dt, int threads = 1);
double mean_square_terms(const PhaseSum& terms, double log_v_max, double T, double dt,
                         int threads = 1);

struct LevelSetReport {
    double threshold = 0.0;
    double grid_measure = 0.0;        // dt x exceedance count
    std::int64_t separated_count = 0; // greedy 1-separated representatives
    double t_lo = 0.0;
    double t_hi = 0.0;
    double dt = 0.0;
};

// For each threshold V (ascending): grid measure of {|S| > V} plus the
// left-to-right greedy count of exceedance nodes at pairwise distance >= 1.
std::vector<LevelSetReport> level_set_stats(std::span<const double> abs_samples,
                                            double t_lo, double dt,
                                            std::span<const double> thresholds);

std::string level_sets_to_csv(std::span<const double> abs_samples, double t_lo, double dt,
                              std::span<const double> thresholds);

} // namespace opplab::dirichlet
