// Parameter sweeps over alpha3 (and alpha2), exceptional-set fractions,
// log-log exponent fits, the alpha2-average of |F1|^2, and the
// near-rational flag used to interpret exceptional records.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opplab/forms.hpp"
#include "opplab/windows.hpp"

namespace opplab::sweep {

enum class Axis { alpha3, alpha2, both };
enum class Statistic { median, mean };

struct SweepPlan {
    Axis axis = Axis::alpha3;
    double lo = 0.5;
    double hi = 1.0;
    int grid_points = 512;
    bool jitter = false;
    double delta = 0.1;
    double xi = 0.0;
    double fixed_alpha2 = 1.0;                 // used when sweeping alpha3
    double fixed_alpha3 = 0.70710678118654752; // used when sweeping alpha2
    std::vector<std::int64_t> n_values;
    std::uint64_t seed = 0;
    int q_max = 1024;

    void validate() const;
};

struct SweepRecord {
    double alpha2 = 0.0;
    double alpha3 = 0.0;
    std::int64_t n = 0;
    double min_abs = 0.0;
    std::int64_t count_delta = 0;
    bool exceptional = false;
    int cf_flag = 0;
};

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    std::vector<std::int64_t> n_values;
    Statistic statistic = Statistic::median;
    std::vector<double> residuals;
};

// One record per (alpha grid point, n); deterministic given the seed,
// independent of the thread count.
std::vector<SweepRecord> run_sweep(const SweepPlan& plan, int threads = 1);

// Grid-measure proxy: interval_length * exceptional / grid size, with the
// exceptional flag re-derived from min_abs >= delta.  All records must
// share one n.
double exceptional_fraction(std::span<const SweepRecord> records, double delta,
                            double interval_length);

// OLS of log2(statistic of min_abs over the alpha grid) against log2 n.
// Needs >= 4 distinct n spanning >= 2 octaves.
ExponentFit fit_exponent(std::span<const SweepRecord> records, Statistic statistic);

// Mean of |F1(t)|^2 over an alpha2 grid; requires xi = 0 and t != 0.
double average_F1_over_alpha2(std::span<const double> alpha2_grid,
                              const forms::FormParams& params_template,
                              const windows::WindowSpec& spec, double t, int threads = 1);

// Smallest q <= q_max with |alpha - p/q| < 1 / (2 q q_max), found on the
// continued-fraction convergents; 0 when no such denominator exists.
int flag_near_rational(double alpha, int q_max);

// The jittered alpha grid a plan generates (exposed for tests and reports).
std::vector<double> plan_alpha_grid(const SweepPlan& plan);

std::string records_to_csv(std::span<const SweepRecord> records);
std::vector<SweepRecord> records_from_csv(const std::string& csv);

// gnuplot script for a log-log plot of min_abs against n.
std::string gnuplot_script(const std::string& csv_path);

} // namespace opplab::sweep
