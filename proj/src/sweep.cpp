#include "opplab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "opplab/io.hpp"
#include "opplab/numeric.hpp"
#include "opplab/parallel.hpp"
#include "opplab/rng.hpp"
#include "opplab/search.hpp"
#include "opplab/spectral.hpp"

namespace opplab::sweep {

void SweepPlan::validate() const {
    if (!(lo < hi)) throw_validation("sweep interval is empty");
    if (!(lo > 0.0)) throw_validation("sweep interval must be positive");
    if (grid_points < 1) throw_validation("grid_points must be >= 1");
    if (!(delta > 0.0)) throw_validation("delta must be positive");
    if (axis != Axis::alpha2 && !(fixed_alpha2 > 0.0))
        throw_validation("fixed_alpha2 must be positive");
    if (axis != Axis::alpha3 && !(fixed_alpha3 > 0.0))
        throw_validation("fixed_alpha3 must be positive");
    if (n_values.empty()) throw_validation("n_values must be nonempty");
    if (q_max < 1) throw_validation("q_max must be >= 1");
    for (std::int64_t n : n_values) {
        forms::FormParams probe{axis == Axis::alpha2 ? fixed_alpha2 : lo,
                                axis == Axis::alpha3 ? fixed_alpha3 : lo, xi, n};
        probe.validate();
    }
}

std::vector<double> plan_alpha_grid(const SweepPlan& plan) {
    plan.validate();
    std::vector<double> grid((std::size_t)plan.grid_points);
    double step = (plan.hi - plan.lo) / (double)plan.grid_points;
    for (int i = 0; i < plan.grid_points; ++i) {
        double x = plan.lo + ((double)i + 0.5) * step;
        if (plan.jitter) {
            // Offset < half a grid step keeps points strictly inside.
            SplitMix64 stream = split_stream(plan.seed, (std::uint64_t)i);
            x += 0.98 * step * stream.next_centered();
        }
        grid[(std::size_t)i] = x;
    }
    return grid;
}

namespace {

// Second coordinate for the two-parameter sweep: a golden-ratio sequence
// decorrelates it from the primary grid while staying deterministic.
std::vector<double> secondary_grid(const SweepPlan& plan) {
    std::vector<double> grid((std::size_t)plan.grid_points);
    double len = plan.hi - plan.lo;
    for (int i = 0; i < plan.grid_points; ++i) {
        double u = std::fmod(0.5 + (double)(i + 1) * 0.61803398874989485, 1.0);
        double x = plan.lo + u * len;
        if (plan.jitter) {
            SplitMix64 stream = split_stream(plan.seed, (std::uint64_t)(plan.grid_points + i));
            x += 0.98 * (len / plan.grid_points) * stream.next_centered();
            x = std::clamp(x, std::nextafter(plan.lo, plan.hi), std::nextafter(plan.hi, plan.lo));
        }
        grid[(std::size_t)i] = x;
    }
    return grid;
}

} // namespace

std::vector<SweepRecord> run_sweep(const SweepPlan& plan, int threads) {
    plan.validate();
    std::vector<double> primary = plan_alpha_grid(plan);
    std::vector<double> secondary;
    if (plan.axis == Axis::both) secondary = secondary_grid(plan);

    std::size_t cells = primary.size() * plan.n_values.size();
    std::vector<SweepRecord> records(cells);
    parallel_for_blocks(cells, 1, threads, [&](std::size_t c0, std::size_t c1) {
        for (std::size_t c = c0; c < c1; ++c) {
            std::size_t ai = c / plan.n_values.size();
            std::size_t ni = c % plan.n_values.size();
            SweepRecord rec;
            rec.n = plan.n_values[ni];
            switch (plan.axis) {
            case Axis::alpha3:
                rec.alpha2 = plan.fixed_alpha2;
                rec.alpha3 = primary[ai];
                break;
            case Axis::alpha2:
                rec.alpha2 = primary[ai];
                rec.alpha3 = plan.fixed_alpha3;
                break;
            case Axis::both:
                rec.alpha2 = primary[ai];
                rec.alpha3 = secondary[ai];
                break;
            }
            forms::FormParams params{rec.alpha2, rec.alpha3, plan.xi, rec.n};
            rec.min_abs = search::two_pointer_min(params, 1).witness.abs_value;
            rec.count_delta = search::delta_count_sharp(params, plan.delta, 1);
            rec.exceptional = rec.min_abs >= plan.delta;
            double active = plan.axis == Axis::alpha2 ? rec.alpha2 : rec.alpha3;
            rec.cf_flag = flag_near_rational(active, plan.q_max);
            records[c] = rec;
        }
    });
    return records;
}

double exceptional_fraction(std::span<const SweepRecord> records, double delta,
                            double interval_length) {
    if (records.empty()) throw_validation("exceptional_fraction: no records");
    if (!(delta > 0.0)) throw_validation("delta must be positive");
    std::int64_t n0 = records.front().n;
    std::int64_t count = 0;
    for (const SweepRecord& rec : records) {
        if (rec.n != n0)
            throw Error(Errc::mixed_n, "exceptional_fraction: records span several n");
        if (rec.min_abs >= delta) ++count;
    }
    return interval_length * (double)count / (double)records.size();
}

ExponentFit fit_exponent(std::span<const SweepRecord> records, Statistic statistic) {
    std::map<std::int64_t, std::vector<double>> by_n;
    for (const SweepRecord& rec : records) by_n[rec.n].push_back(rec.min_abs);
    if (by_n.size() < 4)
        throw Error(Errc::insufficient_range, "fit_exponent: need >= 4 distinct n");
    double n_min = (double)by_n.begin()->first;
    double n_max = (double)by_n.rbegin()->first;
    if (!(n_max >= 4.0 * n_min))
        throw Error(Errc::insufficient_range, "fit_exponent: need >= 2 octaves of n");

    std::vector<double> xs, ys;
    ExponentFit fit;
    fit.statistic = statistic;
    for (const auto& [n, mins] : by_n) {
        double stat = statistic == Statistic::median ? median(mins)
                                                     : mean(std::span<const double>(mins));
        if (!(stat > 0.0))
            throw_validation("fit_exponent: statistic must be positive for log2");
        xs.push_back(std::log2((double)n));
        ys.push_back(std::log2(stat));
        fit.n_values.push_back(n);
    }
    LineFit line = fit_line(xs, ys);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.stderr_slope = line.stderr_slope;
    fit.residuals = line.residuals;
    if (!(std::abs(fit.slope) <= 3.0))
        throw_validation("fit_exponent: |slope| > 3 fails the sanity bound");
    return fit;
}

double average_F1_over_alpha2(std::span<const double> alpha2_grid,
                              const forms::FormParams& params_template,
                              const windows::WindowSpec& spec, double t, int threads) {
    if (alpha2_grid.empty()) throw_validation("alpha2 grid is empty");
    if (params_template.xi != 0.0)
        throw_validation("average_F1_over_alpha2 requires xi = 0");
    if (t == 0.0) throw_validation("t must be nonzero");
    std::vector<double> vals(alpha2_grid.size(), 0.0);
    parallel_for_blocks(alpha2_grid.size(), 1, threads, [&](std::size_t k0, std::size_t k1) {
        for (std::size_t k = k0; k < k1; ++k) {
            forms::FormParams p = params_template;
            p.alpha2 = alpha2_grid[k];
            std::complex<double> f1 = spectral::eval_F1(p, spec, t);
            vals[k] = std::norm(f1);
        }
    });
    KahanSum acc;
    for (double v : vals) acc.add(v);
    return acc.value() / (double)vals.size();
}

int flag_near_rational(double alpha, int q_max) {
    if (q_max < 1) throw_validation("q_max must be >= 1");
    // Any solution of |alpha - p/q| < 1/(2 q q_max), q <= q_max, is a
    // continued-fraction convergent, so scanning convergents in increasing
    // q finds the smallest qualifying denominator.
    double x = alpha;
    std::int64_t p_prev = 1, q_prev = 0;
    std::int64_t p_cur = (std::int64_t)std::floor(x), q_cur = 1;
    x -= std::floor(x);
    for (int iter = 0; iter < 64; ++iter) {
        if (q_cur > q_max) break;
        // |alpha q - p| < 1/(2 q_max), exactly via a double-double product.
        dd::DD diff = dd::sub(dd::two_prod(alpha, (double)q_cur), (double)p_cur);
        diff = dd::abs(diff);
        if (dd::compare(diff, dd::DD{0.5 / (double)q_max, 0.0}) < 0) return (int)q_cur;
        if (x < 1e-15) break;
        x = 1.0 / x;
        double a = std::floor(x);
        if (a > 1e15) break;
        x -= a;
        std::int64_t p_next = (std::int64_t)a * p_cur + p_prev;
        std::int64_t q_next = (std::int64_t)a * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    return 0;
}

std::string records_to_csv(std::span<const SweepRecord> records) {
    CsvWriter csv({"alpha2", "alpha3", "n", "min_abs", "count_delta", "exceptional",
                   "cf_flag"});
    for (const SweepRecord& rec : records)
        csv.row({fmt17(rec.alpha2), fmt17(rec.alpha3), std::to_string(rec.n),
                 fmt17(rec.min_abs), std::to_string(rec.count_delta),
                 rec.exceptional ? "1" : "0", std::to_string(rec.cf_flag)});
    return csv.str();
}

std::vector<SweepRecord> records_from_csv(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    std::vector<SweepRecord> records;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != 7) throw_validation("sweep csv row must have 7 columns");
        SweepRecord rec;
        rec.alpha2 = std::stod(cells[0]);
        rec.alpha3 = std::stod(cells[1]);
        rec.n = std::stoll(cells[2]);
        rec.min_abs = std::stod(cells[3]);
        rec.count_delta = std::stoll(cells[4]);
        rec.exceptional = cells[5] == "1";
        rec.cf_flag = std::stoi(cells[6]);
        records.push_back(rec);
    }
    return records;
}

std::string gnuplot_script(const std::string& csv_path) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set logscale xy 2\n"
       << "set xlabel 'N'\n"
       << "set ylabel 'min |Q(x) - xi|'\n"
       << "plot '" << csv_path << "' skip 1 using 3:4 with points title 'records'\n";
    return os.str();
}

} // namespace opplab::sweep
