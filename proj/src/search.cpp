#include "opplab/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "opplab/numeric.hpp"
#include "opplab/parallel.hpp"

namespace opplab::search {

namespace {

using dd::DD;

struct SquareTables {
    std::vector<double> a;      // x1^2, exact
    std::vector<double> b_hi;   // alpha2 * x2^2, rounded head
    std::vector<DD> b;          // alpha2 * x2^2, exact split
    std::int64_t n = 0;

    explicit SquareTables(const FormParams& params) : n(params.n_bound) {
        a.resize((std::size_t)n);
        b_hi.resize((std::size_t)n);
        b.resize((std::size_t)n);
        for (std::int64_t i = 0; i < n; ++i) {
            a[(std::size_t)i] = (double)(i * i);
            DD prod = dd::two_prod(params.alpha2, (double)(i * i));
            b[(std::size_t)i] = prod;
            b_hi[(std::size_t)i] = prod.hi;
        }
    }
};

DD tau_of(const FormParams& params, std::int64_t x3) {
    return dd::add(dd::two_prod(params.alpha3, (double)(x3 * x3)), params.xi);
}

struct BlockBest {
    bool have = false;
    forms::LatticePoint point;
    DD abs_value{0.0, 0.0};
    std::int64_t scanned = 0;

    void offer(DD v, forms::LatticePoint p) {
        if (!have || forms::witness_less(v, p, abs_value, point)) {
            have = true;
            point = p;
            abs_value = v;
        }
    }
};

// Closest-pair walk for one x3 slice.  Every visited pair is recorded; the
// standard exchange argument shows some optimal pair is always visited.
void scan_slice(const SquareTables& tab, const FormParams& params, std::int64_t x3,
                BlockBest& best) {
    const DD tau = tau_of(params, x3);
    std::int64_t i = 0, j = tab.n - 1;
    while (i < tab.n && j >= 0) {
        DD s = dd::sub(dd::add(tab.b[(std::size_t)j], tab.a[(std::size_t)i]), tau);
        ++best.scanned;
        if (!(x3 == 0 && i == 0 && j == 0))
            best.offer(dd::abs(s), forms::LatticePoint{i, j, x3});
        if (s.hi > 0.0 || (s.hi == 0.0 && s.lo > 0.0))
            --j;
        else
            ++i;
    }
}

// Walks x1 ascending over [x_begin, x_end) and reports, per x1, the index
// range [lo, hi) of x2 in the same span whose slice value
// s = x1^2 + alpha2 x2^2 - tau satisfies the band condition
//   strict:  -thr < s < thr      closed:  -thr <= s <= thr.
// s is strictly increasing in x2 and the x1^2 offset grows monotonically,
// so both edges only ever move left: O(N) exact comparisons per slice.
template <typename Visit>
void walk_band(const SquareTables& tab, std::int64_t x_begin, std::int64_t x_end, DD tau,
               double thr, bool closed, Visit&& visit) {
    auto left_of_band = [&](std::int64_t x1, std::int64_t idx) {
        DD s = dd::sub(dd::add(tab.b[(std::size_t)idx], tab.a[(std::size_t)x1]), tau);
        int c = dd::compare(s, DD{-thr, 0.0});
        return closed ? c < 0 : c <= 0;
    };
    auto not_right_of_band = [&](std::int64_t x1, std::int64_t idx) {
        DD s = dd::sub(dd::add(tab.b[(std::size_t)idx], tab.a[(std::size_t)x1]), tau);
        int c = dd::compare(s, DD{thr, 0.0});
        return closed ? c <= 0 : c < 0;
    };
    std::int64_t lo = x_end, hi = x_end;
    for (std::int64_t x1 = x_begin; x1 < x_end; ++x1) {
        while (hi > x_begin && !not_right_of_band(x1, hi - 1)) --hi;
        if (lo > hi) lo = hi;
        while (lo > x_begin && !left_of_band(x1, lo - 1)) --lo;
        visit(x1, lo, hi);
    }
}

} // namespace

void DensityQuery::validate() const {
    params.validate();
    if (!(delta > 0.0)) throw_validation("delta must be positive");
    if (!(target_halfwidth >= delta)) throw_validation("target_halfwidth must be >= delta");
}

SearchReport two_pointer_min(const FormParams& params, int threads) {
    params.validate();
    auto t0 = std::chrono::steady_clock::now();
    SquareTables tab(params);
    const std::int64_t n = params.n_bound;

    constexpr std::int64_t kBlock = 64;
    std::size_t nblocks = (std::size_t)((n + kBlock - 1) / kBlock);
    std::vector<BlockBest> partial(nblocks);
    parallel_for_blocks(nblocks, 1, threads, [&](std::size_t b0, std::size_t b1) {
        for (std::size_t blk = b0; blk < b1; ++blk) {
            std::int64_t x3_lo = (std::int64_t)blk * kBlock;
            std::int64_t x3_hi = std::min(n, x3_lo + kBlock);
            for (std::int64_t x3 = x3_lo; x3 < x3_hi; ++x3)
                scan_slice(tab, params, x3, partial[blk]);
        }
    });

    BlockBest best;
    for (const auto& part : partial) {
        best.scanned += part.scanned;
        if (part.have) best.offer(part.abs_value, part.point);
    }

    SearchReport report;
    report.engine = Engine::two_pointer;
    report.points_scanned = best.scanned;
    report.witness.point = best.point;
    report.witness.value = forms::eval_form(params, best.point);
    report.witness.abs_value = std::abs(report.witness.value);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::int64_t delta_count_sharp(const FormParams& params, double delta, int threads) {
    params.validate();
    if (!(delta >= 0.0)) throw_validation("delta must be nonnegative");
    SquareTables tab(params);
    const std::int64_t n = params.n_bound;

    std::size_t nslices = (std::size_t)n;
    std::vector<std::int64_t> per_slice(nslices, 0);
    parallel_for_blocks(nslices, 16, threads, [&](std::size_t s0, std::size_t s1) {
        for (std::size_t s = s0; s < s1; ++s) {
            std::int64_t x3 = (std::int64_t)s;
            DD tau = tau_of(params, x3);
            std::int64_t w3 = x3 != 0 ? 2 : 1;
            std::int64_t acc = 0;
            walk_band(tab, 0, n, tau, delta, /*closed=*/false,
                      [&](std::int64_t x1, std::int64_t lo, std::int64_t hi) {
                          if (lo >= hi) return;
                          std::int64_t w13 = (x1 != 0 ? 2 : 1) * w3;
                          std::int64_t pos = hi - std::max<std::int64_t>(lo, 1);
                          std::int64_t has_zero = lo == 0 ? 1 : 0;
                          acc += w13 * (2 * pos + has_zero);
                          if (x1 == 0 && x3 == 0 && has_zero) acc -= 1; // exclude the origin
                      });
            per_slice[s] = acc;
        }
    });
    std::int64_t total = 0;
    for (std::int64_t c : per_slice) total += c;
    return total;
}

double delta_count_windowed(const FormParams& params, double delta,
                            const windows::WindowSpec& spec, int threads) {
    params.validate();
    spec.validate();
    if (!(delta >= 0.0)) throw_validation("delta must be nonnegative");
    SquareTables tab(params);
    const std::int64_t n = params.n_bound;
    const double dn = (double)n;

    // Prefix sums of w1(x2/N) let each x2-range contribute in O(1).
    std::vector<double> w1v((std::size_t)n, 0.0), prefix((std::size_t)n + 1, 0.0);
    KahanSum pacc;
    for (std::int64_t x = 0; x < n; ++x) {
        w1v[(std::size_t)x] = eval_w1(spec, (double)x / dn);
        pacc.add(w1v[(std::size_t)x]);
        prefix[(std::size_t)x + 1] = pacc.value();
    }

    std::vector<double> per_slice((std::size_t)n, 0.0);
    parallel_for_blocks((std::size_t)n, 16, threads, [&](std::size_t s0, std::size_t s1) {
        for (std::size_t s = s0; s < s1; ++s) {
            std::int64_t x3 = (std::int64_t)s;
            double w3 = w1v[(std::size_t)x3];
            if (w3 == 0.0) continue;
            DD tau = tau_of(params, x3);
            KahanSum acc;
            walk_band(tab, 0, n, tau, delta, /*closed=*/false,
                      [&](std::int64_t x1, std::int64_t lo, std::int64_t hi) {
                          double w1x = w1v[(std::size_t)x1];
                          if (w1x == 0.0 || lo >= hi) return;
                          acc.add(w1x * (prefix[(std::size_t)hi] - prefix[(std::size_t)lo]));
                      });
            per_slice[s] = w3 * acc.value();
        }
    });
    KahanSum total;
    for (double v : per_slice) total.add(v);
    return total.value();
}

double delta_count(const FormParams& params, double delta, bool windowed,
                   const windows::WindowSpec& spec, int threads) {
    if (windowed) return delta_count_windowed(params, delta, spec, threads);
    return (double)delta_count_sharp(params, delta, threads);
}

std::int64_t count_main_term_band(const FormParams& params, double threshold, int threads) {
    params.validate();
    const std::int64_t n = params.n_bound;
    double thr = threshold < 0.0 ? std::pow((double)n, 1.5) : threshold;
    SquareTables tab(params);
    const std::int64_t x_lo = (n + 3) / 4; // first integer >= N/4

    std::size_t nslices = (std::size_t)(n - x_lo);
    std::vector<std::int64_t> per_slice(nslices, 0);
    parallel_for_blocks(nslices, 16, threads, [&](std::size_t s0, std::size_t s1) {
        for (std::size_t s = s0; s < s1; ++s) {
            std::int64_t x3 = x_lo + (std::int64_t)s;
            DD tau = tau_of(params, x3);
            std::int64_t acc = 0;
            walk_band(tab, x_lo, n, tau, thr, /*closed=*/true,
                      [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
                          acc += std::max<std::int64_t>(0, hi - lo);
                      });
            per_slice[s] = acc;
        }
    });
    std::int64_t total = 0;
    for (std::int64_t c : per_slice) total += c;
    return total;
}

DensityReport density_check(const DensityQuery& query, double xi_grid_step, int threads) {
    query.validate();
    if (!(xi_grid_step > 0.0)) throw_validation("xi_grid_step must be positive");
    if (xi_grid_step > query.delta)
        throw_validation("xi_grid_step must be <= delta (delta-dense cover)");

    std::vector<double> grid;
    const double A = query.target_halfwidth;
    for (double xi = -A; xi < A; xi += xi_grid_step) grid.push_back(xi);
    grid.push_back(A);

    std::vector<double> mins(grid.size(), 0.0);
    parallel_for_blocks(grid.size(), 1, threads, [&](std::size_t k0, std::size_t k1) {
        for (std::size_t k = k0; k < k1; ++k) {
            FormParams p = query.params;
            p.xi = grid[k];
            mins[k] = two_pointer_min(p, 1).witness.abs_value;
        }
    });

    DensityReport report;
    report.grid_points = (std::int64_t)grid.size();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (k == 0 || mins[k] > report.worst_min) {
            report.worst_min = mins[k];
            report.worst_xi = grid[k];
        }
    }
    report.pass = report.worst_min < query.delta;
    return report;
}

} // namespace opplab::search
