// Fast engines for min |Q(x) - xi| and delta-counts at large N.  The
// two-pointer walk over the sorted arrays {x1^2} and {alpha2 x2^2} finds the
// per-x3 closest pair in O(N), giving O(N^2) total against the O(N^3)
// oracle.  All value comparisons run in double-double, so the fast engines
// and the brute-force oracle agree on the minimum bit-for-bit.

#pragma once

#include <cstdint>

#include "opplab/forms.hpp"
#include "opplab/windows.hpp"

namespace opplab::search {

using forms::FormParams;
using forms::Witness;

enum class Engine { brute_force, two_pointer };

struct SearchReport {
    Witness witness;
    Engine engine = Engine::two_pointer;
    std::int64_t points_scanned = 0;
    double elapsed_seconds = 0.0;
};

struct DensityQuery {
    double target_halfwidth = 1.0; // A(N)
    double delta = 0.5;            // delta(N)
    FormParams params;

    void validate() const;
};

struct DensityReport {
    double worst_xi = 0.0;
    double worst_min = 0.0;
    bool pass = false;
    std::int64_t grid_points = 0;
};

// Same abs_value as brute_force_min; witness may differ only inside the tie
// class.  O(N^2) time, O(N) memory.
SearchReport two_pointer_min(const FormParams& params, int threads = 1);

// Sharp count of nonzero solutions |Q(x) - xi| < delta with sup-norm < N,
// by per-x3 range queries on the sorted arrays.
std::int64_t delta_count_sharp(const FormParams& params, double delta, int threads = 1);

// Windowed count sum w1(x1/N) w1(x2/N) w1(x3/N) over the same solution set;
// the windows are one-sided so only positive coordinates contribute.
double delta_count_windowed(const FormParams& params, double delta,
                            const windows::WindowSpec& spec, int threads = 1);

// Spec-shaped wrapper over the two variants above.
double delta_count(const FormParams& params, double delta, bool windowed,
                   const windows::WindowSpec& spec, int threads = 1);

// Solutions with every x_i in [N/4, N) and |Q(x) - xi| <= threshold;
// threshold < 0 selects the default N^{3/2} band.
std::int64_t count_main_term_band(const FormParams& params, double threshold = -1.0,
                                  int threads = 1);

// Evaluates two_pointer_min on a xi-grid covering [-A, A] with the given
// step (endpoints included); pass iff the worst minimum is below delta.
DensityReport density_check(const DensityQuery& query, double xi_grid_step,
                            int threads = 1);

} // namespace opplab::search
