// Diagonal ternary indefinite forms Q(x) = x1^2 + a2*x2^2 - a3*x3^2 and the
// brute-force small-value oracle every faster engine is validated against.

#pragma once

#include <cstdint>

#include "opplab/dd.hpp"
#include "opplab/errors.hpp"

namespace opplab::forms {

struct FormParams {
    double alpha2 = 1.0;   // coefficient of x2^2, > 0
    double alpha3 = 1.0;   // coefficient of x3^2, > 0
    double xi = 0.0;       // target shift, |xi| < n_bound^2 / 2
    std::int64_t n_bound = 2; // sup-norm search radius N, >= 2

    void validate() const;
};

struct LatticePoint {
    std::int64_t x1 = 0;
    std::int64_t x2 = 0;
    std::int64_t x3 = 0;

    bool is_zero() const { return x1 == 0 && x2 == 0 && x3 == 0; }
};

struct Witness {
    LatticePoint point;
    double value = 0.0;     // Q(x) - xi
    double abs_value = 0.0; // |value|
};

inline constexpr std::int64_t kDefaultOracleCap = 64;

// Q(x) - xi in double-double: squares exact, products split exactly, sums
// compensated.  The shared kernel keeps both search engines bit-comparable.
dd::DD eval_form_dd(const FormParams& params, const LatticePoint& p);

// Narrowed value: one rounding per term plus a compensated final sum.
double eval_form(const FormParams& params, const LatticePoint& p);

// Candidate ordering: smaller |Q - xi| first (exact double-double compare),
// ties by lexicographic (|x1|,|x2|,|x3|), then nonnegative representatives.
bool witness_less(const dd::DD& a_abs, const LatticePoint& a,
                  const dd::DD& b_abs, const LatticePoint& b);

// Minimizer of |Q(x) - xi| over nonzero x with sup-norm < N, full-box scan.
// Throws CapExceeded when n_bound > cap (O(N^3) guard).
Witness brute_force_min(const FormParams& params, std::int64_t cap = kDefaultOracleCap);

// Number of nonzero x with sup-norm < N and |Q(x) - xi| < delta (strict).
std::int64_t count_solutions_sharp(const FormParams& params, double delta,
                                   std::int64_t cap = kDefaultOracleCap);

} // namespace opplab::forms
