#include "opplab/forms.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace opplab::forms {

void FormParams::validate() const {
    if (!(alpha2 > 0.0) || !std::isfinite(alpha2))
        throw_validation("alpha2 must be positive");
    if (!(alpha3 > 0.0) || !std::isfinite(alpha3))
        throw_validation("alpha3 must be positive");
    if (n_bound < 2) throw_validation("n_bound must be >= 2");
    if (!std::isfinite(xi) || !(std::abs(xi) < 0.5 * (double)n_bound * (double)n_bound))
        throw_validation("xi must satisfy |xi| < n_bound^2 / 2");
}

dd::DD eval_form_dd(const FormParams& params, const LatticePoint& p) {
    // Squares are exact in double for |x| < 2^26; n_bound stays far below.
    double s1 = (double)(p.x1 * p.x1);
    double s2 = (double)(p.x2 * p.x2);
    double s3 = (double)(p.x3 * p.x3);
    dd::DD acc = dd::two_prod(params.alpha2, s2);
    acc = dd::add(acc, s1);
    acc = dd::sub(acc, dd::two_prod(params.alpha3, s3));
    acc = dd::sub(acc, params.xi);
    return acc;
}

double eval_form(const FormParams& params, const LatticePoint& p) {
    return dd::to_double(eval_form_dd(params, p));
}

bool witness_less(const dd::DD& a_abs, const LatticePoint& a,
                  const dd::DD& b_abs, const LatticePoint& b) {
    int c = dd::compare(a_abs, b_abs);
    if (c != 0) return c < 0;
    std::int64_t am[3] = {std::llabs(a.x1), std::llabs(a.x2), std::llabs(a.x3)};
    std::int64_t bm[3] = {std::llabs(b.x1), std::llabs(b.x2), std::llabs(b.x3)};
    for (int i = 0; i < 3; ++i)
        if (am[i] != bm[i]) return am[i] < bm[i];
    // Same magnitudes: prefer nonnegative coordinates, slot by slot.
    std::int64_t as[3] = {a.x1, a.x2, a.x3};
    std::int64_t bs[3] = {b.x1, b.x2, b.x3};
    for (int i = 0; i < 3; ++i)
        if ((as[i] < 0) != (bs[i] < 0)) return bs[i] < 0;
    return false;
}

Witness brute_force_min(const FormParams& params, std::int64_t cap) {
    params.validate();
    if (params.n_bound > cap)
        throw Error(Errc::cap_exceeded,
                    "brute_force_min: n_bound " + std::to_string(params.n_bound) +
                        " exceeds oracle cap " + std::to_string(cap));
    const std::int64_t m = params.n_bound - 1;
    bool have = false;
    LatticePoint best;
    dd::DD best_abs{0.0, 0.0};
    for (std::int64_t x3 = -m; x3 <= m; ++x3) {
        for (std::int64_t x2 = -m; x2 <= m; ++x2) {
            for (std::int64_t x1 = -m; x1 <= m; ++x1) {
                LatticePoint p{x1, x2, x3};
                if (p.is_zero()) continue;
                dd::DD v = dd::abs(eval_form_dd(params, p));
                if (!have || witness_less(v, p, best_abs, best)) {
                    have = true;
                    best = p;
                    best_abs = v;
                }
            }
        }
    }
    Witness w;
    w.point = best;
    w.value = eval_form(params, best);
    w.abs_value = std::abs(w.value);
    return w;
}

std::int64_t count_solutions_sharp(const FormParams& params, double delta, std::int64_t cap) {
    params.validate();
    if (!(delta >= 0.0)) throw_validation("delta must be nonnegative");
    if (params.n_bound > cap)
        throw Error(Errc::cap_exceeded,
                    "count_solutions_sharp: n_bound " + std::to_string(params.n_bound) +
                        " exceeds oracle cap " + std::to_string(cap));
    const std::int64_t m = params.n_bound - 1;
    std::int64_t count = 0;
    for (std::int64_t x3 = -m; x3 <= m; ++x3)
        for (std::int64_t x2 = -m; x2 <= m; ++x2)
            for (std::int64_t x1 = -m; x1 <= m; ++x1) {
                LatticePoint p{x1, x2, x3};
                if (p.is_zero()) continue;
                dd::DD v = dd::abs(eval_form_dd(params, p));
                if (dd::compare(v, dd::DD{delta, 0.0}) < 0) ++count;
            }
    return count;
}

} // namespace opplab::forms
