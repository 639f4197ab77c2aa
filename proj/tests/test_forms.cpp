#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opplab/forms.hpp"

using namespace opplab;
using forms::FormParams;
using forms::LatticePoint;

TEST_CASE("eval_form hand values") {
    CHECK(forms::eval_form({1.0, 1.0, 0.0, 8}, {3, 4, 5}) == 0.0); // 9+16-25
    CHECK(forms::eval_form({1.0, 0.9, 0.0, 2}, {0, 1, 1}) ==
          doctest::Approx(0.1).epsilon(1e-15));
    CHECK(forms::eval_form({2.0, 0.5, 1.0, 4}, {1, 1, 2}) == 0.0); // 1+2-2-1
}

TEST_CASE("eval_form sign symmetry is exact") {
    FormParams p{1.37, 0.71, 0.25, 16};
    for (std::int64_t x1 : {-3LL, 3LL})
        for (std::int64_t x2 : {-5LL, 5LL})
            for (std::int64_t x3 : {-7LL, 7LL})
                CHECK(forms::eval_form(p, {x1, x2, x3}) ==
                      forms::eval_form(p, {3, 5, 7}));
}

TEST_CASE("FormParams validation names the offending field") {
    CHECK_THROWS_WITH_AS((FormParams{-1.0, 1.0, 0.0, 4}.validate()),
                         "alpha2 must be positive", Error);
    CHECK_THROWS_WITH_AS((FormParams{1.0, -1.0, 0.0, 4}.validate()),
                         "alpha3 must be positive", Error);
    CHECK_THROWS_WITH_AS((FormParams{1.0, 1.0, 0.0, 1}.validate()),
                         "n_bound must be >= 2", Error);
    CHECK_THROWS_WITH_AS((FormParams{1.0, 1.0, 8.0, 4}.validate()),
                         "xi must satisfy |xi| < n_bound^2 / 2", Error);
    CHECK_NOTHROW((FormParams{1.0, 1.0, 7.999, 4}.validate()));
}

TEST_CASE("brute_force_min examples") {
    auto w = forms::brute_force_min({1.0, 0.9, 0.0, 2});
    CHECK(w.abs_value == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(w.point.x1 == 0);
    CHECK(w.point.x2 == 1);
    CHECK(w.point.x3 == 1);

    auto iso = forms::brute_force_min({1.0, 1.0, 0.0, 2});
    CHECK(iso.abs_value == 0.0);
    CHECK(iso.point.x1 == 0);
    CHECK(iso.point.x2 == 1);
    CHECK(iso.point.x3 == 1);

    auto aniso = forms::brute_force_min({1.0, 3.0, 0.0, 48});
    CHECK(aniso.abs_value == 1.0);
}

TEST_CASE("witness value recomputes from the point") {
    FormParams p{0.8124, 0.9177, 1.25, 24};
    auto w = forms::brute_force_min(p);
    CHECK(!w.point.is_zero());
    double recomputed = forms::eval_form(p, w.point);
    CHECK(std::abs(recomputed - w.value) <= 1e-14 * std::max(1.0, std::abs(w.value)));
    CHECK(w.abs_value == std::abs(w.value));
}

TEST_CASE("oracle cap raises CapExceeded") {
    FormParams p{1.0, 1.0, 0.0, 1000};
    CHECK_THROWS_AS((void)forms::brute_force_min(p), Error);
    try {
        (void)forms::brute_force_min(p);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::cap_exceeded);
    }
    CHECK_NOTHROW((void)forms::brute_force_min({1.0, 1.0, 0.0, 70}, 70));
}

TEST_CASE("count_solutions_sharp examples") {
    FormParams p{1.0, 0.9, 0.0, 2};
    CHECK(forms::count_solutions_sharp(p, 0.05) == 0); // minimum is 0.1
    CHECK(forms::count_solutions_sharp(p, 0.2) == 8);  // (0,±1,±1), (±1,0,±1)
    CHECK(forms::count_solutions_sharp(p, 0.0) == 0);  // empty open interval
    CHECK(forms::count_solutions_sharp({1.0, 0.37, 0.0, 6}, 0.0) == 0);
}

TEST_CASE("counts are orbit multiples under sign flips") {
    // Points with k nonzero coordinates contribute in orbits of size 2^k, so
    // incremental counts between thresholds are sums of {2,4,8}; with a
    // nonzero minimum every count at small delta is even.
    FormParams p{1.3, 0.77, 0.0, 8};
    std::int64_t prev = 0;
    for (double delta : {0.01, 0.1, 0.5, 1.0, 2.0}) {
        std::int64_t c = forms::count_solutions_sharp(p, delta);
        CHECK(c >= prev);
        CHECK(c % 2 == 0);
        prev = c;
    }
}

TEST_CASE("count is additive over disjoint bins") {
    FormParams p{0.93, 0.61, 0.4, 10};
    const std::int64_t m = p.n_bound - 1;
    double d1 = 0.3, d2 = 1.1;
    std::int64_t in_bin = 0;
    for (std::int64_t x3 = -m; x3 <= m; ++x3)
        for (std::int64_t x2 = -m; x2 <= m; ++x2)
            for (std::int64_t x1 = -m; x1 <= m; ++x1) {
                LatticePoint q{x1, x2, x3};
                if (q.is_zero()) continue;
                double v = std::abs(forms::eval_form(p, q));
                if (v >= d1 && v < d2) ++in_bin;
            }
    CHECK(forms::count_solutions_sharp(p, d2) - forms::count_solutions_sharp(p, d1) ==
          in_bin);
}

TEST_CASE("minimum is nonincreasing in the search radius") {
    FormParams p{1.0, 0.7163, 0.33, 2};
    double prev = 1e300;
    for (std::int64_t n = 2; n <= 32; n *= 2) {
        p.n_bound = n;
        double v = forms::brute_force_min(p).abs_value;
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("anisotropic control: min is 1 for every N in [2, 64]") {
    for (std::int64_t n = 2; n <= 64; ++n) {
        auto w = forms::brute_force_min({1.0, 3.0, 0.0, n});
        CHECK(w.abs_value == 1.0);
    }
}
