#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <quadmath.h>

#include "opplab/dd.hpp"
#include "opplab/io.hpp"
#include "opplab/numeric.hpp"
#include "opplab/parallel.hpp"
#include "opplab/quadrature.hpp"
#include "opplab/rng.hpp"

using namespace opplab;

TEST_CASE("dd arithmetic basics") {
    dd::DD a = dd::two_sum(1.0, 1e-17);
    CHECK(dd::to_double(a) == doctest::Approx(1.0));
    CHECK(a.lo == 1e-17);

    dd::DD p = dd::two_prod(1e8 + 1.0, 1e8 - 1.0);
    CHECK(p.hi + p.lo == doctest::Approx(1e16 - 1.0));

    dd::DD x = dd::mul(dd::log(3.0), 7.0);
    CHECK(dd::to_double(x) == doctest::Approx(7.0 * std::log(3.0)));
}

TEST_CASE("dd compare and abs agree with exact ordering") {
    dd::DD a{1.0, 1e-20};
    dd::DD b{1.0, 2e-20};
    CHECK(dd::compare(a, b) < 0);
    CHECK(dd::compare(b, a) > 0);
    CHECK(dd::compare(a, a) == 0);
    CHECK(dd::compare(dd::abs(dd::DD{-2.0, 1e-18}), dd::DD{2.0, -1e-18}) == 0);
}

// The phase contract: t*log(v) mod 2pi within 1e-6 rad of a quad-precision
// reference for v in [1, 4N^2] (N = 2^13) and |t| <= 1e8.
TEST_CASE("phase contract against __float128 reference") {
    SplitMix64 rng(42);
    const __float128 two_pi_q = 2.0 * acosq(-1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double v = 1.0 + rng.next_double() * (4.0 * 8192.0 * 8192.0 - 1.0);
        double t = (rng.next_double() * 2.0 - 1.0) * 1e8;
        double ph = dd::phase_mod_2pi(t, v);
        __float128 ref = fmodq((__float128)t * logq((__float128)v), two_pi_q);
        double diff = std::fabs((double)(ref - (__float128)ph));
        diff = std::fmod(diff, 2.0 * std::numbers::pi);
        if (diff > std::numbers::pi) diff = 2.0 * std::numbers::pi - diff;
        worst = std::max(worst, diff);
    }
    CHECK(worst < 1e-6);
    CHECK(worst < 1e-8); // headroom: measured ~1e-10
}

TEST_CASE("unit_phase lies on the unit circle") {
    SplitMix64 rng(7);
    for (int i = 0; i < 100; ++i) {
        double v = 1.0 + rng.next_double() * 1e6;
        double t = (rng.next_double() * 2.0 - 1.0) * 1e6;
        CHECK(std::abs(dd::unit_phase(t, dd::log(v))) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("splitmix streams are deterministic and split-independent") {
    SplitMix64 a = split_stream(123, 5);
    SplitMix64 b = split_stream(123, 5);
    for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());
    SplitMix64 c = split_stream(123, 6);
    CHECK(split_stream(123, 5).next() != c.next());
    SplitMix64 d(99);
    for (int i = 0; i < 1000; ++i) {
        double u = d.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("fit_line recovers an exact power law") {
    std::vector<double> x, y;
    for (int k = 7; k <= 13; ++k) {
        x.push_back(k);
        y.push_back(-k + 0.125);
    }
    LineFit fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(fit.intercept == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(fit.stderr_slope == doctest::Approx(0.0));
}

TEST_CASE("median handles odd, even, and rejects empty") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK_THROWS_AS(median({}), Error);
}

TEST_CASE("compensated sum beats naive on adversarial input") {
    std::vector<double> xs;
    for (int i = 0; i < 1000; ++i) {
        xs.push_back(1e16);
        xs.push_back(1.0);
        xs.push_back(-1e16);
    }
    CHECK(compensated_sum(xs) == doctest::Approx(1000.0));
}

TEST_CASE("gauss-legendre integrates polynomials and smooth functions") {
    auto cubic = [](double x) { return x * x * x - 2.0 * x + 1.0; };
    CHECK(gl_panels(cubic, -1.0, 2.0, 1) == doctest::Approx(3.75)); // exact for degree 3
    auto gauss = [](double x) { return std::exp(-x * x); };
    double val = gl_adaptive(gauss, -8.0, 8.0);
    CHECK(val == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    auto osc = [](double x) { return std::cos(50.0 * x); };
    CHECK(gl_adaptive(osc, 0.0, 1.0) ==
          doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-11));
}

TEST_CASE("gl_adaptive raises on hopeless integrands") {
    auto wild = [](double x) { return std::cos(3e6 * x); };
    CHECK_THROWS_AS((void)gl_adaptive(wild, 0.0, 1.0, 1e-14, 64), Error);
}

TEST_CASE("fmt17 round-trips binary64") {
    SplitMix64 rng(1);
    for (int i = 0; i < 200; ++i) {
        double x = (rng.next_double() - 0.5) * std::pow(10.0, (int)(rng.next() % 20) - 10);
        CHECK(std::stod(fmt17(x)) == x);
    }
}

TEST_CASE("csv writer arity is enforced") {
    CsvWriter csv({"a", "b"});
    csv.row({"1", "2"});
    CHECK_THROWS_AS(csv.row({"1"}), Error);
    CHECK(csv.str() == "a,b\n1,2\n");
}

TEST_CASE("parallel_for_blocks covers every index exactly once for any thread count") {
    for (int threads : {1, 2, 3, 8}) {
        std::vector<int> hits(1000, 0);
        parallel_for_blocks(1000, 64, threads, [&](std::size_t i0, std::size_t i1) {
            for (std::size_t i = i0; i < i1; ++i) hits[i] += 1;
        });
        for (int h : hits) CHECK(h == 1);
    }
}

TEST_CASE("resolve_threads honors explicit request") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(-1) >= 1);
}
