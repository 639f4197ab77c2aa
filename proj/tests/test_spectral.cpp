#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "opplab/rng.hpp"
#include "opplab/spectral.hpp"

using namespace opplab;
using forms::FormParams;
using windows::WindowSpec;

namespace {

const WindowSpec kSpec{};

const windows::TransformTable& shared_table() {
    static const windows::TransformTable table =
        windows::build_fourier_w2_table(kSpec, 1e-9, 2);
    return table;
}

double window_sum(std::int64_t n) {
    double acc = 0.0;
    for (std::int64_t x = 0; x <= n; ++x)
        acc += eval_w1(kSpec, (double)x / (double)n);
    return acc;
}

} // namespace

TEST_CASE("F1 at t=0 factorizes into the squared window sum") {
    FormParams p{1.37, 0.81, 2.5, 32};
    auto f = spectral::eval_F1(p, kSpec, 0.0);
    double sw = window_sum(32);
    CHECK(f.real() == doctest::Approx(sw * sw).epsilon(1e-13));
    CHECK(f.imag() == 0.0);
}

TEST_CASE("F1 conjugate symmetry and triangle bound") {
    FormParams p{1.0, 0.77, 0.0, 24};
    double peak = std::abs(spectral::eval_F1(p, kSpec, 0.0));
    SplitMix64 rng(3);
    for (int i = 0; i < 20; ++i) {
        double t = (rng.next_double() * 2.0 - 1.0) * 1e4;
        auto plus = spectral::eval_F1(p, kSpec, t);
        auto minus = spectral::eval_F1(p, kSpec, -t);
        CHECK(std::abs(plus - std::conj(minus)) <= 1e-12 * std::abs(plus));
        CHECK(std::abs(plus) <= peak * (1.0 + 1e-12));
    }
}

TEST_CASE("F1 positivity precondition") {
    FormParams p{1.0, 1.0, 100.0, 16}; // xi >= (1+alpha2) N^2/16 = 32
    CHECK_THROWS_AS((void)spectral::eval_F1(p, kSpec, 1.0), Error);
    try {
        (void)spectral::eval_F1(p, kSpec, 1.0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::positivity_violated);
    }
}

TEST_CASE("F2 at t=0 is the window sum") {
    CHECK(spectral::eval_F2(kSpec, 64, 0.0).real() ==
          doctest::Approx(window_sum(64)).epsilon(1e-13));
    CHECK(spectral::eval_F2(kSpec, 64, 0.0).imag() == 0.0);
}

TEST_CASE("pole approximation of F2 at small t") {
    for (std::int64_t n : {256LL, 1024LL}) {
        for (double t : {0.0, -1.0, 1.0, 2.0}) {
            auto f2 = spectral::eval_F2(kSpec, n, t);
            auto pole = spectral::pole_term(kSpec, n, t);
            CHECK(std::abs(f2 - pole) <= 10.0 * std::sqrt((double)n));
            // measured headroom: the residue is superpolynomially accurate here
            CHECK(std::abs(f2 - pole) <= 1e-6);
        }
    }
}

TEST_CASE("pole term decays below sqrt(N) once t is past the transform knee") {
    const std::int64_t n = 4096;
    double prev = 1e300;
    for (double t : {4.0, 8.0, 16.0, 32.0}) {
        double mag = std::abs(spectral::pole_term(kSpec, n, t));
        CHECK(mag < prev);
        prev = mag;
    }
    CHECK(std::abs(spectral::pole_term(kSpec, n, 32.0)) < std::sqrt((double)n));
}

TEST_CASE("spectral grid invariants") {
    auto grid = spectral::make_spectral_grid(32, 64.0, shared_table());
    CHECK(grid.dt <= std::numbers::pi / (4.0 * std::log(2.0 * 32.0 * 32.0)));
    CHECK(grid.tail_mass_rel < 1e-8);
    CHECK(grid.n_nodes >= 2);
    CHECK(grid.node(0) == -grid.t_max);
    CHECK(grid.node(grid.n_nodes - 1) == doctest::Approx(grid.t_max));
    double total = 0.0;
    for (std::size_t k = 0; k < grid.n_nodes; ++k) total += grid.weight(k);
    CHECK(total == doctest::Approx(2.0 * grid.t_max).epsilon(1e-12));
}

TEST_CASE("spectral integral reproduces the direct smoothed count") {
    FormParams p{1.0, 0.7, 0.0, 32};
    const double T = 64.0;
    double direct = spectral::smoothed_count_direct(p, kSpec, T, 2);
    auto grid = spectral::make_spectral_grid(32, T, shared_table());
    double via_spectrum = spectral::smoothed_count_spectral(p, kSpec, grid, shared_table(), 2);
    CHECK(std::abs(via_spectrum - direct) <= 0.01 * std::abs(direct));
    CHECK(std::abs(via_spectrum - direct) <= 1e-6 * std::abs(direct)); // measured 2e-10
}

TEST_CASE("alpha3 change reuses cached samples exactly") {
    FormParams p{1.0, 0.7, 0.0, 24};
    const double T = 32.0;
    auto grid = spectral::make_spectral_grid(24, T, shared_table());
    auto samples = spectral::build_spectrum(p, kSpec, grid, 2);
    double from_cache =
        spectral::integrate_spectrum(samples, grid, shared_table(), 0.93).real();
    FormParams p2 = p;
    p2.alpha3 = 0.93;
    double full = spectral::smoothed_count_spectral(p2, kSpec, grid, shared_table(), 2);
    CHECK(from_cache == doctest::Approx(full).epsilon(1e-10));
}

TEST_CASE("zeroed F2 samples integrate to zero") {
    FormParams p{1.0, 0.7, 0.0, 16};
    auto grid = spectral::make_spectral_grid(16, 16.0, shared_table());
    auto samples = spectral::build_spectrum(p, kSpec, grid, 2);
    for (auto& s : samples) s.f2 = {0.0, 0.0};
    CHECK(spectral::integrate_spectrum(samples, grid, shared_table(), 0.7) ==
          std::complex<double>(0.0, 0.0));
}

TEST_CASE("kernel split: main + oscillatory = total, and t_split = T is degenerate") {
    FormParams p{1.0, 0.7, 0.0, 32};
    const double T = 64.0;
    auto grid = spectral::make_spectral_grid(32, T, shared_table());
    double total = spectral::smoothed_count_spectral(p, kSpec, grid, shared_table(), 2);

    auto split = spectral::split_main_oscillatory(p, kSpec, grid, shared_table(),
                                                  std::sqrt(32.0), 2);
    CHECK(split.main_part + split.oscillatory ==
          doctest::Approx(total).epsilon(1e-8));
    // main at t_split = sqrt(N) is of the order of N^3/T
    double ratio = split.main_part / (32.0 * 32.0 * 32.0 / T);
    CHECK(ratio >= 0.01);
    CHECK(ratio <= 100.0);

    auto degen = spectral::split_main_oscillatory(p, kSpec, grid, shared_table(), T, 2);
    CHECK(degen.main_part == doctest::Approx(total).epsilon(1e-12));
    CHECK(degen.oscillatory == doctest::Approx(0.0));
}

TEST_CASE("spectral count is additive under a smooth split of the x3 window") {
    FormParams p{1.0, 0.83, 0.0, 24};
    auto grid = spectral::make_spectral_grid(24, 24.0, shared_table());
    auto blend = [](double x) { return windows::smooth_step(kSpec, (x - 0.4) / 0.3); };
    auto part_a = [&](double x) { return eval_w1(kSpec, x) * blend(x); };
    auto part_b = [&](double x) { return eval_w1(kSpec, x) * (1.0 - blend(x)); };
    auto sa = spectral::build_spectrum_weighted(p, kSpec, grid, part_a, 2);
    auto sb = spectral::build_spectrum_weighted(p, kSpec, grid, part_b, 2);
    auto sf = spectral::build_spectrum(p, kSpec, grid, 2);
    double va = spectral::integrate_spectrum(sa, grid, shared_table(), p.alpha3).real();
    double vb = spectral::integrate_spectrum(sb, grid, shared_table(), p.alpha3).real();
    double vf = spectral::integrate_spectrum(sf, grid, shared_table(), p.alpha3).real();
    CHECK(va + vb == doctest::Approx(vf).epsilon(1e-10));
}

TEST_CASE("direct sum limits: plateau covers everything at tiny T") {
    FormParams p{1.0, 0.7, 0.0, 32};
    double sw = window_sum(32);
    CHECK(spectral::smoothed_count_direct(p, kSpec, 1e-3, 2) ==
          doctest::Approx(sw * sw * sw).epsilon(1e-12));
    // At huge T only u ~ 0 coincidences survive; alpha3 = 0.7 has none.
    CHECK(spectral::smoothed_count_direct(p, kSpec, 1e9, 2) == 0.0);
}

TEST_CASE("batch spectrum matches single-t evaluation") {
    FormParams p{1.0, 0.77, 0.5, 16};
    auto grid = spectral::make_spectral_grid(16, 8.0, shared_table());
    auto samples = spectral::build_spectrum(p, kSpec, grid, 2);
    for (std::size_t k = 0; k < samples.size(); k += samples.size() / 7 + 1) {
        double t = samples[k].t;
        CHECK(std::abs(samples[k].f1 - spectral::eval_F1(p, kSpec, t)) < 1e-9);
        CHECK(std::abs(samples[k].f2 - spectral::eval_F2(kSpec, 16, 2.0 * t)) < 1e-9);
    }
}

TEST_CASE("spectrum CSV dump has one row per node") {
    FormParams p{1.0, 0.7, 0.0, 16};
    auto grid = spectral::make_spectral_grid(16, 4.0, shared_table());
    auto samples = spectral::build_spectrum(p, kSpec, grid, 1);
    std::string csv = spectral::spectrum_to_csv(samples, grid);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == (std::ptrdiff_t)grid.n_nodes + 1);
    CHECK(csv.rfind("t,re_f1,im_f1,re_f2,im_f2,weight\n", 0) == 0);
}
