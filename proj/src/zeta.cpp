#include "opplab/zeta.hpp"

#include <cmath>
#include <vector>

#include "opplab/dd.hpp"
#include "opplab/errors.hpp"
#include "opplab/numeric.hpp"

namespace opplab::dirichlet {

namespace {

// Shared (log n, n^{-1/2}) cache, grown on demand.
struct TermCache {
    std::vector<double> log_n{0.0};   // log_n[n]
    std::vector<double> rsqrt_n{0.0}; // n^{-1/2}

    void ensure(std::size_t m) {
        for (std::size_t n = log_n.size(); n <= m; ++n) {
            log_n.push_back(std::log((double)n));
            rsqrt_n.push_back(1.0 / std::sqrt((double)n));
        }
    }
};

thread_local TermCache cache;

} // namespace

std::complex<double> zeta_critical_line(double t) {
    if (!(std::abs(t) <= kZetaBudget))
        throw Error(Errc::budget_exceeded,
                    "zeta_critical_line: |t| exceeds the Euler-Maclaurin budget");
    const std::complex<double> s{0.5, t};
    const std::size_t m = (std::size_t)std::max(50.0, std::ceil(4.0 * std::abs(t)));
    cache.ensure(m);

    KahanSum re, im;
    for (std::size_t n = 1; n < m; ++n) {
        // n^{-s} = n^{-1/2} e^{-i t log n}
        double th = -t * cache.log_n[n];
        re.add(cache.rsqrt_n[n] * std::cos(th));
        im.add(cache.rsqrt_n[n] * std::sin(th));
    }
    std::complex<double> sum{re.value(), im.value()};

    const double logm = std::log((double)m);
    auto m_pow = [&](std::complex<double> e) { return std::exp(e * logm); };
    sum += m_pow(1.0 - s) / (s - 1.0);
    sum += 0.5 * m_pow(-s);
    // B2/2! = 1/12 and B4/4! = -1/720.
    sum += s * m_pow(-s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * m_pow(-s - 3.0) / 720.0;
    return sum;
}

ZetaEnvelope zeta_envelope(double t, double y_cut) {
    if (!(y_cut >= 1.0)) throw_validation("y_cut must be >= 1");
    if (!(std::abs(t) + y_cut <= kZetaBudget))
        throw Error(Errc::budget_exceeded,
                    "zeta_envelope: |t| + y_cut exceeds the Euler-Maclaurin budget");

    auto integrand = [&](double y) {
        double den = 1.0 + std::pow(std::abs(y), 10.0);
        return std::abs(zeta_critical_line(y - t)) / den;
    };
    // Composite Simpson; |zeta| has kinks at zeros, so the grid stays fine.
    std::size_t n = (std::size_t)std::max(800.0, 40.0 * y_cut);
    if (n % 2) ++n;
    double h = 2.0 * y_cut / (double)n;
    KahanSum acc;
    acc.add(integrand(-y_cut));
    acc.add(integrand(y_cut));
    for (std::size_t k = 1; k < n; ++k)
        acc.add((k % 2 ? 4.0 : 2.0) * integrand(-y_cut + h * (double)k));

    ZetaEnvelope env;
    env.value = acc.value() * h / 3.0;
    // 2 int_{y_cut}^inf 5 (1+|t|+y)^{1/6} y^{-10} dy with
    // (1+|t|+y)^{1/6} <= (1+|t|+y_cut)^{1/6} (y/y_cut)^{1/6}.
    env.tail_bound = 10.0 * std::pow(1.0 + std::abs(t) + y_cut, 1.0 / 6.0) *
                     std::pow(y_cut, -9.0) * (6.0 / 53.0);
    return env;
}

} // namespace opplab::dirichlet
