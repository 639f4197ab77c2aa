// Double-double arithmetic, just enough for exact-ish lattice values and the
// phase contract: t*log(v) reduced mod 2pi must stay within 1e-6 rad of an
// extended-precision reference for |t| <= 1e8 and v in [1, 4N^2].

#pragma once

#include <cmath>
#include <complex>

namespace opplab::dd {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

// Knuth two_sum: a + b = s + err exactly.
inline DD two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    double e = (a - (s - v)) + (b - v);
    return {s, e};
}

// Fast path requiring |a| >= |b|.
inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    double e = b - (s - a);
    return {s, e};
}

// a * b = p + err exactly.
inline DD two_prod(double a, double b) {
#ifdef FP_FAST_FMA
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
#else
    // Dekker splitting.
    constexpr double splitter = 134217729.0; // 2^27 + 1
    double p = a * b;
    double ca = splitter * a;
    double ahi = ca - (ca - a), alo = a - ahi;
    double cb = splitter * b;
    double bhi = cb - (cb - b), blo = b - bhi;
    double e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
    return {p, e};
#endif
}

inline DD add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    double e = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, e);
}

inline DD add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    double e = s.lo + a.lo;
    return quick_two_sum(s.hi, e);
}

inline DD sub(DD a, DD b) { return add(a, DD{-b.hi, -b.lo}); }
inline DD sub(DD a, double b) { return add(a, -b); }
inline DD neg(DD a) { return {-a.hi, -a.lo}; }

inline DD mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    double e = p.lo + a.lo * b;
    return quick_two_sum(p.hi, e);
}

inline DD mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    double e = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, e);
}

inline double to_double(DD a) { return a.hi + a.lo; }
inline DD abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? neg(a) : a; }

inline int compare(DD a, DD b) {
    if (a.hi < b.hi) return -1;
    if (a.hi > b.hi) return 1;
    if (a.lo < b.lo) return -1;
    if (a.lo > b.lo) return 1;
    return 0;
}

// 2*pi to double-double precision.
inline constexpr DD TWO_PI = {6.283185307179586476925286766559, 2.4492935982947063545e-16};

// log(v) for v > 0, accurate to ~1e-19 relative (80-bit logl split into two
// doubles; plenty below the 1e-6 rad phase budget at t = 1e8).
inline DD log(double v) {
    long double l = logl((long double)v);
    double hi = (double)l;
    double lo = (double)(l - (long double)hi);
    return {hi, lo};
}

// Reduce a double-double angle into (-pi, pi].
inline double mod_two_pi(DD x) {
    double k = std::nearbyint(x.hi / TWO_PI.hi);
    DD r = sub(x, mul(TWO_PI, k));
    // One correction step keeps the result inside the principal range.
    if (r.hi > TWO_PI.hi / 2) r = sub(r, TWO_PI);
    if (r.hi < -TWO_PI.hi / 2) r = add(r, TWO_PI);
    return to_double(r);
}

// t * logv mod 2pi, the shared phase kernel for every exponential sum here.
inline double phase(double t, DD logv) {
    DD p = mul(logv, t);
    return mod_two_pi(p);
}

inline double phase_mod_2pi(double t, double v) { return phase(t, log(v)); }

// e^{i t log v} via the reduced phase.
inline std::complex<double> unit_phase(double t, DD logv) {
    double th = phase(t, logv);
    return {std::cos(th), std::sin(th)};
}

} // namespace opplab::dd
