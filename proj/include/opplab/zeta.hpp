// zeta(1/2 + it) by Euler-Maclaurin with a hard |t| cap, and the decaying
// envelope integral int |zeta(1/2 + i(y-t))| / (1 + |y|^10) dy.

#pragma once

#include <complex>

namespace opplab::dirichlet {

inline constexpr double kZetaBudget = 1e4;

// Euler-Maclaurin with cutoff M = max(50, 4|t|), corrections through the
// B4 term; absolute error target 1e-8.  Throws BudgetExceeded past the cap.
std::complex<double> zeta_critical_line(double t);

struct ZetaEnvelope {
    double value = 0.0;      // truncated integral over |y| <= y_cut
    double tail_bound = 0.0; // interval bound on the discarded tail
};

// Requires |t| + y_cut <= budget; the tail uses |zeta(1/2+iu)| <= 5(1+|u|)^{1/6}.
ZetaEnvelope zeta_envelope(double t, double y_cut);

} // namespace opplab::dirichlet
