// Error taxonomy shared by all modules.  The CLI maps kinds to exit codes:
// validation/cap -> 2, computational -> 3, budget -> 4.

#pragma once

#include <stdexcept>
#include <string>

namespace opplab {

enum class Errc {
    validation,
    cap_exceeded,
    positivity_violated,
    quadrature_not_converged,
    quadrature_imbalance,
    budget_exceeded,
    mixed_n,
    insufficient_range,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void throw_validation(const std::string& msg) {
    throw Error(Errc::validation, msg);
}

} // namespace opplab
