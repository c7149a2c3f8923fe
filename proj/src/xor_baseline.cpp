#include "qzeno/xor_baseline.hpp"

#include <fmt/format.h>

#include "qzeno/errors.hpp"

namespace qzeno {

namespace {

XorRoundResult closed_form(double fidelity, double alpha) {
    const double denom = 2.0 * fidelity + (1.0 - fidelity) * (5.0 - alpha);
    const double p = denom / 7.0;
    return {2.0 * fidelity / denom, p, p};
}

void check_alpha(double alpha) {
    if (!(alpha >= 2.0 && alpha <= 5.0)) {
        throw ParameterError(fmt::format("alpha must lie in [2, 5], got {}", alpha));
    }
}

}  // namespace

XorRoundResult xor_round(double fidelity, double alpha) {
    if (!(fidelity > 0.0 && fidelity < 1.0)) {
        throw ParameterError(fmt::format("F must lie in (0, 1), got {}", fidelity));
    }
    check_alpha(alpha);
    return closed_form(fidelity, alpha);
}

std::vector<XorRoundResult> xor_trajectory(double initial_fidelity, double alpha, int rounds) {
    if (!(initial_fidelity > 0.0 && initial_fidelity < 1.0)) {
        throw ParameterError(fmt::format("F must lie in (0, 1), got {}", initial_fidelity));
    }
    check_alpha(alpha);
    if (rounds < 1) throw ParameterError(fmt::format("rounds must be at least 1, got {}", rounds));
    std::vector<XorRoundResult> out;
    out.reserve(static_cast<std::size_t>(rounds));
    double f = initial_fidelity;
    double cumulative = 1.0;
    for (int r = 0; r < rounds; ++r) {
        XorRoundResult step = closed_form(f, alpha);
        cumulative *= step.success_probability;
        step.cumulative_probability = cumulative;
        f = step.fidelity_next;
        out.push_back(step);
    }
    return out;
}

}  // namespace qzeno
