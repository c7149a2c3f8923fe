#pragma once

#include <vector>

namespace qzeno {

// One round of the XOR-based activation recursion acting on the fidelity of
// sigma_free(F) with a sigma_alpha pair.
struct XorRoundResult {
    double fidelity_next;
    double success_probability;
    double cumulative_probability;
};

// F' = 2F / [2F + (1-F)(5-alpha)],  P = [2F + (1-F)(5-alpha)] / 7.
// Requires 0 < F < 1 and 2 <= alpha <= 5 (ParameterError otherwise).
XorRoundResult xor_round(double fidelity, double alpha);

// Iterates the recursion. At alpha = 5 the first round already reaches F = 1,
// a fixed point the closed form keeps (with probability 2/7 per round).
std::vector<XorRoundResult> xor_trajectory(double initial_fidelity, double alpha, int rounds);

}  // namespace qzeno
