#include "qzeno/measures.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace qzeno {

BipartiteSplit BipartiteSplit::two_qutrits() { return {{kQutrit, kQutrit}, {0}}; }

std::size_t BipartiteSplit::total_dim() const {
    std::size_t d = 1;
    for (std::size_t x : dims) d *= x;
    return d;
}

void BipartiteSplit::validate() const {
    if (dims.empty() || a_slots.empty() || a_slots.size() >= dims.size()) {
        throw DimensionError("bipartite split needs a non-empty proper subset of subsystems as A");
    }
    std::vector<bool> seen(dims.size(), false);
    for (std::size_t s : a_slots) {
        if (s >= dims.size() || seen[s]) {
            throw DimensionError(fmt::format("bipartite split: invalid or duplicate slot {}", s));
        }
        seen[s] = true;
    }
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const BipartiteSplit& split) {
    split.validate();
    const std::size_t n = split.total_dim();
    if (rho.dim() != n) {
        throw DimensionError(fmt::format("partial_transpose: state dim {} vs split dim {}", rho.dim(), n));
    }
    const std::size_t count = split.dims.size();
    std::vector<std::size_t> strides(count, 1);
    for (std::size_t s = count; s-- > 1;) strides[s - 1] = strides[s] * split.dims[s];

    ComplexMatrix out(n);
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            // Swap the A digits between row and column.
            std::size_t r = row;
            std::size_t c = col;
            for (std::size_t s : split.a_slots) {
                const std::size_t dr = (row / strides[s]) % split.dims[s];
                const std::size_t dc = (col / strides[s]) % split.dims[s];
                r = r - dr * strides[s] + dc * strides[s];
                c = c - dc * strides[s] + dr * strides[s];
            }
            out(r, c) = rho(row, col);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const BipartiteSplit& split) {
    return partial_transpose(rho.matrix(), split);
}

NegativityReport negativity_report(const DensityMatrix& rho, const BipartiteSplit& split) {
    const auto spectrum = hermitian_eigenvalues(partial_transpose(rho, split));
    double negative = 0.0;
    double abs_sum = 0.0;
    for (double mu : spectrum) {
        abs_sum += std::abs(mu);
        if (mu <= -kNegativeCutoff) negative += mu;
    }
    return {std::abs(negative), std::max(0.0, (abs_sum - 1.0) / 2.0), spectrum.front()};
}

double negativity(const DensityMatrix& rho, const BipartiteSplit& split) {
    const NegativityReport report = negativity_report(rho, split);
    // Sub-cutoff negative eigenvalues still enter the trace norm; allow for them.
    if (std::abs(report.eigen_sum - report.trace_norm) > 1e-10 + rho.dim() * kNegativeCutoff) {
        throw NumericalError(fmt::format("negativity routes disagree: {} vs {}", report.eigen_sum,
                                         report.trace_norm));
    }
    return report.eigen_sum;
}

double fidelity_to_psi_plus(const ComplexMatrix& rho) {
    if (rho.dim() != kTwoQutrit) {
        throw DimensionError(fmt::format("fidelity_to_psi_plus: expected 9x9 state, got dim {}", rho.dim()));
    }
    const PureState psi = psi_plus();
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < kTwoQutrit; ++i)
        for (std::size_t j = 0; j < kTwoQutrit; ++j) sum += std::conj(psi[i]) * rho(i, j) * psi[j];
    return sum.real();
}

double fidelity_to_psi_plus(const DensityMatrix& rho) { return fidelity_to_psi_plus(rho.matrix()); }

PptClass classify_ppt(const DensityMatrix& rho, const BipartiteSplit& split) {
    const auto spectrum = hermitian_eigenvalues(partial_transpose(rho, split));
    return spectrum.front() >= -kNegativeCutoff ? PptClass::PPT : PptClass::NPT;
}

const char* to_string(PptClass c) noexcept { return c == PptClass::PPT ? "PPT" : "NPT"; }

}  // namespace qzeno
