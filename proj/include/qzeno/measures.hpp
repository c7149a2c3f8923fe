#pragma once

#include <cstddef>
#include <vector>

#include "qzeno/linalg.hpp"
#include "qzeno/states.hpp"

namespace qzeno {

// Bipartition of a register of subsystems into A (`a_slots`) and B (the rest).
struct BipartiteSplit {
    std::vector<std::size_t> dims;     // every subsystem, in global order
    std::vector<std::size_t> a_slots;  // subsystems belonging to A

    // Two qutrits, A = first.
    static BipartiteSplit two_qutrits();

    std::size_t total_dim() const;
    // Throws DimensionError unless a_slots are distinct, in range and proper.
    void validate() const;
};

// Transpose on the A indices only.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const BipartiteSplit& split);
ComplexMatrix partial_transpose(const DensityMatrix& rho, const BipartiteSplit& split);

// Eigenvalues of rho^T_A in (-kNegativeCutoff, 0) count as zero.
inline constexpr double kNegativeCutoff = 1e-10;

struct NegativityReport {
    double eigen_sum;   // |sum of negative eigenvalues of rho^T_A|
    double trace_norm;  // (||rho^T_A||_1 - 1) / 2
    double min_eigenvalue;
};

// Both negativity routes from one spectrum; no cross-check.
NegativityReport negativity_report(const DensityMatrix& rho,
                                   const BipartiteSplit& split = BipartiteSplit::two_qutrits());

// Negativity via the negative-eigenvalue sum. Throws NumericalError if the
// trace-norm route disagrees by more than 1e-10.
double negativity(const DensityMatrix& rho, const BipartiteSplit& split = BipartiteSplit::two_qutrits());

// <psi+| rho |psi+> on a two-qutrit state.
double fidelity_to_psi_plus(const DensityMatrix& rho);
double fidelity_to_psi_plus(const ComplexMatrix& rho);

enum class PptClass { PPT, NPT };

// Peres test only: PPT does not certify separability.
PptClass classify_ppt(const DensityMatrix& rho, const BipartiteSplit& split = BipartiteSplit::two_qutrits());

const char* to_string(PptClass c) noexcept;

}  // namespace qzeno
