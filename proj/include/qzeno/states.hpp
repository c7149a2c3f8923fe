#pragma once

#include <array>
#include <cstddef>

#include "qzeno/linalg.hpp"

namespace qzeno {

inline constexpr std::size_t kQutrit = 3;
inline constexpr std::size_t kTwoQutrit = 9;

// Validated density operator: Hermitian, unit trace, PSD (all within 1e-10).
class DensityMatrix {
public:
    static constexpr double kTolerance = 1e-10;

    // Validates; throws NumericalError if `m` is not a density operator.
    explicit DensityMatrix(ComplexMatrix m);

    // Skips the spectral PSD check; Hermiticity and trace are still checked.
    // Used on hot paths whose outputs are PSD by construction.
    static DensityMatrix trusted(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return m_(r, c); }

    friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

// Normalized state vector.
class PureState {
public:
    explicit PureState(std::vector<Complex> amplitudes);

    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    const Complex& operator[](std::size_t i) const noexcept { return amps_[i]; }

private:
    std::vector<Complex> amps_;
};

DensityMatrix density(const PureState& psi);

// Two-qutrit basis index of |a b>: 3a + b.
constexpr std::size_t basis_index(std::size_t a, std::size_t b) noexcept { return kQutrit * a + b; }

PureState psi_plus();
DensityMatrix sigma_plus();
DensityMatrix sigma_minus();
// (2/7)|psi+><psi+| + (alpha/7) sigma_plus + ((5-alpha)/7) sigma_minus, alpha in [2,5].
DensityMatrix sigma_alpha(double alpha);
// F |psi+><psi+| + (1-F) sigma_plus, F in (0,1).
DensityMatrix sigma_free(double fidelity);

// |level><level| on one qutrit.
ComplexMatrix z_projector(int level);

}  // namespace qzeno
