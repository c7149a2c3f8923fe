#include "qzeno/states.hpp"

#include <cmath>

#include <fmt/format.h>

namespace qzeno {

namespace {

void check_hermitian_unit_trace(const ComplexMatrix& m) {
    if (!is_hermitian(m, DensityMatrix::kTolerance)) {
        throw NumericalError("density matrix is not Hermitian");
    }
    const Complex tr = m.trace();
    if (std::abs(tr - 1.0) > DensityMatrix::kTolerance) {
        throw NumericalError(fmt::format("density matrix trace is {} (expected 1)", tr.real()));
    }
}

DensityMatrix diagonal_third(std::array<std::size_t, 3> support) {
    ComplexMatrix m(kTwoQutrit);
    for (std::size_t idx : support) m(idx, idx) = 1.0 / 3.0;
    return DensityMatrix(std::move(m));
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    check_hermitian_unit_trace(m_);
    const auto spectrum = hermitian_eigenvalues(m_);
    if (!spectrum.empty() && spectrum.front() < -kTolerance) {
        throw NumericalError(fmt::format("density matrix has negative eigenvalue {}", spectrum.front()));
    }
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
    check_hermitian_unit_trace(m);
    return DensityMatrix(std::move(m), Unchecked{});
}

PureState::PureState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    double norm2 = 0.0;
    for (const Complex& z : amps_) norm2 += std::norm(z);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) {
        throw NumericalError(fmt::format("pure state norm is {} (expected 1)", std::sqrt(norm2)));
    }
}

DensityMatrix density(const PureState& psi) { return DensityMatrix(ComplexMatrix::outer(psi.amplitudes())); }

PureState psi_plus() {
    std::vector<Complex> amps(kTwoQutrit, Complex{0.0, 0.0});
    const double a = 1.0 / std::sqrt(3.0);
    for (std::size_t l = 0; l < kQutrit; ++l) amps[basis_index(l, l)] = a;
    return PureState(std::move(amps));
}

DensityMatrix sigma_plus() {
    return diagonal_third({basis_index(0, 1), basis_index(1, 2), basis_index(2, 0)});
}

DensityMatrix sigma_minus() {
    return diagonal_third({basis_index(1, 0), basis_index(2, 1), basis_index(0, 2)});
}

DensityMatrix sigma_alpha(double alpha) {
    if (!(alpha >= 2.0 && alpha <= 5.0)) {
        throw ParameterError(fmt::format("alpha must lie in [2, 5], got {}", alpha));
    }
    ComplexMatrix m = (2.0 / 7.0) * density(psi_plus()).matrix();
    m += (alpha / 7.0) * sigma_plus().matrix();
    m += ((5.0 - alpha) / 7.0) * sigma_minus().matrix();
    return DensityMatrix(std::move(m));
}

DensityMatrix sigma_free(double fidelity) {
    if (!(fidelity > 0.0 && fidelity < 1.0)) {
        throw ParameterError(fmt::format("F must lie in (0, 1), got {}", fidelity));
    }
    ComplexMatrix m = fidelity * density(psi_plus()).matrix();
    m += (1.0 - fidelity) * sigma_plus().matrix();
    return DensityMatrix(std::move(m));
}

ComplexMatrix z_projector(int level) {
    if (level < 0 || level >= static_cast<int>(kQutrit)) {
        throw ParameterError(fmt::format("qutrit level must be 0, 1 or 2, got {}", level));
    }
    ComplexMatrix p(kQutrit);
    p(level, level) = 1.0;
    return p;
}

}  // namespace qzeno
