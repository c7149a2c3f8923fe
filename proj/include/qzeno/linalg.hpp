#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qzeno/errors.hpp"

namespace qzeno {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix diagonal(std::span<const double> values);
    // |v><v| for a column vector v.
    static ComplexMatrix outer(std::span<const Complex> v);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<Complex> entries() noexcept { return data_; }

    Complex& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
        return data_[row * dim_ + col];
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scalar) noexcept;
    ComplexMatrix& operator/=(Complex scalar) noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);

// U M U^dagger
ComplexMatrix conjugate_by(const ComplexMatrix& unitary, const ComplexMatrix& m);

// Largest entrywise |a - b|. Throws DimensionError on size mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);
double max_abs_imag(const ComplexMatrix& m) noexcept;
bool is_hermitian(const ComplexMatrix& m, double tol);

// Kronecker product; `a` indexes the high-order (leftmost) subsystem.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Lift `op`, acting on the listed subsystem slots (in the order given), into the
// full space whose subsystems have dimensions `dims`. Identity on the rest.
ComplexMatrix embed_on_subsystems(const ComplexMatrix& op,
                                  std::span<const std::size_t> slots,
                                  std::span<const std::size_t> dims);

// Trace out the trailing (low-order) factor, keeping the leading `keep_dim` one.
ComplexMatrix partial_trace_trailing(const ComplexMatrix& m, std::size_t keep_dim);

struct HermitianEigen {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

inline constexpr double kHermitianTolerance = 1e-10;

// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius norm drops
// below 1e-14 (relative to the input norm when that exceeds one).
HermitianEigen hermitian_eigen(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double trace_norm(const ComplexMatrix& m);

}  // namespace qzeno
