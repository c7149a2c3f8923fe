#include "qzeno/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace qzeno {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw DimensionError(fmt::format("{}: dimension mismatch ({} vs {})", op, a.dim(), b.dim()));
    }
}

double frobenius_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (const Complex& z : m.entries()) sum += std::norm(z);
    return std::sqrt(sum);
}

double off_diagonal_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) sum += std::norm(m(i, j));
    return std::sqrt(sum);
}

constexpr double kJacobiOffDiagonalThreshold = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim_ * dim_) {
        throw DimensionError(
            fmt::format("matrix of dim {} needs {} entries, got {}", dim_, dim_ * dim_, data_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Complex ComplexMatrix::trace() const noexcept {
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
    return sum;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) noexcept {
    for (Complex& z : data_) z *= scalar;
    return *this;
}

ComplexMatrix& ComplexMatrix::operator/=(Complex scalar) noexcept {
    for (Complex& z : data_) z /= scalar;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(ComplexMatrix m, Complex scalar) { return m *= scalar; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs, rhs, "operator*");
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix conjugate_by(const ComplexMatrix& unitary, const ComplexMatrix& m) {
    // U m U^dagger = (U (U m)^dagger)^dagger keeps U on the left of both
    // products, where operator* skips its zero entries.
    return (unitary * (unitary * m).adjoint()).adjoint();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    return worst;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

double max_abs_imag(const ComplexMatrix& m) noexcept {
    double worst = 0.0;
    for (const Complex& z : m.entries()) worst = std::max(worst, std::abs(z.imag()));
    return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix embed_on_subsystems(const ComplexMatrix& op,
                                  std::span<const std::size_t> slots,
                                  std::span<const std::size_t> dims) {
    if (slots.empty()) throw DimensionError("embed_on_subsystems: no target slots");
    std::vector<bool> used(dims.size(), false);
    std::size_t op_dim = 1;
    for (std::size_t s : slots) {
        if (s >= dims.size()) {
            throw DimensionError(fmt::format("embed_on_subsystems: slot {} out of range", s));
        }
        if (used[s]) throw DimensionError(fmt::format("embed_on_subsystems: duplicate slot {}", s));
        used[s] = true;
        op_dim *= dims[s];
    }
    if (op_dim != op.dim()) {
        throw DimensionError(fmt::format(
            "embed_on_subsystems: operator dim {} does not match slot dims product {}", op.dim(), op_dim));
    }

    const std::size_t n = dims.size();
    // strides[s]: weight of subsystem s in the global index (slot 0 is most significant)
    std::vector<std::size_t> strides(n, 1);
    for (std::size_t s = n; s-- > 1;) strides[s - 1] = strides[s] * dims[s];
    const std::size_t full = strides[0] * dims[0];

    // Local operator index digits follow the order of `slots`.
    std::vector<std::size_t> local_strides(slots.size(), 1);
    for (std::size_t t = slots.size(); t-- > 1;) local_strides[t - 1] = local_strides[t] * dims[slots[t]];

    ComplexMatrix out(full);
    for (std::size_t row = 0; row < full; ++row) {
        std::size_t local_row = 0;
        std::size_t base = row;
        for (std::size_t t = 0; t < slots.size(); ++t) {
            const std::size_t digit = (row / strides[slots[t]]) % dims[slots[t]];
            local_row += digit * local_strides[t];
            base -= digit * strides[slots[t]];
        }
        for (std::size_t local_col = 0; local_col < op_dim; ++local_col) {
            const Complex value = op(local_row, local_col);
            if (value == Complex{0.0, 0.0}) continue;
            std::size_t col = base;
            for (std::size_t t = 0; t < slots.size(); ++t) {
                const std::size_t digit = (local_col / local_strides[t]) % dims[slots[t]];
                col += digit * strides[slots[t]];
            }
            out(row, col) = value;
        }
    }
    return out;
}

ComplexMatrix partial_trace_trailing(const ComplexMatrix& m, std::size_t keep_dim) {
    if (keep_dim == 0 || m.dim() % keep_dim != 0) {
        throw DimensionError(fmt::format("partial_trace_trailing: {} does not divide {}", keep_dim, m.dim()));
    }
    const std::size_t traced = m.dim() / keep_dim;
    ComplexMatrix out(keep_dim);
    for (std::size_t u = 0; u < keep_dim; ++u)
        for (std::size_t v = 0; v < keep_dim; ++v)
            for (std::size_t t = 0; t < traced; ++t) out(u, v) += m(u * traced + t, v * traced + t);
    return out;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    if (!is_hermitian(m, kHermitianTolerance)) {
        throw NumericalError("hermitian_eigen: input is not Hermitian within tolerance");
    }
    const std::size_t n = m.dim();
    // Work on the exactly Hermitian part so rounding asymmetry cannot accumulate.
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = kJacobiOffDiagonalThreshold * std::max(1.0, frobenius_norm(a));

    int sweep = 0;
    while (off_diagonal_norm(a) > threshold) {
        if (++sweep > kJacobiMaxSweeps) {
            throw NumericalError("hermitian_eigen: Jacobi iteration did not converge");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double b = std::abs(a(p, q));
                if (b < 1e-300) continue;
                const Complex phase = a(p, q) / b;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * b);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex s_phase = s * phase;
                const Complex s_phase_conj = s * std::conj(phase);

                // a <- a J, with J_pp = J_qq = c, J_pq = s e, J_qp = -s conj(e)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s_phase_conj * akq;
                    a(k, q) = s_phase * akp + c * akq;
                }
                // a <- J^dagger a
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s_phase * aqk;
                    a(q, k) = s_phase_conj * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s_phase_conj * vkq;
                    v(k, q) = s_phase * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    HermitianEigen result{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        result.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) result.eigenvectors(r, k) = v(r, order[k]);
    }
    return result;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eigen(m).eigenvalues;
}

double trace_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (double lambda : hermitian_eigenvalues(m)) sum += std::abs(lambda);
    return sum;
}

}  // namespace qzeno
