#include "hardy/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hardy {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    if (data_.size() != rows * cols)
        throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

double ComplexMatrix::max_abs() const noexcept {
    double best = 0.0;
    for (const auto& z : data_) best = std::max(best, std::abs(z));
    return best;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

namespace {

double symmetry_deviation(const ComplexMatrix& m, double sign) {
    double dev = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            dev = std::max(dev, std::abs(m(i, j) - sign * std::conj(m(j, i))));
    return dev;
}

}  // namespace

bool ComplexMatrix::is_hermitian(double rel_tol) const {
    if (rows_ != cols_ || !all_finite()) return false;
    return symmetry_deviation(*this, 1.0) <= rel_tol * max_abs();
}

bool ComplexMatrix::is_antihermitian(double rel_tol) const {
    if (rows_ != cols_ || !all_finite()) return false;
    return symmetry_deviation(*this, -1.0) <= rel_tol * max_abs();
}

ComplexVector ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != cols_) throw std::invalid_argument("ComplexMatrix::apply: dimension mismatch");
    ComplexVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("ComplexMatrix +: dimension mismatch");
    ComplexMatrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
    return m;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("ComplexMatrix -: dimension mismatch");
    ComplexMatrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
    return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("ComplexMatrix *: dimension mismatch");
    ComplexMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix m = a;
    for (auto& z : m.data_) z *= s;
    return m;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw std::invalid_argument("inner: dimension mismatch");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
    return acc;
}

double norm(std::span<const Complex> x) { return std::sqrt(std::abs(inner(x, x))); }

ComplexMatrix pauli(int index) {
    const Complex i{0.0, 1.0};
    switch (index) {
        case 1: return {2, 2, {0.0, 1.0, 1.0, 0.0}};
        case 2: return {2, 2, {0.0, -i, i, 0.0}};
        case 3: return {2, 2, {1.0, 0.0, 0.0, -1.0}};
        default:
            throw std::out_of_range("pauli: index must be 1, 2 or 3, got " + std::to_string(index));
    }
}

ComplexMatrix dirac_alpha(int index) {
    if (index < 1 || index > 3)
        throw std::out_of_range("dirac_alpha: index must be 1, 2 or 3, got " + std::to_string(index));
    const ComplexMatrix s = pauli(index);
    ComplexMatrix m(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            m(i, j + 2) = s(i, j);
            m(i + 2, j) = s(i, j);
        }
    return m;
}

ComplexMatrix dirac_beta() {
    ComplexMatrix m(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = -1.0;
    m(3, 3) = -1.0;
    return m;
}

double commutator_identity_check(const ComplexMatrix& S, const ComplexMatrix& A,
                                 std::span<const Complex> u) {
    if (S.rows() != S.cols() || A.rows() != A.cols() || S.rows() != A.rows() || u.size() != S.rows())
        throw std::invalid_argument("commutator_identity_check: incompatible dimensions");
    if (!S.is_hermitian()) throw std::invalid_argument("commutator_identity_check: S is not Hermitian");
    if (!A.is_antihermitian())
        throw std::invalid_argument("commutator_identity_check: A is not anti-Hermitian");

    const ComplexVector Au = A.apply(u);
    const ComplexVector Su = S.apply(u);
    const double lhs = 2.0 * inner(Au, Su).real();
    const ComplexVector Cu = commutator(S, A).apply(u);
    const Complex rhs = inner(Cu, u);
    return std::abs(Complex{lhs, 0.0} - rhs);
}

}  // namespace hardy
