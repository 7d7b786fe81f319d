#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hardy {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense complex matrix, row-major.
///
/// Entries built from the Pauli/Dirac definitions are exact (0, +-1, +-i), so
/// structural identities between them can be compared with operator==.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix zero(std::size_t rows, std::size_t cols);
    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix adjoint() const;
    /// Largest entry modulus.
    double max_abs() const noexcept;
    bool all_finite() const noexcept;

    /// max |M - M^H| <= rel_tol * max|M|
    bool is_hermitian(double rel_tol = 1e-12) const;
    /// max |M + M^H| <= rel_tol * max|M|
    bool is_antihermitian(double rel_tol = 1e-12) const;

    ComplexVector apply(std::span<const Complex> v) const;

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

/// Commutator [a, b] = ab - ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// <x, y> = sum_i x_i conj(y_i)
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);

/// Pauli matrix sigma_index, index in {1, 2, 3}. Throws std::out_of_range otherwise.
ComplexMatrix pauli(int index);
/// 4x4 Dirac matrix alpha_index = [[0, sigma], [sigma, 0]].
ComplexMatrix dirac_alpha(int index);
/// beta = diag(I2, -I2).
ComplexMatrix dirac_beta();

/// Residual |2 Re<Au, Su> - <[S, A]u, u>| for Hermitian S and anti-Hermitian A.
///
/// Both sides agree for any vector u; the residual is pure rounding. Inputs that
/// fail the symmetry predicates or have mismatched dimensions are rejected with
/// std::invalid_argument.
double commutator_identity_check(const ComplexMatrix& S, const ComplexMatrix& A,
                                 std::span<const Complex> u);

}  // namespace hardy
