#include "hardy/algebra.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hardy;

namespace {

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

// brute force 2 Re<Au,Su> and <[S,A]u,u>, written out without the library helpers
double brute_residual(const ComplexMatrix& S, const ComplexMatrix& A, const ComplexVector& u) {
    const std::size_t n = u.size();
    ComplexVector au(n), su(n), cu(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            au[i] += A(i, k) * u[k];
            su[i] += S(i, k) * u[k];
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            Complex sa = 0, as = 0;
            for (std::size_t l = 0; l < n; ++l) {
                sa += S(i, l) * A(l, k);
                as += A(i, l) * S(l, k);
            }
            cu[i] += (sa - as) * u[k];
        }
    Complex lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        lhs += au[i] * std::conj(su[i]);
        rhs += cu[i] * std::conj(u[i]);
    }
    return std::abs(2.0 * lhs.real() - rhs);
}

}  // namespace

TEST(Pauli, Sigma3IsDiagonal) {
    const ComplexMatrix s3 = pauli(3);
    EXPECT_EQ(s3(0, 0), Complex(1));
    EXPECT_EQ(s3(1, 1), Complex(-1));
    EXPECT_EQ(s3(0, 1), Complex(0));
    EXPECT_EQ(s3(1, 0), Complex(0));
}

TEST(Pauli, SquaresAndAnticommutators) {
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            const auto ac = anticommutator(pauli(i), pauli(j));
            EXPECT_EQ(ac, i == j ? Complex(2) * ComplexMatrix::identity(2) : ComplexMatrix::zero(2, 2)) << i << j;
        }
}

TEST(Pauli, ProductIsISigma) {
    EXPECT_EQ(pauli(1) * pauli(2), Complex(0, 1) * pauli(3));
}

TEST(Pauli, RejectsBadIndex) {
    EXPECT_THROW(pauli(0), std::out_of_range);
    EXPECT_THROW(pauli(4), std::out_of_range);
}

TEST(Dirac, CliffordRelations) {
    const auto b = dirac_beta();
    EXPECT_EQ(b * b, ComplexMatrix::identity(4));
    for (int i = 1; i <= 3; ++i) {
        EXPECT_EQ(anticommutator(dirac_alpha(i), b), ComplexMatrix::zero(4, 4));
        EXPECT_TRUE(dirac_alpha(i).is_hermitian(0.0));
        for (int j = 1; j <= 3; ++j)
            EXPECT_EQ(anticommutator(dirac_alpha(i), dirac_alpha(j)),
                      i == j ? Complex(2) * ComplexMatrix::identity(4) : ComplexMatrix::zero(4, 4));
    }
}

TEST(Dirac, BlockForm) {
    const auto a2 = dirac_alpha(2);
    const auto s2 = pauli(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            EXPECT_EQ(a2(i, j + 2), s2(i, j));
            EXPECT_EQ(a2(i + 2, j), s2(i, j));
            EXPECT_EQ(a2(i, j), Complex(0));
        }
}

TEST(Matrix, InnerIsConjugateLinearInSecondSlot) {
    const ComplexVector x{{1, 2}, {0, 1}};
    const ComplexVector y{{0, 1}, {3, 0}};
    // x0 conj(y0) + x1 conj(y1) = (1+2i)(-i) + i*3
    EXPECT_EQ(inner(x, y), Complex(2, -1) + Complex(0, 3));
    EXPECT_DOUBLE_EQ(norm(x), std::sqrt(6.0));
}

TEST(Matrix, ShapeMismatchThrows) {
    EXPECT_THROW(ComplexMatrix(2, 2) * ComplexMatrix(3, 3), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(2, 2) + ComplexMatrix(2, 3), std::invalid_argument);
}

TEST(CommutatorIdentity, ZeroAntiHermitianGivesZero) {
    std::mt19937_64 rng(3);
    auto m = random_matrix(5, rng);
    const auto S = Complex(0.5) * (m + m.adjoint());
    const ComplexVector u{{1, 0}, {0, 2}, {3, 1}, {-1, 1}, {0.5, 0}};
    EXPECT_EQ(commutator_identity_check(S, ComplexMatrix::zero(5, 5), u), 0.0);
}

TEST(CommutatorIdentity, IdentitySGivesZero) {
    std::mt19937_64 rng(4);
    auto m = random_matrix(4, rng);
    const auto A = Complex(0.5) * (m - m.adjoint());
    const ComplexVector u{{1, 1}, {0, 2}, {3, -1}, {0.25, 1}};
    EXPECT_LE(commutator_identity_check(ComplexMatrix::identity(4), A, u), 1e-13);
}

TEST(CommutatorIdentity, MatchesBruteForceAtRoundingLevel) {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    for (std::size_t n = 1; n <= 8; ++n) {
        auto m1 = random_matrix(n, rng), m2 = random_matrix(n, rng);
        const auto S = Complex(0.5) * (m1 + m1.adjoint());
        const auto A = Complex(0.5) * (m2 - m2.adjoint());
        ComplexVector u(n);
        for (auto& c : u) c = {g(rng), g(rng)};
        double fs = 0, fa = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                fs += std::norm(S(i, j));
                fa += std::norm(A(i, j));
            }
        const double scale = std::sqrt(fs * fa) * std::pow(norm(u), 2);
        EXPECT_LE(commutator_identity_check(S, A, u), 1e-12 * scale);
        EXPECT_LE(brute_residual(S, A, u), 1e-12 * scale);
    }
}

TEST(CommutatorIdentity, RejectsWrongSymmetry) {
    std::mt19937_64 rng(5);
    auto m = random_matrix(3, rng);
    const ComplexVector u(3, Complex(1));
    EXPECT_THROW(commutator_identity_check(m, Complex(0.5) * (m - m.adjoint()), u), std::invalid_argument);
    EXPECT_THROW(commutator_identity_check(Complex(0.5) * (m + m.adjoint()), m, u), std::invalid_argument);
    EXPECT_THROW(commutator_identity_check(ComplexMatrix::identity(3), ComplexMatrix::zero(3, 3), ComplexVector(2)),
                 std::invalid_argument);
}
