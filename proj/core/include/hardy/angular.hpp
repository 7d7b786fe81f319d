#pragma once

#include "hardy/algebra.hpp"

#include <array>
#include <functional>
#include <string_view>
#include <vector>

namespace hardy {

using Vec3 = std::array<double, 3>;
using Spinor2 = std::array<Complex, 2>;
using Spinor4 = std::array<Complex, 4>;

/// Partial-wave label (j, m_j, kappa). Half-integers are stored doubled so that
/// channel arithmetic is exact: two_j = 2j, two_m = 2 m_j, |kappa| = j + 1/2.
class ChannelIndex {
public:
    /// Throws std::invalid_argument unless two_j is a positive odd integer,
    /// two_m has the same parity with |two_m| <= two_j, and |kappa| = (two_j + 1) / 2.
    ChannelIndex(int two_j, int two_m, int kappa);

    /// Channel with j = |kappa| - 1/2.
    static ChannelIndex from_kappa(int kappa, int two_m = 1);

    int two_j() const noexcept { return two_j_; }
    int two_m() const noexcept { return two_m_; }
    int kappa() const noexcept { return kappa_; }
    double j() const noexcept { return 0.5 * two_j_; }
    double m() const noexcept { return 0.5 * two_m_; }

    friend bool operator==(const ChannelIndex&, const ChannelIndex&) = default;

private:
    int two_j_;
    int two_m_;
    int kappa_;
};

/// All channels with j <= two_j_max / 2, ordered by j, kappa, m_j.
std::vector<ChannelIndex> channels_up_to(int two_j_max);

enum class BasisSign { plus, minus };

/// Which of the two Pauli spinors of a given j: orbital degree j - 1/2 or j + 1/2.
enum class PsiBranch { j_minus_half, j_plus_half };

/// Orthonormal spherical harmonic Y_n^l(theta, phi), Condon-Shortley phase.
/// Throws std::invalid_argument when n < 0 or |l| > n.
Complex sph_harm(int n, int l, double theta, double phi);

Spinor2 pauli_spinor(const ChannelIndex& channel, PsiBranch branch, double theta, double phi);

/// Phi^+ = (i Psi, 0), Phi^- = (0, Psi'). For kappa = +(j+1/2) the upper block
/// uses the j+1/2 branch and the lower block the j-1/2 branch; for negative
/// kappa the branches swap.
Spinor4 dirac_spinor(const ChannelIndex& channel, BasisSign sign, double theta, double phi);
Spinor4 dirac_spinor(const ChannelIndex& channel, BasisSign sign, const Vec3& direction);

/// Orbital degree of the block occupied by Phi^sign.
int occupied_degree(const ChannelIndex& channel, BasisSign sign);

/// Eigenvalue of (1 + 2 S.L) on Phi^sign via 2 S.L = J^2 - L^2 - S^2. Equals
/// -kappa on Phi^+ and +kappa on Phi^-.
double apply_spin_orbit(const ChannelIndex& channel, BasisSign sign);

enum class ChannelOperator { spin_orbit, beta, i_alpha_xhat };

/// Parses "spin_orbit", "beta" or "i_alpha_xhat"; throws std::invalid_argument otherwise.
ChannelOperator parse_channel_operator(std::string_view tag);

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// 2x2 action on (f+, f-): diag(-kappa, kappa), diag(1, -1) or [[0, 1], [-1, 0]].
Matrix2 apply_channel_matrix(ChannelOperator op, const ChannelIndex& channel);

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times the
/// trapezoid rule in phi. Immutable after construction.
class AngularGrid {
public:
    struct Node {
        double theta;
        double phi;
        double weight;
        Vec3 direction;
    };

    explicit AngularGrid(int theta_order = 24, int phi_points = 48);

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    int theta_order() const noexcept { return theta_order_; }
    int phi_points() const noexcept { return phi_points_; }
    double weight_sum() const noexcept;

    /// Largest n such that every Y_n^l is integrated exactly in exact arithmetic.
    int exactness_degree() const noexcept;

    /// max over n <= degree, |l| <= n of |quadrature(Y_n^l) - sqrt(4 pi) delta_{n0}|.
    double exactness_error(int degree) const;

    template <class F>
    auto integrate(F&& f) const {
        decltype(f(nodes_.front())) acc{};
        for (const auto& node : nodes_) acc += node.weight * f(node);
        return acc;
    }

private:
    int theta_order_;
    int phi_points_;
    std::vector<Node> nodes_;
};

Complex inner(const Spinor4& a, const Spinor4& b);

/// Gram matrix of {Phi^+_{m,kappa}, Phi^-_{m,kappa}} over the given channels,
/// basis order (channel 0, +), (channel 0, -), (channel 1, +), ...
ComplexMatrix dirac_basis_gram(const std::vector<ChannelIndex>& channels, const AngularGrid& grid);

/// Same for the Pauli spinors Psi^{m_j}_{j -+ 1/2} of the distinct (j, m_j).
ComplexMatrix pauli_basis_gram(int two_j_max, const AngularGrid& grid);

/// max |G - I|
double identity_deviation(const ComplexMatrix& gram);

using SpinorFieldOnSphere = std::function<Spinor4(const Vec3&)>;

/// Applies (1 + 2 S.L) at the unit vector x with L = -i x ^ grad, derivatives by
/// second-order central differences in ambient coordinates. The field is
/// evaluated at x / |x|, i.e. extended as a degree-zero homogeneous function.
Spinor4 spin_orbit_finite_difference(const SpinorFieldOnSphere& field, const Vec3& x, double step);

struct FiniteDifferenceEstimate {
    double value;
    /// |estimate(step) - estimate(step / 2)|
    double richardson_gap;
    bool low_confidence;
};

/// Rayleigh quotient <Phi, (1 + 2 S.L) Phi> / <Phi, Phi> with the operator applied
/// by finite differences. Flagged low-confidence when the step exceeds 1e-2 or
/// halving the step moves the estimate by more than 1e-4.
FiniteDifferenceEstimate finite_difference_spin_orbit_oracle(const ChannelIndex& channel, BasisSign sign,
                                                             double step, const AngularGrid& grid);

/// <Phi^a, O Phi^b> for O in {beta, i alpha.xhat} by angular quadrature, and for
/// O = 1 + 2 S.L by the finite-difference route with the given step.
ComplexMatrix projected_channel_matrix(ChannelOperator op, const ChannelIndex& channel,
                                       const AngularGrid& grid, double fd_step = 1e-4);

}  // namespace hardy
