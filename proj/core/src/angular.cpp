#include "hardy/angular.hpp"

#include "hardy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hardy {

namespace {

constexpr Complex kI{0.0, 1.0};

Vec3 to_angles(const Vec3& x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double theta = std::acos(std::clamp(x[2] / r, -1.0, 1.0));
    const double phi = std::atan2(x[1], x[0]);
    return {r, theta, phi};
}

// Y_n^l, zero when |l| > n so that the vanishing-coefficient entries of the
// Pauli spinors need no special casing.
Complex sph_harm_or_zero(int n, int l, double theta, double phi) {
    if (n < 0 || std::abs(l) > n) return 0.0;
    return sph_harm(n, l, theta, phi);
}

}  // namespace

ChannelIndex::ChannelIndex(int two_j, int two_m, int kappa) : two_j_(two_j), two_m_(two_m), kappa_(kappa) {
    if (two_j <= 0 || two_j % 2 == 0)
        throw std::invalid_argument("ChannelIndex: 2j must be a positive odd integer, got " +
                                    std::to_string(two_j));
    if (std::abs(two_m) > two_j || (two_m - two_j) % 2 != 0)
        throw std::invalid_argument("ChannelIndex: invalid 2m_j = " + std::to_string(two_m) +
                                    " for 2j = " + std::to_string(two_j));
    if (std::abs(kappa) != (two_j + 1) / 2)
        throw std::invalid_argument("ChannelIndex: |kappa| must equal j + 1/2, got kappa = " +
                                    std::to_string(kappa));
}

ChannelIndex ChannelIndex::from_kappa(int kappa, int two_m) {
    if (kappa == 0) throw std::invalid_argument("ChannelIndex: kappa must be non-zero");
    return {2 * std::abs(kappa) - 1, two_m, kappa};
}

std::vector<ChannelIndex> channels_up_to(int two_j_max) {
    std::vector<ChannelIndex> out;
    for (int two_j = 1; two_j <= two_j_max; two_j += 2) {
        const int k = (two_j + 1) / 2;
        for (int kappa : {-k, k})
            for (int two_m = -two_j; two_m <= two_j; two_m += 2) out.emplace_back(two_j, two_m, kappa);
    }
    return out;
}

Complex sph_harm(int n, int l, double theta, double phi) {
    if (n < 0 || std::abs(l) > n)
        throw std::invalid_argument("sph_harm: need 0 <= |l| <= n, got n = " + std::to_string(n) +
                                    ", l = " + std::to_string(l));
    const int am = std::abs(l);
    // std::sph_legendre includes the Condon-Shortley factor (-1)^m.
    const double p = std::sph_legendre(static_cast<unsigned>(n), static_cast<unsigned>(am), theta);
    const Complex y = p * std::polar(1.0, am * phi);
    if (l >= 0) return y;
    return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

Spinor2 pauli_spinor(const ChannelIndex& ch, PsiBranch branch, double theta, double phi) {
    const int two_j = ch.two_j();
    const int two_m = ch.two_m();
    // m_j -+ 1/2 as integers
    const int ml_down = (two_m - 1) / 2;
    const int ml_up = (two_m + 1) / 2;
    if (branch == PsiBranch::j_minus_half) {
        const int l = (two_j - 1) / 2;
        const double norm = 1.0 / std::sqrt(static_cast<double>(two_j));
        const double c1 = std::sqrt(0.5 * (two_j + two_m));
        const double c2 = std::sqrt(0.5 * (two_j - two_m));
        return {norm * c1 * sph_harm_or_zero(l, ml_down, theta, phi),
                norm * c2 * sph_harm_or_zero(l, ml_up, theta, phi)};
    }
    const int l = (two_j + 1) / 2;
    const double norm = 1.0 / std::sqrt(static_cast<double>(two_j + 2));
    const double c1 = std::sqrt(0.5 * (two_j + 2 - two_m));
    const double c2 = std::sqrt(0.5 * (two_j + 2 + two_m));
    return {norm * c1 * sph_harm_or_zero(l, ml_down, theta, phi),
            -norm * c2 * sph_harm_or_zero(l, ml_up, theta, phi)};
}

namespace {

PsiBranch upper_branch(const ChannelIndex& ch) {
    return ch.kappa() > 0 ? PsiBranch::j_plus_half : PsiBranch::j_minus_half;
}

PsiBranch lower_branch(const ChannelIndex& ch) {
    return ch.kappa() > 0 ? PsiBranch::j_minus_half : PsiBranch::j_plus_half;
}

}  // namespace

Spinor4 dirac_spinor(const ChannelIndex& ch, BasisSign sign, double theta, double phi) {
    if (sign == BasisSign::plus) {
        const Spinor2 psi = pauli_spinor(ch, upper_branch(ch), theta, phi);
        return {kI * psi[0], kI * psi[1], 0.0, 0.0};
    }
    const Spinor2 psi = pauli_spinor(ch, lower_branch(ch), theta, phi);
    return {0.0, 0.0, psi[0], psi[1]};
}

Spinor4 dirac_spinor(const ChannelIndex& ch, BasisSign sign, const Vec3& direction) {
    const Vec3 a = to_angles(direction);
    return dirac_spinor(ch, sign, a[1], a[2]);
}

int occupied_degree(const ChannelIndex& ch, BasisSign sign) {
    const PsiBranch b = sign == BasisSign::plus ? upper_branch(ch) : lower_branch(ch);
    return b == PsiBranch::j_plus_half ? (ch.two_j() + 1) / 2 : (ch.two_j() - 1) / 2;
}

double apply_spin_orbit(const ChannelIndex& ch, BasisSign sign) {
    // 4 (1 + J^2 - L^2 - S^2) = 4 + 2j (2j + 2) - 4 l (l + 1) - 3, all integers
    const int l = occupied_degree(ch, sign);
    const int four_times = 4 + ch.two_j() * (ch.two_j() + 2) - 4 * l * (l + 1) - 3;
    return 0.25 * four_times;
}

ChannelOperator parse_channel_operator(std::string_view tag) {
    if (tag == "spin_orbit") return ChannelOperator::spin_orbit;
    if (tag == "beta") return ChannelOperator::beta;
    if (tag == "i_alpha_xhat") return ChannelOperator::i_alpha_xhat;
    throw std::invalid_argument("unknown channel operator '" + std::string(tag) + "'");
}

Matrix2 apply_channel_matrix(ChannelOperator op, const ChannelIndex& ch) {
    switch (op) {
        case ChannelOperator::spin_orbit: {
            const double k = ch.kappa();
            return {{{-k, 0.0}, {0.0, k}}};
        }
        case ChannelOperator::beta: return {{{1.0, 0.0}, {0.0, -1.0}}};
        case ChannelOperator::i_alpha_xhat: return {{{0.0, 1.0}, {-1.0, 0.0}}};
    }
    throw std::invalid_argument("apply_channel_matrix: unknown operator");
}

AngularGrid::AngularGrid(int theta_order, int phi_points) : theta_order_(theta_order), phi_points_(phi_points) {
    if (theta_order < 1 || phi_points < 1)
        throw std::invalid_argument("AngularGrid: orders must be positive");
    const GaussLegendreRule& gl = gauss_legendre_cached(static_cast<std::size_t>(theta_order));
    const double dphi = 2.0 * std::numbers::pi / phi_points;
    nodes_.reserve(static_cast<std::size_t>(theta_order) * static_cast<std::size_t>(phi_points));
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double ct = gl.nodes[i];
        const double theta = std::acos(ct);
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int k = 0; k < phi_points; ++k) {
            const double phi = k * dphi;
            nodes_.push_back({theta, phi, gl.weights[i] * dphi, {st * std::cos(phi), st * std::sin(phi), ct}});
        }
    }
}

double AngularGrid::weight_sum() const noexcept {
    double s = 0.0;
    for (const auto& n : nodes_) s += n.weight;
    return s;
}

int AngularGrid::exactness_degree() const noexcept { return std::min(2 * theta_order_ - 1, phi_points_ - 1); }

double AngularGrid::exactness_error(int degree) const {
    double worst = 0.0;
    const double y00_integral = std::sqrt(4.0 * std::numbers::pi);
    for (int n = 0; n <= degree; ++n)
        for (int l = -n; l <= n; ++l) {
            const Complex q = integrate([&](const Node& node) { return sph_harm(n, l, node.theta, node.phi); });
            const double expected = (n == 0) ? y00_integral : 0.0;
            worst = std::max(worst, std::abs(q - expected));
        }
    return worst;
}

Complex inner(const Spinor4& a, const Spinor4& b) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) acc += a[i] * std::conj(b[i]);
    return acc;
}

ComplexMatrix dirac_basis_gram(const std::vector<ChannelIndex>& channels, const AngularGrid& grid) {
    const std::size_t n = 2 * channels.size();
    if (n == 0) throw std::invalid_argument("dirac_basis_gram: no channels");
    ComplexMatrix gram(n, n);
    std::vector<Spinor4> values(n);
    for (const auto& node : grid.nodes()) {
        for (std::size_t c = 0; c < channels.size(); ++c) {
            values[2 * c] = dirac_spinor(channels[c], BasisSign::plus, node.theta, node.phi);
            values[2 * c + 1] = dirac_spinor(channels[c], BasisSign::minus, node.theta, node.phi);
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) gram(a, b) += node.weight * inner(values[b], values[a]);
    }
    return gram;
}

ComplexMatrix pauli_basis_gram(int two_j_max, const AngularGrid& grid) {
    struct Entry {
        ChannelIndex channel;
        PsiBranch branch;
    };
    std::vector<Entry> basis;
    for (int two_j = 1; two_j <= two_j_max; two_j += 2)
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
            const ChannelIndex ch(two_j, two_m, (two_j + 1) / 2);
            basis.push_back({ch, PsiBranch::j_minus_half});
            basis.push_back({ch, PsiBranch::j_plus_half});
        }
    const std::size_t n = basis.size();
    if (n == 0) throw std::invalid_argument("pauli_basis_gram: no spinors");
    ComplexMatrix gram(n, n);
    std::vector<Spinor2> values(n);
    for (const auto& node : grid.nodes()) {
        for (std::size_t a = 0; a < n; ++a)
            values[a] = pauli_spinor(basis[a].channel, basis[a].branch, node.theta, node.phi);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                gram(a, b) += node.weight *
                              (values[b][0] * std::conj(values[a][0]) + values[b][1] * std::conj(values[a][1]));
    }
    return gram;
}

double identity_deviation(const ComplexMatrix& gram) {
    double worst = 0.0;
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j < gram.cols(); ++j)
            worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

Spinor4 spin_orbit_finite_difference(const SpinorFieldOnSphere& field, const Vec3& x, double step) {
    auto eval = [&](const Vec3& p) {
        const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        return field({p[0] / r, p[1] / r, p[2] / r});
    };
    std::array<Spinor4, 3> grad{};
    for (int c = 0; c < 3; ++c) {
        Vec3 xp = x;
        Vec3 xm = x;
        xp[c] += step;
        xm[c] -= step;
        const Spinor4 fp = eval(xp);
        const Spinor4 fm = eval(xm);
        for (int i = 0; i < 4; ++i) grad[c][i] = (fp[i] - fm[i]) / (2.0 * step);
    }
    // L_a = -i (x ^ grad)_a
    std::array<Spinor4, 3> L{};
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3;
        const int c = (a + 2) % 3;
        for (int i = 0; i < 4; ++i) L[a][i] = -kI * (x[b] * grad[c][i] - x[c] * grad[b][i]);
    }
    Spinor4 out = eval(x);
    for (int a = 0; a < 3; ++a) {
        const ComplexMatrix s = pauli(a + 1);
        for (int block = 0; block < 2; ++block) {
            const int o = 2 * block;
            out[o] += s(0, 0) * L[a][o] + s(0, 1) * L[a][o + 1];
            out[o + 1] += s(1, 0) * L[a][o] + s(1, 1) * L[a][o + 1];
        }
    }
    return out;
}

namespace {

double spin_orbit_rayleigh(const ChannelIndex& ch, BasisSign sign, double step, const AngularGrid& grid) {
    const SpinorFieldOnSphere field = [&](const Vec3& d) { return dirac_spinor(ch, sign, d); };
    Complex num = 0.0;
    double den = 0.0;
    for (const auto& node : grid.nodes()) {
        const Spinor4 phi = dirac_spinor(ch, sign, node.theta, node.phi);
        const Spinor4 op = spin_orbit_finite_difference(field, node.direction, step);
        num += node.weight * inner(op, phi);
        den += node.weight * inner(phi, phi).real();
    }
    return num.real() / den;
}

}  // namespace

FiniteDifferenceEstimate finite_difference_spin_orbit_oracle(const ChannelIndex& ch, BasisSign sign, double step,
                                                             const AngularGrid& grid) {
    if (!(step > 0.0)) throw std::invalid_argument("finite_difference_spin_orbit_oracle: step must be positive");
    const double coarse = spin_orbit_rayleigh(ch, sign, step, grid);
    const double fine = spin_orbit_rayleigh(ch, sign, 0.5 * step, grid);
    const double gap = std::abs(coarse - fine);
    return {fine, gap, step > 1e-2 || gap > 1e-4};
}

ComplexMatrix projected_channel_matrix(ChannelOperator op, const ChannelIndex& ch, const AngularGrid& grid,
                                       double fd_step) {
    const std::array<BasisSign, 2> signs{BasisSign::plus, BasisSign::minus};
    ComplexMatrix m(2, 2);
    const ComplexMatrix beta = dirac_beta();
    const std::array<ComplexMatrix, 3> alpha{dirac_alpha(1), dirac_alpha(2), dirac_alpha(3)};
    for (std::size_t b = 0; b < 2; ++b) {
        const SpinorFieldOnSphere field = [&](const Vec3& d) { return dirac_spinor(ch, signs[b], d); };
        for (const auto& node : grid.nodes()) {
            const Spinor4 phi_b = dirac_spinor(ch, signs[b], node.theta, node.phi);
            Spinor4 image{};
            switch (op) {
                case ChannelOperator::beta: {
                    const ComplexVector v = beta.apply(phi_b);
                    std::copy(v.begin(), v.end(), image.begin());
                    break;
                }
                case ChannelOperator::i_alpha_xhat: {
                    for (int k = 0; k < 3; ++k) {
                        const ComplexVector v = alpha[k].apply(phi_b);
                        for (int i = 0; i < 4; ++i) image[i] += kI * node.direction[k] * v[i];
                    }
                    break;
                }
                case ChannelOperator::spin_orbit:
                    image = spin_orbit_finite_difference(field, node.direction, fd_step);
                    break;
            }
            for (std::size_t a = 0; a < 2; ++a) {
                const Spinor4 phi_a = dirac_spinor(ch, signs[a], node.theta, node.phi);
                m(a, b) += node.weight * inner(image, phi_a);
            }
        }
    }
    return m;
}

}  // namespace hardy
