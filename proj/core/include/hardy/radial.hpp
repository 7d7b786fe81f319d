#pragma once

#include "hardy/angular.hpp"
#include "hardy/weights.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hardy {

// ---------------------------------------------------------------------------
// Radial quadrature on (0, inf)

struct RadialGridConfig {
    double r_min = 1e-6;
    double r_tail = 1e3;
    std::size_t panels = 72;  ///< log-spaced core panels on [r_min, r_tail]
    std::size_t order = 20;   ///< Gauss-Legendre points per panel
    std::vector<double> split_points;  ///< extra panel boundaries, e.g. r_tau
    bool extend_ends = true;  ///< integrate beyond [r_min, r_tail] until converged
    std::size_t max_extension_panels = 400;
};

class RadialGrid {
public:
    struct Panel {
        double a;
        double b;
    };

    const RadialGridConfig& config() const noexcept { return config_; }
    const std::vector<Panel>& panels() const noexcept { return panels_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

private:
    friend RadialGrid build_grid(const RadialGridConfig& config);
    RadialGridConfig config_;
    std::vector<Panel> panels_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Throws std::invalid_argument on inconsistent configuration.
RadialGrid build_grid(const RadialGridConfig& config);

enum class IntegralStatus { ok, divergent, non_finite };
std::string_view to_string(IntegralStatus status);

struct IntegralResult {
    double value = 0.0;
    IntegralStatus status = IntegralStatus::ok;
    double r_lo = 0.0;  ///< innermost radius reached
    double r_hi = 0.0;  ///< outermost radius reached
    std::size_t extension_panels = 0;
    std::vector<double> per_channel;  ///< filled by the field functionals
};

/// Integrates a non-negative integrand over (0, inf): the core grid plus
/// geometric end extensions ([R, 1.5R] outward, [r/2, r] inward). An extension
/// stops once a panel adds < 1e-16 of the total, or when the contributions are
/// geometric enough to sum the remainder in closed form. Contributions growing
/// over 5 consecutive panels, or the panel cap, mean divergence.
IntegralResult integrate(const RadialGrid& grid, const std::function<double(double)>& f);

/// |integral of r^2 e^-r - 2|
double self_test(const RadialGrid& grid);

// ---------------------------------------------------------------------------
// Radial profiles

/// Real radial amplitude with its derivative. shifted_derivative(r, k) is
/// (d/dr + k/r) f, which closed-form profiles evaluate without cancellation.
class RadialProfile {
public:
    virtual ~RadialProfile() = default;
    virtual double value(double r) const = 0;
    virtual double shifted_derivative(double r, double k) const = 0;
    virtual std::string describe() const = 0;
};

using ProfilePtr = std::shared_ptr<const RadialProfile>;

ProfilePtr zero_profile();

/// Profile given by a weight-grammar expression; derivative symbolic.
ProfilePtr expr_profile(const WeightExpr& f);

/// Q with Q' = 1/eta, either in closed form or tabulated.
class QFunction {
public:
    virtual ~QFunction() = default;
    virtual double value(double r) const = 0;
    virtual double derivative(double r) const = 0;  ///< 1/eta
    virtual std::string describe() const = 0;
};

using QPtr = std::shared_ptr<const QFunction>;

/// Closed form for eta = exp(r) (Q = -e^-r), eta = (1+r)^a (Q = (1+r)^(1-a)/(1-a),
/// a != 1) and eta = r (Q = log r). Otherwise a cumulative-quadrature table on
/// [domain.r_min, domain.r_max] anchored at Q(1) = 0, with cubic Hermite
/// interpolation and direct quadrature outside the table.
QPtr make_q_function(const WeightExpr& eta, Domain domain = {});

/// C r^p exp(s Q(r)).
ProfilePtr power_exp_profile(double scale, double p, double s, QPtr q);

/// r^n (c0 + c1 r + c2 r^2 + c3 r^3) exp(-r^2/2)
ProfilePtr gauss_poly_profile(int n, std::array<double, 4> coefficients);

/// r^q exp(-(log r)^2 / (2 width))
ProfilePtr log_normal_profile(double q, double width);

/// Samples on a uniform grid in log r; 4-point Lagrange interpolation for the
/// value and a centred 4th-order stencil (one-sided at the ends) for d/d(log r).
/// Zero outside the sampled range.
ProfilePtr sampled_profile(double log_r_first, double log_r_step, std::vector<double> samples);

struct RadialProfilePair {
    ChannelIndex channel = ChannelIndex::from_kappa(-1);
    ProfilePtr f_plus = zero_profile();
    ProfilePtr f_minus = zero_profile();
    Complex a_plus{1.0, 0.0};
    Complex a_minus{1.0, 0.0};
};

/// Channels pairwise distinct (throws std::invalid_argument on duplicates).
class SpinorField {
public:
    SpinorField() = default;
    explicit SpinorField(std::vector<RadialProfilePair> channels);

    void add(RadialProfilePair pair);
    const std::vector<RadialProfilePair>& channels() const noexcept { return channels_; }
    bool empty() const noexcept { return channels_.empty(); }

    /// Same profiles with every amplitude multiplied by s.
    SpinorField scaled(Complex s) const;

private:
    std::vector<RadialProfilePair> channels_;
};

/// psi(x) = sum over channels of (a+ f+(r) Phi+ + a- f-(r) Phi-) / r.
Spinor4 evaluate_field(const SpinorField& field, const Vec3& x);

// ---------------------------------------------------------------------------
// Functionals of the main inequality, channel-wise

/// sum of integral (|f+|^2 + |f-|^2) omega / eta^2
IntegralResult lhs_integral(const SpinorField& field, const WeightExpr& omega, const WeightExpr& eta,
                            const RadialGrid& grid);

/// sum of integral |(1+2S.L) f|^2 omega / eta^2, the spin-orbit action taken
/// from the angular module (kappa^2 per channel).
IntegralResult mid_integral(const SpinorField& field, const WeightExpr& omega, const WeightExpr& eta,
                            const RadialGrid& grid);

/// sum of integral (|(d + k/r) f+ - m f-|^2 + |(d - k/r) f- - m f+|^2) omega
IntegralResult rhs_integral(const SpinorField& field, const WeightExpr& omega, const RadialGrid& grid,
                            double mass);

/// Completed square with c in place of tau - gamma/2:
/// sum of integral |M_c (f+, f-)|^2 omega, rows
/// (d + k (1/r - c/eta)) f+ - m f-  and  (d - k (1/r - c/eta)) f- - m f+.
IntegralResult defect_integral(const SpinorField& field, const WeightExpr& omega, const WeightExpr& eta,
                               const RadialGrid& grid, double c, double mass);

// ---------------------------------------------------------------------------
// Minimizers

struct MinimizerOptions {
    std::optional<WeightExpr> omega;  ///< defaults to eta
    Domain domain{};                  ///< range of a tabulated Q
    RadialGridConfig grid{};          ///< used for the normalizability test
};

struct MinimizerResult {
    /// Regular solution of M_c f = 0 with unit constant, whether or not it is admissible.
    RadialProfilePair candidate;
    /// candidate when attained, otherwise an empty pair.
    RadialProfilePair pair;
    bool attained = false;
    std::string q_form;
    std::string message;
};

/// Massless closed form f+ = r^-k exp(k c Q), f- = r^k exp(-k c Q); for k = -1 the
/// f+ component is kept, for k = +1 the f- component. attained means both the
/// weighted L^2 norm and the right-hand side are finite. Throws
/// std::invalid_argument for |kappa| != 1; mass > 0 goes to the numeric path.
MinimizerResult solve_minimizer(const WeightExpr& eta, double c, const ChannelIndex& channel, double mass = 0.0,
                                const MinimizerOptions& options = {});

struct NumericMinimizer {
    RadialProfilePair pair;  ///< regular solution, sampled
    bool integrable = false;
    double r_reached = 0.0;
    double tail_fraction = 0.0;  ///< share of the weighted norm from the last [R/1.5, R]
    std::string message;
};

/// Integrates the coupled first-order system M_c f = 0 outward from r_min along
/// the regular solution (adaptive Dormand-Prince). Integrability is judged by
/// the tail fraction of the omega/eta^2 norm (< 1e-8).
NumericMinimizer solve_minimizer_numeric(const WeightExpr& eta, double c, const ChannelIndex& channel,
                                         double mass, const MinimizerOptions& options = {});

/// psi0 = v * g(|x|) with g = f_regular(r) / r, written in the four channels
/// (m = +-1/2, kappa = -1) upper and (m = +-1/2, kappa = +1) lower. Every profile
/// must come from a kappa = +-1 channel. Zero coefficients give the empty field.
SpinorField assemble_minimizer_field(const RadialProfilePair& kappa_minus, const RadialProfilePair& kappa_plus,
                                     const std::array<Complex, 4>& coefficients);

}  // namespace hardy
