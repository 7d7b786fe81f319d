#pragma once

#include "hardy/radial.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hardy {

/// Weight pair bundled with the domain and grid that suit it.
struct Preset {
    std::string name;
    WeightExpr omega;
    WeightExpr eta;
    Domain domain;
    RadialGridConfig grid;
    double a = 0.0;  ///< polynomial exponent, pol only
};

/// "exp" (omega = eta = e^r), "pol" (omega = eta = (1+r)^a, a > 1), "kato" (omega = eta = r).
/// Throws std::invalid_argument for unknown names or a <= 1.
Preset make_preset(std::string_view name, double a = 4.0);

/// Explicit weights with the default domain and grid.
Preset custom_preset(std::string_view omega_text, std::string_view eta_text);

struct Tolerances {
    double equality = 1e-6;    ///< relative, for the equality verdict
    double violation = 1e-10;  ///< relative slack before a violation is declared
};

enum class Verdict { holds, equality, violated, divergent, withheld };
std::string_view to_string(Verdict v);

struct VerifyOptions {
    Domain domain{};
    ExtremumSearch search{};
    RadialGridConfig grid{};
    bool split_at_tau = true;  ///< add r_tau to the grid split points
    double mass = 0.0;
    Tolerances tolerances{};
};

VerifyOptions options_for(const Preset& preset);

struct HardyReport {
    std::string omega;
    std::string eta;
    std::string field;
    double mass = 0.0;
    WeightAnalysis analysis;
    IntegralResult lhs;
    IntegralResult mid;
    IntegralResult rhs;
    IntegralResult defect;
    double ratio_mid = 0.0;  ///< I_rhs / (C I_mid)
    double ratio_lhs = 0.0;  ///< I_rhs / (C I_lhs)
    Verdict verdict = Verdict::withheld;
    Tolerances tolerances;
    RadialGridConfig grid;
    std::vector<std::string> notes;
};

/// Weights -> analysis -> channel functionals -> verdict. An invalid pair gives
/// verdict withheld and no integrals.
HardyReport verify_inequality(const SpinorField& field, const WeightExpr& omega, const WeightExpr& eta,
                              const VerifyOptions& options = {});

struct Certificate {
    HardyReport report;
    bool attained = false;
    bool rhs_finite = false;
    double defect_relative = 0.0;    ///< defect / I_rhs
    double mid_lhs_relative = 0.0;   ///< |I_mid - I_lhs| / I_lhs
    double rhs_mid_relative = 0.0;   ///< |I_rhs - C I_mid| / I_rhs
    std::string message;
};

/// Builds psi0 = v g(|x|) from the kappa = -1 and kappa = +1 closed forms and
/// runs the full report on it. For a pol preset with a <= 3 the integrals
/// diverge and the verdict says so.
Certificate certify_minimizer(const Preset& preset, const std::array<Complex, 4>& coefficients,
                              const Tolerances& tolerances = {});

struct Trial {
    std::size_t id = 0;
    double param = 0.0;
    std::string profile;
    double lhs = 0.0;
    double mid = 0.0;
    double rhs = 0.0;
    double ratio_mid = 0.0;
    IntegralStatus status = IntegralStatus::ok;
};

struct ScanResult {
    std::string family;
    std::vector<Trial> trials;
    double infimum = 0.0;
    std::size_t argmin = 0;  ///< index into trials
};

/// minimizer-damped: f+ = r exp(-(1+d) c Q), d = 2^-n (kappa = -1)
/// gaussian:         f+ = r exp(-r^2 / (2 s^2)), s = param
/// lognormal:        f+ = exp(-(log r)^2 / (2 n)), n = param; ratio 1 + 1/(2n) for omega = eta = r
/// custom:           f+ = expression text in channel kappa
struct ScanOptions {
    std::string family = "minimizer-damped";
    std::vector<double> params;  ///< empty: family default
    std::vector<std::string> custom_profiles;
    int kappa = -1;
    VerifyOptions verify{};
};

std::vector<double> default_scan_params(std::string_view family);

/// Throws std::invalid_argument for an unknown or empty family, an invalid
/// weight pair, or when every trial is degenerate.
ScanResult sharpness_scan(const WeightExpr& omega, const WeightExpr& eta, const ScanOptions& options);

struct Grid3DConfig {
    double half_width = 8.0;
    std::size_t cells = 160;  ///< per axis; even
    double mass = 0.0;
};

struct Oracle3DResult {
    double lhs = 0.0;  ///< integral of |psi|^2 omega / eta^2
    double rhs = 0.0;  ///< integral of |(-i alpha.grad + m beta) psi|^2 omega
    double lhs_coarse = 0.0;
    double rhs_coarse = 0.0;
    double richardson_error = 0.0;  ///< |rhs - rhs_coarse| / (15 rhs)
    bool low_confidence = false;
};

using FieldCallable = std::function<Spinor4(const Vec3&)>;

/// Cell-centred Cartesian grid, 4th-order central differences, midpoint
/// product quadrature. Runs at cells and cells / 2.
Oracle3DResult oracle_3d(const FieldCallable& field, const WeightExpr& omega, const WeightExpr& eta,
                         const Grid3DConfig& config);

/// kappa = -1, m_j = 1/2, f+ = r e^{-r^2/2}, f- = r^2 e^{-r^2/2} / 2.
SpinorField designated_test_field();

struct ClassicalHardyResult {
    double ratio = 0.0;  ///< integral |grad psi|^2 / integral |psi|^2 / |x|^2
    double numerator = 0.0;
    double denominator = 0.0;
    IntegralStatus status = IntegralStatus::ok;
};

/// Radial scalar profile psi(r) as a grammar expression.
ClassicalHardyResult classical_hardy_check(const WeightExpr& psi, const RadialGridConfig& grid = {});

/// Built-in calibration family; the last entry is the near-optimal r^-0.48 e^-r.
std::vector<std::string> classical_hardy_family();

/// f+- = r^|kappa| (c0 + c1 r + c2 r^2 + c3 r^3) e^{-r^2/2}, c_i standard normal
/// from mt19937_64(seed).
RadialProfilePair random_field(int kappa, std::uint64_t seed, int two_m = 1);

}  // namespace hardy
