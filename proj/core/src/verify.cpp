#include "hardy/verify.hpp"

#include "hardy/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hardy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

bool ok(const IntegralResult& r) { return r.status == IntegralStatus::ok; }

RadialGridConfig grid_with_tau(const VerifyOptions& options, const WeightAnalysis& analysis) {
    RadialGridConfig grid = options.grid;
    if (options.split_at_tau && analysis.valid && analysis.tau.kind == ExtremumKind::interior)
        grid.split_points.push_back(analysis.tau.radius);
    return grid;
}

// Integrals and verdict for an already analysed pair.
HardyReport evaluate(const SpinorField& field, const WeightExpr& omega, const WeightExpr& eta,
                     const WeightAnalysis& analysis, const VerifyOptions& options, bool with_defect) {
    HardyReport rep;
    rep.omega = omega.str();
    rep.eta = eta.str();
    rep.mass = options.mass;
    rep.analysis = analysis;
    rep.tolerances = options.tolerances;
    rep.grid = grid_with_tau(options, analysis);
    std::ostringstream desc;
    for (const auto& c : field.channels()) {
        desc << "[kappa=" << c.channel.kappa() << " 2j=" << c.channel.two_j() << " 2m=" << c.channel.two_m()
             << " f+=" << c.f_plus->describe() << " f-=" << c.f_minus->describe() << "]";
    }
    rep.field = field.empty() ? "0" : desc.str();

    if (!analysis.valid) {
        rep.verdict = Verdict::withheld;
        rep.ratio_mid = rep.ratio_lhs = kNaN;
        rep.notes.emplace_back("weight pair is not admissible; integrals skipped");
        return rep;
    }

    const RadialGrid grid = build_grid(rep.grid);
    rep.lhs = lhs_integral(field, omega, eta, grid);
    rep.mid = mid_integral(field, omega, eta, grid);
    rep.rhs = rhs_integral(field, omega, grid, options.mass);
    const double c = analysis.tau.value - 0.5 * analysis.gamma.value;
    if (with_defect) rep.defect = defect_integral(field, omega, eta, grid, c, options.mass);

    if (!ok(rep.lhs) || !ok(rep.mid) || !ok(rep.rhs)) {
        rep.verdict = Verdict::divergent;
        rep.ratio_mid = rep.ratio_lhs = kNaN;
        return rep;
    }
    const double C = analysis.sharp_constant;
    if (rep.lhs.value == 0.0) {
        rep.ratio_mid = rep.ratio_lhs = kNaN;
        rep.verdict = Verdict::holds;
        rep.notes.emplace_back("zero field: both sides vanish");
        return rep;
    }
    if (C == 0.0) {
        rep.ratio_mid = rep.ratio_lhs = kInf;
        rep.verdict = Verdict::holds;
        rep.notes.emplace_back("sharp constant is 0");
        return rep;
    }
    rep.ratio_mid = rep.rhs.value / (C * rep.mid.value);
    rep.ratio_lhs = rep.rhs.value / (C * rep.lhs.value);
    const auto& tol = options.tolerances;
    if (rep.ratio_mid < 1.0 - tol.violation || rep.ratio_lhs < 1.0 - tol.violation)
        rep.verdict = Verdict::violated;
    else if (std::abs(rep.ratio_mid - 1.0) <= tol.equality &&
             std::abs(rep.mid.value - rep.lhs.value) <= tol.equality * rep.lhs.value)
        rep.verdict = Verdict::equality;
    else
        rep.verdict = Verdict::holds;
    return rep;
}

RadialProfilePair regular_slot(int kappa, ProfilePtr profile) {
    RadialProfilePair p;
    p.channel = ChannelIndex::from_kappa(kappa);
    if (kappa < 0)
        p.f_plus = std::move(profile);
    else
        p.f_minus = std::move(profile);
    return p;
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::equality: return "equality";
        case Verdict::violated: return "violated";
        case Verdict::divergent: return "divergent";
        case Verdict::withheld: return "withheld";
    }
    return "unknown";
}

Preset make_preset(std::string_view name, double a) {
    Preset p;
    p.name = std::string(name);
    if (name == "exp") {
        p.omega = p.eta = parse_weight("exp(r)");
        // e^r overflows near r = 709; the integrands are negligible long before.
        p.domain = {1e-6, 1e2};
        p.grid.r_tail = 200.0;
        p.grid.split_points = {1.0};
    } else if (name == "pol") {
        if (!(a > 1.0)) throw std::invalid_argument("pol preset needs a > 1");
        p.a = a;
        p.omega = p.eta = pow(WeightExpr::constant(1.0) + WeightExpr::variable(), a);
        p.grid.split_points = {1.0 / (a - 1.0)};
    } else if (name == "kato") {
        p.omega = p.eta = WeightExpr::variable();
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) + "' (exp, pol, kato)");
    }
    return p;
}

Preset custom_preset(std::string_view omega_text, std::string_view eta_text) {
    Preset p;
    p.name = "custom";
    p.omega = parse_weight(omega_text);
    p.eta = parse_weight(eta_text);
    return p;
}

VerifyOptions options_for(const Preset& preset) {
    VerifyOptions o;
    o.domain = preset.domain;
    o.grid = preset.grid;
    return o;
}

HardyReport verify_inequality(const SpinorField& field, const WeightExpr& omega, const WeightExpr& eta,
                              const VerifyOptions& options) {
    const WeightAnalysis analysis = analyze_pair(omega, eta, options.domain, options.search);
    return evaluate(field, omega, eta, analysis, options, true);
}

Certificate certify_minimizer(const Preset& preset, const std::array<Complex, 4>& coefficients,
                              const Tolerances& tolerances) {
    Certificate cert;
    VerifyOptions options = options_for(preset);
    options.tolerances = tolerances;
    const WeightAnalysis analysis = analyze_pair(preset.omega, preset.eta, options.domain, options.search);
    if (!analysis.valid) {
        cert.report = evaluate(SpinorField{}, preset.omega, preset.eta, analysis, options, false);
        cert.message = "weight pair is not admissible";
        return cert;
    }
    const double c = analysis.tau.value - 0.5 * analysis.gamma.value;
    MinimizerOptions mo;
    mo.omega = preset.omega;
    mo.domain = options.domain;
    mo.grid = grid_with_tau(options, analysis);
    const MinimizerResult up = solve_minimizer(preset.eta, c, ChannelIndex::from_kappa(-1), 0.0, mo);
    const MinimizerResult down = solve_minimizer(preset.eta, c, ChannelIndex::from_kappa(1), 0.0, mo);
    cert.attained = up.attained && down.attained;

    const SpinorField field = assemble_minimizer_field(up.candidate, down.candidate, coefficients);
    cert.report = evaluate(field, preset.omega, preset.eta, analysis, options, true);
    const auto& rep = cert.report;
    cert.rhs_finite = ok(rep.rhs) && std::isfinite(rep.rhs.value);
    if (cert.rhs_finite && ok(rep.lhs) && rep.lhs.value > 0.0) {
        cert.defect_relative = rep.defect.value / rep.rhs.value;
        cert.mid_lhs_relative = std::abs(rep.mid.value - rep.lhs.value) / rep.lhs.value;
        cert.rhs_mid_relative = std::abs(rep.rhs.value - analysis.sharp_constant * rep.mid.value) / rep.rhs.value;
    } else {
        cert.defect_relative = cert.mid_lhs_relative = cert.rhs_mid_relative = kNaN;
    }
    cert.message = up.message;
    return cert;
}

std::vector<double> default_scan_params(std::string_view family) {
    if (family == "minimizer-damped") {
        std::vector<double> n;
        for (int k = 1; k <= 16; ++k) n.push_back(k);
        return n;
    }
    if (family == "gaussian") return {0.5, 1.0, 2.0, 4.0};
    if (family == "lognormal") return {1, 2, 4, 8, 16, 32};
    if (family == "custom") return {};
    throw std::invalid_argument("unknown trial family '" + std::string(family) + "'");
}

ScanResult sharpness_scan(const WeightExpr& omega, const WeightExpr& eta, const ScanOptions& options) {
    const std::string& family = options.family;
    std::vector<double> params = options.params.empty() ? default_scan_params(family) : options.params;
    if (family == "custom") {
        params.clear();
        for (std::size_t i = 0; i < options.custom_profiles.size(); ++i) params.push_back(static_cast<double>(i));
    }
    if (params.empty()) throw std::invalid_argument("sharpness scan: empty trial family");

    const VerifyOptions& vo = options.verify;
    const WeightAnalysis analysis = analyze_pair(omega, eta, vo.domain, vo.search);
    if (!analysis.valid) throw std::invalid_argument("sharpness scan: weight pair is not admissible");
    const double c = analysis.tau.value - 0.5 * analysis.gamma.value;

    QPtr q;
    if (family == "minimizer-damped") q = make_q_function(eta, vo.domain);

    auto profile_for = [&](std::size_t i) -> ProfilePtr {
        const double p = params[i];
        if (family == "minimizer-damped") return power_exp_profile(1.0, 1.0, -(1.0 + std::exp2(-p)) * c, q);
        if (family == "gaussian") {
            if (!(p > 0.0)) throw std::invalid_argument("gaussian width must be positive");
            std::ostringstream os;
            os << "r*exp(0-r^2/" << 2.0 * p * p << ")";
            return expr_profile(parse_weight(os.str()));
        }
        if (family == "lognormal") return log_normal_profile(0.0, p);
        return expr_profile(parse_weight(options.custom_profiles[i]));
    };

    ScanResult out;
    out.family = family;
    out.trials.resize(params.size());
    parallel_for(params.size(), [&](std::size_t i) {
        Trial& t = out.trials[i];
        t.id = i;
        t.param = params[i];
        const ProfilePtr prof = profile_for(i);
        t.profile = prof->describe();
        const SpinorField field({regular_slot(options.kappa, prof)});
        const HardyReport rep = evaluate(field, omega, eta, analysis, vo, false);
        t.lhs = rep.lhs.value;
        t.mid = rep.mid.value;
        t.rhs = rep.rhs.value;
        t.ratio_mid = rep.ratio_mid;
        t.status = !ok(rep.lhs) ? rep.lhs.status : !ok(rep.mid) ? rep.mid.status : rep.rhs.status;
    });

    out.infimum = kInf;
    bool any = false;
    for (std::size_t i = 0; i < out.trials.size(); ++i) {
        const Trial& t = out.trials[i];
        if (t.status != IntegralStatus::ok || !(t.lhs > 0.0) || !std::isfinite(t.ratio_mid)) continue;
        any = true;
        if (t.ratio_mid < out.infimum) {
            out.infimum = t.ratio_mid;
            out.argmin = i;
        }
    }
    if (!any) throw std::invalid_argument("sharpness scan: every trial is degenerate or divergent");
    return out;
}

// ---------------------------------------------------------------------------
// 3D oracle

namespace {

using Mat4 = std::array<std::array<Complex, 4>, 4>;

Mat4 to_mat4(const ComplexMatrix& m) {
    Mat4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = m(r, c);
    return out;
}

std::pair<double, double> oracle_run(const FieldCallable& field, const WeightExpr& omega, const WeightExpr& eta,
                                     double half, std::size_t n, double mass) {
    const double h = 2.0 * half / static_cast<double>(n);
    const std::size_t m = n + 4;  // two ghost layers per side
    auto coord = [&](std::size_t g) { return -half + (static_cast<double>(g) - 1.5) * h; };

    const std::array<Mat4, 3> alpha{to_mat4(dirac_alpha(1)), to_mat4(dirac_alpha(2)), to_mat4(dirac_alpha(3))};
    const Mat4 beta = to_mat4(dirac_beta());

    std::array<std::vector<Spinor4>, 5> window;
    for (auto& w : window) w.resize(m * m);
    auto fill = [&](std::vector<Spinor4>& plane, std::size_t gz) {
        const double z = coord(gz);
        parallel_for(m, [&](std::size_t gx) {
            const double x = coord(gx);
            for (std::size_t gy = 0; gy < m; ++gy) plane[gx * m + gy] = field({x, coord(gy), z});
        });
    };
    for (std::size_t s = 0; s < 4; ++s) fill(window[s], s);

    std::vector<double> plane_lhs(n, 0.0);
    std::vector<double> plane_rhs(n, 0.0);
    const double c1 = 8.0 / (12.0 * h);
    const double c2 = -1.0 / (12.0 * h);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t gz = k + 2;
        fill(window[(gz + 2) % 5], gz + 2);
        const auto& zm2 = window[(gz + 3) % 5];
        const auto& zm1 = window[(gz + 4) % 5];
        const auto& z0 = window[gz % 5];
        const auto& zp1 = window[(gz + 1) % 5];
        const auto& zp2 = window[(gz + 2) % 5];
        const double z = coord(gz);
        std::vector<double> row_lhs(n, 0.0);
        std::vector<double> row_rhs(n, 0.0);
        parallel_for(n, [&](std::size_t i) {
            const std::size_t gx = i + 2;
            const double x = coord(gx);
            double acc_l = 0.0;
            double acc_r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t gy = j + 2;
                const std::size_t at = gx * m + gy;
                const Spinor4& psi = z0[at];
                std::array<Spinor4, 3> d{};
                for (int s = 0; s < 4; ++s) {
                    d[0][s] = c1 * (z0[at + m][s] - z0[at - m][s]) + c2 * (z0[at + 2 * m][s] - z0[at - 2 * m][s]);
                    d[1][s] = c1 * (z0[at + 1][s] - z0[at - 1][s]) + c2 * (z0[at + 2][s] - z0[at - 2][s]);
                    d[2][s] = c1 * (zp1[at][s] - zm1[at][s]) + c2 * (zp2[at][s] - zm2[at][s]);
                }
                double norm_d = 0.0;
                double norm_psi = 0.0;
                for (int r = 0; r < 4; ++r) {
                    Complex v{};
                    for (int c = 0; c < 4; ++c) {
                        const Complex grad = alpha[0][r][c] * d[0][c] + alpha[1][r][c] * d[1][c] + alpha[2][r][c] * d[2][c];
                        v += Complex(0.0, -1.0) * grad + mass * beta[r][c] * psi[c];
                    }
                    norm_d += std::norm(v);
                    norm_psi += std::norm(psi[r]);
                }
                const double y = coord(gy);
                const double rr = std::sqrt(x * x + y * y + z * z);
                const double w = omega(rr);
                const double e = eta(rr);
                acc_r += norm_d * w;
                acc_l += norm_psi * (w / e / e);
            }
            row_lhs[i] = acc_l;
            row_rhs[i] = acc_r;
        });
        for (std::size_t i = 0; i < n; ++i) {
            plane_lhs[k] += row_lhs[i];
            plane_rhs[k] += row_rhs[i];
        }
    }
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        lhs += plane_lhs[k];
        rhs += plane_rhs[k];
    }
    const double vol = h * h * h;
    return {lhs * vol, rhs * vol};
}

}  // namespace

Oracle3DResult oracle_3d(const FieldCallable& field, const WeightExpr& omega, const WeightExpr& eta,
                         const Grid3DConfig& config) {
    if (!(config.half_width > 0.0)) throw std::invalid_argument("oracle: box half-width must be positive");
    if (config.cells < 8 || config.cells % 2 != 0) throw std::invalid_argument("oracle: cells must be even and >= 8");
    Oracle3DResult out;
    std::tie(out.lhs, out.rhs) = oracle_run(field, omega, eta, config.half_width, config.cells, config.mass);
    std::tie(out.lhs_coarse, out.rhs_coarse) =
        oracle_run(field, omega, eta, config.half_width, config.cells / 2, config.mass);
    out.richardson_error = out.rhs == 0.0 ? 0.0 : std::abs(out.rhs - out.rhs_coarse) / (15.0 * std::abs(out.rhs));
    out.low_confidence = !(out.richardson_error <= 1e-3);
    return out;
}

SpinorField designated_test_field() {
    RadialProfilePair p;
    p.channel = ChannelIndex(1, 1, -1);
    p.f_plus = expr_profile(parse_weight("r*exp(0-r^2/2)"));
    p.f_minus = expr_profile(parse_weight("0.5*r^2*exp(0-r^2/2)"));
    return SpinorField({p});
}

// ---------------------------------------------------------------------------

ClassicalHardyResult classical_hardy_check(const WeightExpr& psi, const RadialGridConfig& grid_config) {
    const WeightExpr dpsi = differentiate(psi);
    const RadialGrid grid = build_grid(grid_config);
    const IntegralResult num = integrate(grid, [&](double r) {
        const double d = dpsi(r);
        return d * d * r * r;
    });
    const IntegralResult den = integrate(grid, [&](double r) {
        const double v = psi(r);
        return v * v;
    });
    ClassicalHardyResult out;
    out.numerator = num.value;
    out.denominator = den.value;
    out.status = num.status != IntegralStatus::ok ? num.status : den.status;
    out.ratio = out.status == IntegralStatus::ok && den.value > 0.0 ? num.value / den.value : kNaN;
    return out;
}

std::vector<std::string> classical_hardy_family() {
    return {"exp(0-r^2/2)", "exp(0-r)", "1/(1+r^2)", "exp(0-r)/r^0.48"};
}

RadialProfilePair random_field(int kappa, std::uint64_t seed, int two_m) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::array<double, 4> cp{};
    std::array<double, 4> cm{};
    for (double& v : cp) v = normal(rng);
    for (double& v : cm) v = normal(rng);
    RadialProfilePair p;
    p.channel = ChannelIndex::from_kappa(kappa, two_m);
    const int n = std::abs(kappa);
    p.f_plus = gauss_poly_profile(n, cp);
    p.f_minus = gauss_poly_profile(n, cm);
    return p;
}

}  // namespace hardy
