#include "cli/commands.hpp"

#include "hardy/algebra.hpp"
#include "hardy/angular.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace hardy::cli {

namespace {

using nlohmann::json;

json to_json(const Extremum& e) {
    return {{"value", std::isfinite(e.value) ? json(e.value) : json(nullptr)},
            {"radius", e.radius},
            {"kind", std::string(to_string(e.kind))}};
}

json to_json(const WeightAnalysis& a) {
    return {{"omega", a.omega},
            {"eta", a.eta},
            {"domain", {a.domain.r_min, a.domain.r_max}},
            {"gamma", to_json(a.gamma)},
            {"tau", to_json(a.tau)},
            {"admissible", a.admissible},
            {"valid", a.valid},
            {"sharp_constant", a.sharp_constant},
            {"messages", a.messages}};
}

json number(double v) { return std::isfinite(v) ? json(v) : json(std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf")); }

json to_json(const IntegralResult& r) {
    json per = json::array();
    for (double v : r.per_channel) per.push_back(number(v));
    return {{"value", number(r.value)},
            {"status", std::string(to_string(r.status))},
            {"r_lo", r.r_lo},
            {"r_hi", r.r_hi},
            {"extension_panels", r.extension_panels},
            {"per_channel", per}};
}

json to_json(const RadialGridConfig& g) {
    return {{"r_min", g.r_min},   {"r_tail", g.r_tail},           {"panels", g.panels},
            {"order", g.order},   {"split_points", g.split_points}, {"extend_ends", g.extend_ends}};
}

json to_json(const HardyReport& r) {
    return {{"weights", {{"omega", r.omega}, {"eta", r.eta}}},
            {"field", r.field},
            {"mass", r.mass},
            {"constants", to_json(r.analysis)},
            {"integrals", {{"lhs", to_json(r.lhs)}, {"mid", to_json(r.mid)}, {"rhs", to_json(r.rhs)}}},
            {"ratios", {{"ratio_mid", number(r.ratio_mid)}, {"ratio_lhs", number(r.ratio_lhs)}}},
            {"defect", to_json(r.defect)},
            {"verdict", std::string(to_string(r.verdict))},
            {"tolerances", {{"equality", r.tolerances.equality}, {"violation", r.tolerances.violation}}},
            {"grid", to_json(r.grid)},
            {"notes", r.notes}};
}

void write_json(const RunConfig& config, const json& j) {
    if (!config.out) return;
    std::ofstream f(*config.out);
    if (!f) throw ConfigError("cannot write " + *config.out);
    f << j.dump(2) << '\n';
}

int analysis_exit(const WeightAnalysis& a) {
    if (a.valid) return exit_ok;
    if (!a.admissible) return exit_config;
    if (a.gamma.kind == ExtremumKind::boundary || a.tau.kind == ExtremumKind::boundary) return exit_divergent;
    return exit_config;
}

std::string fmt_extremum(const Extremum& e) {
    std::ostringstream os;
    os << std::setprecision(16);
    if (e.kind == ExtremumKind::boundary)
        os << "boundary/divergent (near r = " << e.radius << ")";
    else
        os << e.value << "  (" << to_string(e.kind) << ", r = " << e.radius << ")";
    return os.str();
}

void row(std::ostream& out, const std::string& key, const std::string& value) {
    out << std::left << std::setw(18) << key << value << '\n';
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(16) << v;
    return os.str();
}

std::array<Complex, 4> coefficients(const RunConfig& c) {
    return {c.coefficients[0], c.coefficients[1], c.coefficients[2], c.coefficients[3]};
}

SpinorField field_from_config(const RunConfig& config, const std::string& kind) {
    if (kind == "zero") return {};
    if (kind == "designated") return designated_test_field();
    if (kind == "random") {
        SpinorField f;
        std::uint64_t seed = config.seed;
        for (int k : config.kappas) {
            try {
                f.add(random_field(k, seed++));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("random field: ") + e.what());
            }
        }
        return f;
    }
    if (kind == "profile") {
        if (config.kappas.size() != 1) throw ConfigError("profile field needs exactly one kappa");
        RadialProfilePair p;
        try {
            p.channel = ChannelIndex::from_kappa(config.kappas.front());
            p.f_plus = expr_profile(parse_weight(config.f_plus));
            p.f_minus = expr_profile(parse_weight(config.f_minus));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("profile field: ") + e.what());
        }
        return SpinorField({p});
    }
    throw ConfigError("unknown field kind '" + kind + "' (minimizer, random, designated, profile, zero)");
}

int verdict_exit(Verdict v, const WeightAnalysis& a) {
    switch (v) {
        case Verdict::holds:
        case Verdict::equality: return exit_ok;
        case Verdict::violated: return exit_violation;
        case Verdict::divergent: return exit_divergent;
        case Verdict::withheld: return analysis_exit(a) == exit_ok ? exit_config : analysis_exit(a);
    }
    return exit_failure;
}

void print_report(std::ostream& out, const HardyReport& r) {
    row(out, "omega", r.omega);
    row(out, "eta", r.eta);
    row(out, "mass", num(r.mass));
    row(out, "gamma", fmt_extremum(r.analysis.gamma));
    row(out, "tau", fmt_extremum(r.analysis.tau));
    row(out, "sharp constant", num(r.analysis.sharp_constant));
    row(out, "I_lhs", num(r.lhs.value) + "  [" + std::string(to_string(r.lhs.status)) + "]");
    row(out, "I_mid", num(r.mid.value) + "  [" + std::string(to_string(r.mid.status)) + "]");
    row(out, "I_rhs", num(r.rhs.value) + "  [" + std::string(to_string(r.rhs.status)) + "]");
    row(out, "ratio_mid", num(r.ratio_mid));
    row(out, "ratio_lhs", num(r.ratio_lhs));
    row(out, "defect", num(r.defect.value));
    row(out, "verdict", std::string(to_string(r.verdict)));
    for (const auto& n : r.notes) row(out, "note", n);
}

}  // namespace

int cmd_weights(const RunConfig& config, std::ostream& out) {
    const Preset p = resolve_weights(config);
    const WeightAnalysis a = analyze_pair(p.omega, p.eta, p.domain);
    row(out, "omega", a.omega);
    row(out, "eta", a.eta);
    row(out, "domain", "[" + num(a.domain.r_min) + ", " + num(a.domain.r_max) + "]");
    row(out, "gamma", a.admissible ? fmt_extremum(a.gamma) : "-");
    row(out, "tau", a.admissible ? fmt_extremum(a.tau) : "-");
    row(out, "valid", a.valid ? "yes" : "no");
    row(out, "sharp constant", a.valid ? num(a.sharp_constant) : "-");
    for (const auto& m : a.messages) row(out, "note", m);
    write_json(config, {{"command", "weights"}, {"analysis", to_json(a)}});
    return analysis_exit(a);
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
    const Preset p = resolve_weights(config);
    const std::string kind = config.field.value_or("random");
    if (kind == "minimizer") {
        if (config.mass.value_or(0.0) != 0.0) throw ConfigError("closed-form minimizers are massless; drop --mass");
        const Certificate cert = certify_minimizer(p, coefficients(config), config.tolerances);
        print_report(out, cert.report);
        row(out, "attained", cert.attained ? "yes" : "no");
        row(out, "defect / I_rhs", num(cert.defect_relative));
        row(out, "|mid-lhs|/lhs", num(cert.mid_lhs_relative));
        row(out, "|rhs-C mid|/rhs", num(cert.rhs_mid_relative));
        json j = to_json(cert.report);
        j["command"] = "verify";
        j["certificate"] = {{"attained", cert.attained},
                            {"rhs_finite", cert.rhs_finite},
                            {"defect_relative", number(cert.defect_relative)},
                            {"mid_lhs_relative", number(cert.mid_lhs_relative)},
                            {"rhs_mid_relative", number(cert.rhs_mid_relative)},
                            {"message", cert.message}};
        write_json(config, j);
        return verdict_exit(cert.report.verdict, cert.report.analysis);
    }
    const SpinorField field = field_from_config(config, kind);
    const HardyReport rep = verify_inequality(field, p.omega, p.eta, verify_options(config, p));
    print_report(out, rep);
    json j = to_json(rep);
    j["command"] = "verify";
    write_json(config, j);
    return verdict_exit(rep.verdict, rep.analysis);
}

int cmd_scan(const RunConfig& config, std::ostream& out) {
    const Preset p = resolve_weights(config);
    ScanOptions so;
    so.family = config.family.value_or(p.name == "kato" ? "lognormal" : "minimizer-damped");
    so.params = config.params;
    so.custom_profiles = config.profiles;
    so.kappa = config.scan_kappa;
    so.verify = verify_options(config, p);
    ScanResult res;
    try {
        res = sharpness_scan(p.omega, p.eta, so);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "trial_id,param,I_lhs,I_mid,I_rhs,ratio_mid,status\n";
    bool violated = false;
    for (const auto& t : res.trials) {
        csv << t.id << ',' << t.param << ',' << t.lhs << ',' << t.mid << ',' << t.rhs << ',' << t.ratio_mid << ','
            << to_string(t.status) << '\n';
        if (t.status == IntegralStatus::ok && t.ratio_mid < 1.0 - config.tolerances.violation) violated = true;
    }
    csv << "infimum," << res.trials[res.argmin].param << ",,,," << res.infimum << ",\n";
    if (config.csv) {
        std::ofstream f(*config.csv);
        if (!f) throw ConfigError("cannot write " + *config.csv);
        f << csv.str();
        row(out, "family", res.family);
        row(out, "trials", std::to_string(res.trials.size()));
        row(out, "infimum ratio", num(res.infimum));
        row(out, "attained at", num(res.trials[res.argmin].param));
    } else {
        out << csv.str();
    }
    json trials = json::array();
    for (const auto& t : res.trials)
        trials.push_back({{"id", t.id},
                          {"param", t.param},
                          {"profile", t.profile},
                          {"I_lhs", number(t.lhs)},
                          {"I_mid", number(t.mid)},
                          {"I_rhs", number(t.rhs)},
                          {"ratio_mid", number(t.ratio_mid)},
                          {"status", std::string(to_string(t.status))}});
    write_json(config, {{"command", "scan"},
                        {"weights", {{"omega", p.omega.str()}, {"eta", p.eta.str()}}},
                        {"family", res.family},
                        {"trials", trials},
                        {"infimum", res.infimum},
                        {"argmin", res.argmin}});
    return violated ? exit_violation : exit_ok;
}

std::vector<IdentityCheck> identity_suite(const RunConfig& config) {
    std::vector<IdentityCheck> checks;
    auto add = [&](std::string name, double value, double tol) {
        checks.push_back({std::move(name), value, tol, value <= tol});
    };

    // Clifford relations, exact
    double clifford = 0.0;
    const ComplexMatrix beta = dirac_beta();
    const ComplexMatrix id4 = ComplexMatrix::identity(4);
    for (int j = 1; j <= 3; ++j) {
        const ComplexMatrix aj = dirac_alpha(j);
        clifford = std::max(clifford, (aj * beta + beta * aj).max_abs());
        const ComplexMatrix sj = pauli(j);
        clifford = std::max(clifford, (sj * sj - ComplexMatrix::identity(2)).max_abs());
        for (int k = 1; k <= 3; ++k) {
            const ComplexMatrix ak = dirac_alpha(k);
            ComplexMatrix target = ComplexMatrix::zero(4, 4);
            if (j == k) target = Complex(2.0) * id4;
            clifford = std::max(clifford, (aj * ak + ak * aj - target).max_abs());
        }
    }
    clifford = std::max(clifford, (beta * beta - id4).max_abs());
    add("clifford relations", clifford, 0.0);

    const AngularGrid grid(config.theta_order, config.phi_points);
    const int needed = config.two_j_max + 2;  // 2 (j_max + 1/2) + 1
    add("angular weight sum - 4 pi", std::abs(grid.weight_sum() - 4.0 * std::numbers::pi), 1e-12);
    add("angular exactness degree >= " + std::to_string(needed),
        grid.exactness_degree() >= needed ? 0.0 : static_cast<double>(needed - grid.exactness_degree()), 0.0);
    add("angular exactness error", grid.exactness_error(needed), 1e-12);

    const auto channels = channels_up_to(config.two_j_max);
    add("dirac gram deviation", identity_deviation(dirac_basis_gram(channels, grid)), 1e-10);
    add("pauli gram deviation", identity_deviation(pauli_basis_gram(config.two_j_max, grid)), 1e-10);

    double algebraic = 0.0;
    for (const auto& ch : channels) {
        algebraic = std::max(algebraic, std::abs(apply_spin_orbit(ch, BasisSign::plus) + ch.kappa()));
        algebraic = std::max(algebraic, std::abs(apply_spin_orbit(ch, BasisSign::minus) - ch.kappa()));
    }
    add("spin-orbit algebraic vs -+kappa", algebraic, 0.0);

    double fd = 0.0;
    for (const auto& ch : channels_up_to(3)) {
        for (BasisSign s : {BasisSign::plus, BasisSign::minus}) {
            const auto est = finite_difference_spin_orbit_oracle(ch, s, config.fd_step, grid);
            fd = std::max(fd, std::abs(est.value - apply_spin_orbit(ch, s)));
        }
    }
    add("spin-orbit finite difference (j <= 3/2)", fd, 1e-3);

    double matrices = 0.0;
    double projected = 0.0;
    for (const auto& ch : channels_up_to(3)) {
        const double k = ch.kappa();
        const Matrix2 so = apply_channel_matrix(ChannelOperator::spin_orbit, ch);
        const Matrix2 b = apply_channel_matrix(ChannelOperator::beta, ch);
        const Matrix2 ia = apply_channel_matrix(ChannelOperator::i_alpha_xhat, ch);
        const Matrix2 so_ref{{{-k, 0.0}, {0.0, k}}};
        const Matrix2 b_ref{{{1.0, 0.0}, {0.0, -1.0}}};
        const Matrix2 ia_ref{{{0.0, 1.0}, {-1.0, 0.0}}};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                matrices = std::max({matrices, std::abs(so[r][c] - so_ref[r][c]), std::abs(b[r][c] - b_ref[r][c]),
                                     std::abs(ia[r][c] - ia_ref[r][c])});
            }
        for (ChannelOperator op : {ChannelOperator::beta, ChannelOperator::i_alpha_xhat}) {
            const ComplexMatrix m = projected_channel_matrix(op, ch, grid);
            const Matrix2 ref = apply_channel_matrix(op, ch);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) projected = std::max(projected, std::abs(m(r, c) - ref[r][c]));
        }
    }
    add("channel matrices (exact)", matrices, 0.0);
    add("channel matrices vs quadrature", projected, 1e-10);

    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> normal;
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    double worst = 0.0;
    for (std::size_t t = 0; t < config.lemma_trials; ++t) {
        const std::size_t n = dim(rng);
        ComplexMatrix g(n, n);
        ComplexMatrix h(n, n);
        ComplexVector u(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = {normal(rng), normal(rng)};
            for (std::size_t j = 0; j < n; ++j) {
                g(i, j) = {normal(rng), normal(rng)};
                h(i, j) = {normal(rng), normal(rng)};
            }
        }
        const ComplexMatrix S = Complex(0.5) * (g + g.adjoint());
        const ComplexMatrix A = Complex(0.5) * (h - h.adjoint());
        auto frob = [](const ComplexMatrix& m) {
            double s = 0.0;
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
            return std::sqrt(s);
        };
        const double scale = frob(S) * frob(A) * std::pow(norm(u), 2);
        worst = std::max(worst, commutator_identity_check(S, A, u) / scale);
    }
    add("commutator lemma (" + std::to_string(config.lemma_trials) + " random)", worst, 1e-12);
    return checks;
}

int cmd_identities(const RunConfig& config, std::ostream& out) {
    const auto checks = identity_suite(config);
    bool all = true;
    json rows = json::array();
    out << std::left << std::setw(44) << "identity" << std::setw(14) << "value" << std::setw(10) << "tol"
        << "result\n";
    for (const auto& c : checks) {
        std::ostringstream v;
        v << std::setprecision(3) << std::scientific << c.value;
        std::ostringstream t;
        t << std::setprecision(0) << std::scientific << c.tolerance;
        out << std::left << std::setw(44) << c.name << std::setw(14) << v.str() << std::setw(10) << t.str()
            << (c.pass ? "pass" : "FAIL") << '\n';
        all = all && c.pass;
        rows.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    if (!all) {
        out << "failing:";
        for (const auto& c : checks)
            if (!c.pass) out << " [" << c.name << "]";
        out << '\n';
    }
    write_json(config, {{"command", "identities"}, {"checks", rows}, {"all_pass", all}});
    return all ? exit_ok : exit_failure;
}

int cmd_oracle(const RunConfig& config, std::ostream& out) {
    const std::string kind = config.field.value_or("designated");
    Preset p;
    SpinorField field;
    double mass = config.mass.value_or(0.0);
    double half = config.box_half_width.value_or(8.0);
    if (kind == "minimizer") {
        RunConfig c = config;
        if (!c.preset && !c.omega && !c.eta) c.preset = "exp";
        p = resolve_weights(c);
        const WeightAnalysis a = analyze_pair(p.omega, p.eta, p.domain);
        if (!a.valid) throw ConfigError("weight pair is not admissible");
        MinimizerOptions mo;
        mo.omega = p.omega;
        mo.domain = p.domain;
        mo.grid = p.grid;
        const double cc = a.tau.value - 0.5 * a.gamma.value;
        const auto up = solve_minimizer(p.eta, cc, ChannelIndex::from_kappa(-1), 0.0, mo);
        const auto down = solve_minimizer(p.eta, cc, ChannelIndex::from_kappa(1), 0.0, mo);
        if (!up.attained || !down.attained) throw ConfigError("no minimizer for these weights: " + up.message);
        field = assemble_minimizer_field(up.candidate, down.candidate, coefficients(config));
        mass = 0.0;
        half = config.box_half_width.value_or(12.0);
    } else {
        if (config.preset || config.omega || config.eta) {
            p = resolve_weights(config);
        } else {
            p = custom_preset("1+r^2", "1+r^2");
        }
        if (kind == "designated") mass = config.mass.value_or(0.5);
        field = field_from_config(config, kind);
    }
    VerifyOptions vo = options_for(p);
    vo.mass = mass;
    const HardyReport rep = verify_inequality(field, p.omega, p.eta, vo);
    const Oracle3DResult o =
        oracle_3d([&](const Vec3& x) { return evaluate_field(field, x); }, p.omega, p.eta, {half, config.cells, mass});

    auto rel = [](double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / std::abs(b); };
    out << std::left << std::setw(10) << "quantity" << std::setw(24) << "radial" << std::setw(24) << "3D"
        << std::setw(24) << "3D coarse" << "rel. discrepancy\n";
    out << std::setprecision(12);
    out << std::setw(10) << "I_lhs" << std::setw(24) << rep.lhs.value << std::setw(24) << o.lhs << std::setw(24)
        << o.lhs_coarse << rel(o.lhs, rep.lhs.value) << '\n';
    out << std::setw(10) << "I_rhs" << std::setw(24) << rep.rhs.value << std::setw(24) << o.rhs << std::setw(24)
        << o.rhs_coarse << rel(o.rhs, rep.rhs.value) << '\n';
    const double ratio3d = o.lhs > 0.0 ? o.rhs / o.lhs : 0.0;
    out << "3D ratio I_rhs/I_lhs = " << ratio3d << "  (sharp constant " << rep.analysis.sharp_constant << ")\n";
    out << "Richardson error estimate " << o.richardson_error << (o.low_confidence ? "  LOW CONFIDENCE" : "") << '\n';
    if (o.low_confidence) out << "warning: resolution insufficient for the 1e-3 target\n";
    write_json(config, {{"command", "oracle"},
                        {"field", kind},
                        {"weights", {{"omega", p.omega.str()}, {"eta", p.eta.str()}}},
                        {"mass", mass},
                        {"box", {{"half_width", half}, {"cells", config.cells}}},
                        {"radial", {{"lhs", number(rep.lhs.value)}, {"rhs", number(rep.rhs.value)}}},
                        {"oracle", {{"lhs", o.lhs}, {"rhs", o.rhs}, {"lhs_coarse", o.lhs_coarse},
                                    {"rhs_coarse", o.rhs_coarse}}},
                        {"ratio_3d", ratio3d},
                        {"richardson_error", o.richardson_error},
                        {"low_confidence", o.low_confidence}});
    return exit_ok;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        if (config.command == "weights") return cmd_weights(config, out);
        if (config.command == "verify") return cmd_verify(config, out);
        if (config.command == "scan") return cmd_scan(config, out);
        if (config.command == "identities") return cmd_identities(config, out);
        if (config.command == "oracle") return cmd_oracle(config, out);
        throw ConfigError("unknown command '" + config.command + "'");
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const WeightParseError& e) {
        err << "error: weight syntax: " << e.what() << '\n';
        return exit_config;
    }
}

}  // namespace hardy::cli
