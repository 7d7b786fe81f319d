#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace hardy::cli;
    CLI::App app{"Weighted Hardy-type inequality for the Dirac operator: constants, minimizers, checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file;
    std::optional<std::string> preset, omega, eta, field, family, kappas, params, coefficients, out, csv;
    std::optional<double> a, mass, half_width;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> cells;
    std::optional<int> two_j_max, theta_order;

    auto weight_flags = [&](CLI::App* sub) {
        sub->add_option("--preset", preset, "exp | pol | kato");
        sub->add_option("--a", a, "polynomial exponent for --preset pol");
        sub->add_option("--omega", omega, "weight omega(r)");
        sub->add_option("--eta", eta, "weight eta(r)");
    };
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_file, "INI file; flags override it");
        sub->add_option("--out", out, "structured JSON report");
    };

    auto* weights = app.add_subcommand("weights", "gamma, tau and the sharp constant");
    auto* verify = app.add_subcommand("verify", "evaluate the inequality on a field");
    auto* scan = app.add_subcommand("scan", "sharpness scan over a trial family (CSV)");
    auto* identities = app.add_subcommand("identities", "angular basis and matrix identities");
    auto* oracle = app.add_subcommand("oracle", "radial functionals against a 3D finite-difference oracle");

    for (auto* sub : {weights, verify, scan, oracle}) weight_flags(sub);
    for (auto* sub : {weights, verify, scan, identities, oracle}) common(sub);
    for (auto* sub : {verify, scan, oracle}) sub->add_option("--mass", mass, "mass m >= 0");
    for (auto* sub : {verify, oracle}) {
        sub->add_option("--field", field, "minimizer | random | designated | profile | zero");
        sub->add_option("--coefficients", coefficients, "minimizer 4-vector, comma separated");
    }
    verify->add_option("--seed", seed, "seed for random fields");
    verify->add_option("--kappas", kappas, "channels for random fields, e.g. -2,-1,1,2");
    verify->add_option("--f-plus", cfg.f_plus, "profile field: f+ expression");
    verify->add_option("--f-minus", cfg.f_minus, "profile field: f- expression");
    scan->add_option("--family", family, "minimizer-damped | gaussian | lognormal | custom");
    scan->add_option("--params", params, "family parameters, comma separated");
    scan->add_option("--profile", cfg.profiles, "custom family profile (repeatable)");
    scan->add_option("--kappa", cfg.scan_kappa, "trial channel");
    scan->add_option("--csv", csv, "CSV output path (default: standard output)");
    identities->add_option("--two-j-max", two_j_max, "largest 2j for the Gram checks");
    identities->add_option("--theta-order", theta_order, "Gauss-Legendre order in cos(theta)");
    identities->add_option("--phi-points", cfg.phi_points, "trapezoid points in phi");
    oracle->add_option("--half-width", half_width, "box half-width");
    oracle->add_option("--cells", cells, "cells per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!config_file.empty()) load_config_file(config_file, cfg);
        if (preset) cfg.preset = preset;
        if (a) cfg.a = *a;
        if (omega) cfg.omega = omega;
        if (eta) cfg.eta = eta;
        if (mass) cfg.mass = mass;
        if (field) cfg.field = field;
        if (seed) cfg.seed = *seed;
        if (kappas) cfg.kappas = parse_int_list(*kappas);
        if (coefficients) cfg.coefficients = parse_number_list(*coefficients);
        if (family) cfg.family = family;
        if (params) cfg.params = parse_number_list(*params);
        if (two_j_max) cfg.two_j_max = *two_j_max;
        if (theta_order) cfg.theta_order = *theta_order;
        if (half_width) cfg.box_half_width = half_width;
        if (cells) cfg.cells = *cells;
        if (out) cfg.out = out;
        if (csv) cfg.csv = csv;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    return run(cfg, std::cout, std::cerr);
}
