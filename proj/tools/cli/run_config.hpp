#pragma once

#include "hardy/verify.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardy::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;

    // weights: a preset or explicit texts, never both
    std::optional<std::string> preset;
    double a = 4.0;
    std::optional<std::string> omega;
    std::optional<std::string> eta;

    std::optional<double> mass;  ///< verify/scan default 0; the designated oracle field defaults to 0.5
    std::optional<double> domain_r_min;
    std::optional<double> domain_r_max;
    std::optional<double> grid_r_min;
    std::optional<double> grid_r_tail;
    std::optional<std::size_t> grid_panels;
    std::optional<std::size_t> grid_order;

    // field for verify / oracle: minimizer | random | designated | profile | zero
    std::optional<std::string> field;
    std::uint64_t seed = 7;
    std::vector<int> kappas{-1};
    std::string f_plus = "0";
    std::string f_minus = "0";
    std::vector<double> coefficients{1.0, 0.0, 0.0, 0.0};

    // scan
    std::optional<std::string> family;
    std::vector<double> params;
    std::vector<std::string> profiles;
    int scan_kappa = -1;

    Tolerances tolerances{};

    // identities
    int two_j_max = 7;
    int theta_order = 24;
    int phi_points = 48;
    double fd_step = 1e-4;
    std::size_t lemma_trials = 1000;

    // oracle
    std::optional<double> box_half_width;
    std::size_t cells = 160;

    std::optional<std::string> out;
    std::optional<std::string> csv;
};

/// Flat INI file. Sections: weights, physics, domain, grid, field, scan,
/// tolerances, identities, oracle, output. Unknown keys are errors.
void load_config_file(const std::string& path, RunConfig& config);

/// Throws ConfigError when the invariants fail (both preset and weights,
/// non-positive tolerances, bad kappa, ...).
void validate(const RunConfig& config);

/// Preset from the config, or custom weights; throws ConfigError when neither
/// is present. Grid and domain overrides are applied.
Preset resolve_weights(const RunConfig& config);

VerifyOptions verify_options(const RunConfig& config, const Preset& preset);

std::vector<double> parse_number_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace hardy::cli
