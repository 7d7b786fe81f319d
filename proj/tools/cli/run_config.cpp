#include "cli/run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <functional>
#include <map>
#include <sstream>

namespace hardy::cli {

namespace {

double to_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
    }
}

long long to_integer(const std::string& key, const std::string& text) {
    long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ConfigError("config: '" + key + "' expects an integer, got '" + text + "'");
    return v;
}

std::size_t to_size(const std::string& key, const std::string& text) {
    const long long v = to_integer(key, text);
    if (v < 0) throw ConfigError("config: '" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"weights.preset", [](RunConfig& c, const std::string& v) { c.preset = v; }},
        {"weights.a", [](RunConfig& c, const std::string& v) { c.a = to_double("weights.a", v); }},
        {"weights.omega", [](RunConfig& c, const std::string& v) { c.omega = v; }},
        {"weights.eta", [](RunConfig& c, const std::string& v) { c.eta = v; }},
        {"physics.mass", [](RunConfig& c, const std::string& v) { c.mass = to_double("physics.mass", v); }},
        {"domain.r_min", [](RunConfig& c, const std::string& v) { c.domain_r_min = to_double("domain.r_min", v); }},
        {"domain.r_max", [](RunConfig& c, const std::string& v) { c.domain_r_max = to_double("domain.r_max", v); }},
        {"grid.r_min", [](RunConfig& c, const std::string& v) { c.grid_r_min = to_double("grid.r_min", v); }},
        {"grid.r_tail", [](RunConfig& c, const std::string& v) { c.grid_r_tail = to_double("grid.r_tail", v); }},
        {"grid.panels", [](RunConfig& c, const std::string& v) { c.grid_panels = to_size("grid.panels", v); }},
        {"grid.order", [](RunConfig& c, const std::string& v) { c.grid_order = to_size("grid.order", v); }},
        {"field.kind", [](RunConfig& c, const std::string& v) { c.field = v; }},
        {"field.seed", [](RunConfig& c, const std::string& v) { c.seed = to_size("field.seed", v); }},
        {"field.kappas", [](RunConfig& c, const std::string& v) { c.kappas = parse_int_list(v); }},
        {"field.f_plus", [](RunConfig& c, const std::string& v) { c.f_plus = v; }},
        {"field.f_minus", [](RunConfig& c, const std::string& v) { c.f_minus = v; }},
        {"field.coefficients", [](RunConfig& c, const std::string& v) { c.coefficients = parse_number_list(v); }},
        {"scan.family", [](RunConfig& c, const std::string& v) { c.family = v; }},
        {"scan.params", [](RunConfig& c, const std::string& v) { c.params = parse_number_list(v); }},
        {"scan.profiles", [](RunConfig& c, const std::string& v) { c.profiles = split(v, ';'); }},
        {"scan.kappa", [](RunConfig& c, const std::string& v) { c.scan_kappa = static_cast<int>(to_integer("scan.kappa", v)); }},
        {"tolerances.equality",
         [](RunConfig& c, const std::string& v) { c.tolerances.equality = to_double("tolerances.equality", v); }},
        {"tolerances.violation",
         [](RunConfig& c, const std::string& v) { c.tolerances.violation = to_double("tolerances.violation", v); }},
        {"identities.two_j_max",
         [](RunConfig& c, const std::string& v) { c.two_j_max = static_cast<int>(to_integer("identities.two_j_max", v)); }},
        {"identities.theta_order",
         [](RunConfig& c, const std::string& v) { c.theta_order = static_cast<int>(to_integer("identities.theta_order", v)); }},
        {"identities.phi_points",
         [](RunConfig& c, const std::string& v) { c.phi_points = static_cast<int>(to_integer("identities.phi_points", v)); }},
        {"identities.fd_step", [](RunConfig& c, const std::string& v) { c.fd_step = to_double("identities.fd_step", v); }},
        {"identities.lemma_trials",
         [](RunConfig& c, const std::string& v) { c.lemma_trials = to_size("identities.lemma_trials", v); }},
        {"oracle.half_width",
         [](RunConfig& c, const std::string& v) { c.box_half_width = to_double("oracle.half_width", v); }},
        {"oracle.cells", [](RunConfig& c, const std::string& v) { c.cells = to_size("oracle.cells", v); }},
        {"output.out", [](RunConfig& c, const std::string& v) { c.out = v; }},
        {"output.csv", [](RunConfig& c, const std::string& v) { c.csv = v; }},
    };
    return table;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(to_double("list", item));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split(text, ',')) out.push_back(static_cast<int>(to_integer("list", item)));
    return out;
}

void load_config_file(const std::string& path, RunConfig& config) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(path, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    const auto& table = setters();
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw ConfigError("config: key '" + section + "' must live in a section");
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            const auto it = table.find(full);
            if (it == table.end()) throw ConfigError("config: unknown key '" + full + "'");
            it->second(config, value.data());
        }
    }
}

void validate(const RunConfig& config) {
    if (config.preset && (config.omega || config.eta))
        throw ConfigError("give either a preset or explicit weights, not both");
    if (!(config.tolerances.equality > 0.0) || !(config.tolerances.violation > 0.0))
        throw ConfigError("tolerances must be positive");
    if (config.mass && !(*config.mass >= 0.0)) throw ConfigError("mass must be non-negative");
    for (int k : config.kappas)
        if (k == 0) throw ConfigError("kappa must be a non-zero integer");
    if (config.scan_kappa == 0) throw ConfigError("scan kappa must be non-zero");
    if (config.coefficients.size() != 4) throw ConfigError("minimizer coefficients need 4 entries");
    if (config.two_j_max < 1 || config.two_j_max % 2 == 0) throw ConfigError("two_j_max must be a positive odd integer");
    if (config.theta_order < 1 || config.phi_points < 1) throw ConfigError("angular grid sizes must be positive");
    if (!(config.fd_step > 0.0)) throw ConfigError("fd_step must be positive");
    if (config.cells < 8 || config.cells % 2 != 0) throw ConfigError("oracle cells must be even and >= 8");
    if (config.box_half_width && !(*config.box_half_width > 0.0)) throw ConfigError("box half-width must be positive");
}

Preset resolve_weights(const RunConfig& config) {
    Preset p;
    try {
        if (config.preset) {
            p = make_preset(*config.preset, config.a);
        } else if (config.omega || config.eta) {
            // one text alone means omega = eta
            const std::string o = config.omega.value_or(*config.eta);
            const std::string e = config.eta.value_or(*config.omega);
            p = custom_preset(o, e);
        } else {
            throw ConfigError("no weights: give --preset or --omega/--eta");
        }
    } catch (const WeightParseError& e) {
        throw ConfigError(std::string("weight syntax: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (config.domain_r_min) p.domain.r_min = *config.domain_r_min;
    if (config.domain_r_max) p.domain.r_max = *config.domain_r_max;
    if (config.grid_r_min) p.grid.r_min = *config.grid_r_min;
    if (config.grid_r_tail) p.grid.r_tail = *config.grid_r_tail;
    if (config.grid_panels) p.grid.panels = *config.grid_panels;
    if (config.grid_order) p.grid.order = *config.grid_order;
    if (!(p.domain.r_min > 0.0) || !(p.domain.r_max > p.domain.r_min)) throw ConfigError("invalid domain");
    try {
        (void)build_grid(p.grid);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return p;
}

VerifyOptions verify_options(const RunConfig& config, const Preset& preset) {
    VerifyOptions o = options_for(preset);
    o.mass = config.mass.value_or(0.0);
    o.tolerances = config.tolerances;
    return o;
}

}  // namespace hardy::cli
