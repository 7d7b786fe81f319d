#include "cli/commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hardy::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "hardy_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome execute(RunConfig cfg) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig with(const std::string& command, const std::string& preset = "") {
    RunConfig c;
    c.command = command;
    if (!preset.empty()) c.preset = preset;
    return c;
}

}  // namespace

TEST(Config, IniFileSectionsAndOverrides) {
    const auto path = scratch("run.ini");
    std::ofstream(path) << "[weights]\npreset = pol\na = 5\n[physics]\nmass = 0.25\n[field]\nkappas = -2, 1\n"
                           "[scan]\nprofiles = r*exp(0-r); r^2*exp(0-r)\n[tolerances]\nequality = 1e-7\n";
    RunConfig c;
    load_config_file(path.string(), c);
    EXPECT_EQ(*c.preset, "pol");
    EXPECT_EQ(c.a, 5.0);
    EXPECT_EQ(*c.mass, 0.25);
    EXPECT_EQ(c.kappas, (std::vector<int>{-2, 1}));
    EXPECT_EQ(c.profiles.size(), 2u);
    EXPECT_EQ(c.tolerances.equality, 1e-7);
}

TEST(Config, UnknownKeysAndBadValues) {
    const auto p1 = scratch("bad1.ini");
    std::ofstream(p1) << "[weights]\nomegaa = r\n";
    RunConfig c;
    EXPECT_THROW(load_config_file(p1.string(), c), ConfigError);
    const auto p2 = scratch("bad2.ini");
    std::ofstream(p2) << "[physics]\nmass = heavy\n";
    EXPECT_THROW(load_config_file(p2.string(), c), ConfigError);
    EXPECT_THROW(load_config_file(scratch("missing.ini").string(), c), ConfigError);
}

TEST(Config, Validation) {
    RunConfig c = with("weights", "exp");
    c.omega = "r";
    EXPECT_THROW(validate(c), ConfigError);
    RunConfig t = with("weights", "exp");
    t.tolerances.violation = 0.0;
    EXPECT_THROW(validate(t), ConfigError);
    EXPECT_NO_THROW(validate(with("weights", "exp")));
    EXPECT_THROW(resolve_weights(with("weights")), ConfigError);
}

TEST(Config, SingleWeightMeansEqualPair) {
    RunConfig c = with("weights");
    c.eta = "r";
    const auto p = resolve_weights(c);
    EXPECT_EQ(p.omega.str(), "r");
    EXPECT_EQ(p.eta.str(), "r");
}

TEST(Weights, ExponentialPreset) {
    auto r = execute(with("weights", "exp"));
    EXPECT_EQ(r.code, exit_ok);
    EXPECT_NE(r.out.find("2.718281828459"), std::string::npos);
    EXPECT_NE(r.out.find("7.38905609893"), std::string::npos);
}

TEST(Weights, KatoPairAndBoundary) {
    RunConfig k = with("weights");
    k.omega = "r";
    k.eta = "r";
    auto r = execute(k);
    EXPECT_EQ(r.code, exit_ok);
    EXPECT_NE(r.out.find("sharp constant    1\n"), std::string::npos);
    RunConfig b = with("weights");
    b.eta = "1/r";
    r = execute(b);
    EXPECT_EQ(r.code, exit_divergent);
    EXPECT_NE(r.out.find("boundary/divergent"), std::string::npos);
}

TEST(Weights, ParseErrorIsConfigError) {
    RunConfig c = with("weights");
    c.omega = "r^";
    auto r = execute(c);
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("column 3"), std::string::npos);
}

TEST(Verify, ExitCodes) {
    RunConfig m = with("verify", "exp");
    m.field = "minimizer";
    auto r = execute(m);
    EXPECT_EQ(r.code, exit_ok);
    EXPECT_NE(r.out.find("equality"), std::string::npos);

    RunConfig rnd = with("verify", "pol");
    rnd.field = "random";
    rnd.seed = 7;
    r = execute(rnd);
    EXPECT_EQ(r.code, exit_ok);
    EXPECT_NE(r.out.find("holds"), std::string::npos);

    RunConfig d = with("verify", "pol");
    d.a = 2.5;
    d.field = "minimizer";
    EXPECT_EQ(execute(d).code, exit_divergent);

    RunConfig bad = with("verify", "exp");
    bad.field = "spiral";
    EXPECT_EQ(execute(bad).code, exit_config);
}

TEST(Verify, JsonReportIsStableAndComplete) {
    const auto a = scratch("a.json"), b = scratch("b.json");
    RunConfig c = with("verify", "kato");
    c.kappas = {-2, -1, 1, 2};
    c.out = a.string();
    ASSERT_EQ(execute(c).code, exit_ok);
    c.out = b.string();
    ASSERT_EQ(execute(c).code, exit_ok);
    const std::string ja = slurp(a);
    EXPECT_EQ(ja, slurp(b));
    for (const char* key : {"\"weights\"", "\"constants\"", "\"integrals\"", "\"ratios\"", "\"defect\"", "\"verdict\"",
                            "\"tolerances\"", "\"grid\""})
        EXPECT_NE(ja.find(key), std::string::npos) << key;
}

TEST(Scan, CsvShapeAndFooter) {
    const auto csv = scratch("scan.csv");
    RunConfig c = with("scan", "exp");
    c.csv = csv.string();
    ASSERT_EQ(execute(c).code, exit_ok);
    std::istringstream in(slurp(csv));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "trial_id,param,I_lhs,I_mid,I_rhs,ratio_mid,status");
    int rows = 0;
    std::string last;
    while (std::getline(in, line)) {
        ++rows;
        last = line;
    }
    EXPECT_EQ(rows, 17);
    EXPECT_EQ(last.rfind("infimum,", 0), 0u);
    const double inf = std::stod(last.substr(last.find(",,,,") + 4));
    EXPECT_LE(inf, 1.0 + 1e-4);
    EXPECT_GE(inf, 1.0 - 1e-10);
}

TEST(Scan, EmptyFamilyFails) {
    RunConfig c = with("scan", "kato");
    c.family = "custom";
    EXPECT_NE(execute(c).code, exit_ok);
}

TEST(Identities, DefaultPassesAndDegradedFails) {
    RunConfig c = with("identities");
    c.lemma_trials = 50;
    EXPECT_EQ(execute(c).code, exit_ok);
    c.theta_order = 4;
    c.phi_points = 8;
    const auto r = execute(c);
    EXPECT_EQ(r.code, exit_failure);
    EXPECT_NE(r.out.find("exactness"), std::string::npos);
}

TEST(Oracle, ZeroFieldAgreesExactly) {
    RunConfig c = with("oracle");
    c.field = "zero";
    c.cells = 16;
    const auto r = execute(c);
    EXPECT_EQ(r.code, exit_ok);
}
