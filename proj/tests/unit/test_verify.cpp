#include "hardy/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace hardy;

namespace {

RadialProfilePair single(int kappa, const char* fp, const char* fm) {
    RadialProfilePair p;
    p.channel = ChannelIndex::from_kappa(kappa);
    p.f_plus = expr_profile(parse_weight(fp));
    p.f_minus = expr_profile(parse_weight(fm));
    return p;
}

HardyReport run(const Preset& p, const SpinorField& f, double mass = 0.0) {
    VerifyOptions o = options_for(p);
    o.mass = mass;
    return verify_inequality(f, p.omega, p.eta, o);
}

}  // namespace

TEST(Presets, NamesAndValidation) {
    EXPECT_EQ(make_preset("exp").omega.str(), "exp(r)");
    EXPECT_EQ(make_preset("pol", 4).eta.str(), "(1+r)^4");
    EXPECT_EQ(make_preset("kato").eta.str(), "r");
    EXPECT_THROW(make_preset("pol", 1.0), std::invalid_argument);
    EXPECT_THROW(make_preset("yukawa"), std::invalid_argument);
    EXPECT_THROW(custom_preset("r^", "r"), WeightParseError);
}

TEST(Verify, ExponentialMinimizerIsEquality) {
    const auto cert = certify_minimizer(make_preset("exp"), {1.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(cert.report.verdict, Verdict::equality);
    EXPECT_NEAR(cert.report.ratio_mid, 1.0, 1e-6);
    EXPECT_TRUE(cert.attained);
    EXPECT_LE(cert.defect_relative, 1e-8);
}

TEST(Verify, KatoGaussianHolds) {
    const auto rep = run(make_preset("kato"), SpinorField({single(1, "r*exp(0-r^2/2)", "r^2*exp(0-r^2/2)")}));
    EXPECT_EQ(rep.verdict, Verdict::holds);
    EXPECT_GE(rep.ratio_mid, 1.0);
    EXPECT_DOUBLE_EQ(rep.analysis.sharp_constant, 1.0);
}

TEST(Verify, KappaTwoOrdersRatios) {
    const auto rep = run(make_preset("exp"), SpinorField({single(2, "r^2*exp(0-r^2)", "r^2*exp(0-r)")}));
    EXPECT_EQ(rep.verdict, Verdict::holds);
    EXPECT_NEAR(rep.mid.value, 4 * rep.lhs.value, 1e-12 * rep.mid.value);
    EXPECT_GT(rep.ratio_lhs, rep.ratio_mid);
}

TEST(Verify, MassiveFieldHolds) {
    const auto rep = run(make_preset("pol", 4), SpinorField({random_field(-1, 3), random_field(2, 4)}), 1.5);
    EXPECT_EQ(rep.verdict, Verdict::holds);
    EXPECT_GE(rep.ratio_mid, 1.0);
}

TEST(Verify, ZeroFieldHolds) {
    const auto rep = run(make_preset("exp"), SpinorField{});
    EXPECT_EQ(rep.verdict, Verdict::holds);
    EXPECT_EQ(rep.lhs.value, 0.0);
}

TEST(Verify, InvalidPairIsWithheld) {
    const auto p = custom_preset("r", "1/r");
    const auto rep = run(p, SpinorField({random_field(-1, 1)}));
    EXPECT_EQ(rep.verdict, Verdict::withheld);
    EXPECT_FALSE(rep.analysis.valid);
}

TEST(Verify, NonDecayingFieldIsDivergent) {
    const auto rep = run(make_preset("kato"), SpinorField({single(-1, "r", "0")}));
    EXPECT_EQ(rep.verdict, Verdict::divergent);
}

TEST(Certify, PolynomialWeights) {
    const auto c4 = certify_minimizer(make_preset("pol", 4), {1.0, 1.0, 1.0, 1.0});
    EXPECT_EQ(c4.report.verdict, Verdict::equality);
    EXPECT_LE(c4.mid_lhs_relative, 1e-10);
    EXPECT_LE(c4.rhs_mid_relative, 1e-6);
    EXPECT_LE(c4.defect_relative, 1e-8);
    const auto c25 = certify_minimizer(make_preset("pol", 2.5), {1.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(c25.report.verdict, Verdict::divergent);
    EXPECT_FALSE(c25.attained);
    EXPECT_FALSE(c25.rhs_finite);
}

TEST(RandomField, DeterministicAndSeeded) {
    const auto a = random_field(-2, 11), b = random_field(-2, 11), c = random_field(-2, 12);
    for (double r : {0.3, 1.7}) {
        EXPECT_EQ(a.f_plus->value(r), b.f_plus->value(r));
        EXPECT_EQ(a.f_minus->value(r), b.f_minus->value(r));
        EXPECT_NE(a.f_plus->value(r), c.f_plus->value(r));
    }
    // origin behaviour r^|kappa|
    EXPECT_LT(std::abs(a.f_plus->value(1e-4)), 1e-6);
}

TEST(RandomField, RatiosAcrossPresets) {
    for (const char* name : {"exp", "pol", "kato"}) {
        const Preset p = make_preset(name, 4);
        for (int k : {-2, -1, 1, 2})
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                const auto rep = run(p, SpinorField({random_field(k, seed)}));
                EXPECT_GE(rep.ratio_mid, 1.0 - 1e-10) << name << ' ' << k << ' ' << seed;
                EXPECT_NEAR(rep.mid.value, k * k * rep.lhs.value, 1e-12 * rep.mid.value);
            }
    }
}

TEST(Scan, DampedMinimizerApproachesOne) {
    const Preset p = make_preset("exp");
    ScanOptions o;
    o.verify = options_for(p);
    const auto s = sharpness_scan(p.omega, p.eta, o);
    ASSERT_EQ(s.trials.size(), 16u);
    EXPECT_LE(s.infimum, 1.0 + 1e-4);
    for (const auto& t : s.trials) EXPECT_GE(t.ratio_mid, 1.0 - 1e-10);
    for (std::size_t i = 1; i < s.trials.size(); ++i) EXPECT_LT(s.trials[i].ratio_mid, s.trials[i - 1].ratio_mid);
}

TEST(Scan, LognormalOnKatoMatchesClosedForm) {
    // omega = eta = r, f+ = exp(-(ln r)^2/(2n)), kappa = -1: ratio = 1 + 1/(2n)
    const Preset p = make_preset("kato");
    ScanOptions o;
    o.family = "lognormal";
    o.verify = options_for(p);
    const auto s = sharpness_scan(p.omega, p.eta, o);
    for (const auto& t : s.trials) EXPECT_NEAR(t.ratio_mid, 1.0 + 1.0 / (2.0 * t.param), 1e-9) << t.param;
    EXPECT_EQ(s.argmin, s.trials.size() - 1);
}

TEST(Scan, GaussianAndCustomFamilies) {
    const Preset p = make_preset("pol", 4);
    ScanOptions o;
    o.verify = options_for(p);
    o.family = "gaussian";
    for (const auto& t : sharpness_scan(p.omega, p.eta, o).trials) EXPECT_GE(t.ratio_mid, 1.0);
    o.family = "custom";
    o.custom_profiles = {"r*exp(0-r)", "r^2/(1+r^6)"};
    const auto s = sharpness_scan(p.omega, p.eta, o);
    EXPECT_EQ(s.trials.size(), 2u);
    EXPECT_GE(s.infimum, 1.0);
}

TEST(Scan, Errors) {
    const Preset p = make_preset("kato");
    ScanOptions o;
    o.verify = options_for(p);
    o.family = "custom";
    EXPECT_THROW(sharpness_scan(p.omega, p.eta, o), std::invalid_argument);
    o.family = "unknown";
    EXPECT_THROW(sharpness_scan(p.omega, p.eta, o), std::invalid_argument);
    o.family = "gaussian";
    EXPECT_THROW(sharpness_scan(p.omega, parse_weight("1/r"), o), std::invalid_argument);
}

TEST(Oracle3D, ZeroField) {
    const auto z = oracle_3d([](const Vec3&) { return Spinor4{}; }, parse_weight("1"), parse_weight("1"),
                             {.half_width = 4.0, .cells = 16});
    EXPECT_EQ(z.lhs, 0.0);
    EXPECT_EQ(z.rhs, 0.0);
    EXPECT_THROW(oracle_3d([](const Vec3&) { return Spinor4{}; }, parse_weight("1"), parse_weight("1"), {.cells = 7}),
                 std::invalid_argument);
}

TEST(Oracle3D, CoarseDesignatedField) {
    const SpinorField f = designated_test_field();
    const auto w = parse_weight("1+r^2");
    const double m = 0.5;
    const auto grid = build_grid({});
    const double lhs = lhs_integral(f, w, w, grid).value;
    const double rhs = rhs_integral(f, w, grid, m).value;
    const auto o = oracle_3d([&](const Vec3& x) { return evaluate_field(f, x); }, w, w,
                             {.half_width = 8.0, .cells = 64, .mass = m});
    EXPECT_NEAR(o.lhs, lhs, 1e-6 * lhs);
    EXPECT_NEAR(o.rhs, rhs, 1e-2 * rhs);
    EXPECT_LT(std::abs(o.rhs - rhs), std::abs(o.rhs_coarse - rhs));
}

TEST(ClassicalHardy, FamilyAboveQuarter) {
    const auto fam = classical_hardy_family();
    for (const auto& t : fam) EXPECT_GE(classical_hardy_check(parse_weight(t)).ratio, 0.25) << t;
    EXPECT_LE(classical_hardy_check(parse_weight(fam.back())).ratio, 0.275);
}

TEST(ClassicalHardy, ScaleInvariant) {
    const double a = classical_hardy_check(parse_weight("exp(0-r^2/2)")).ratio;
    const double b = classical_hardy_check(parse_weight("exp(0-9*r^2/2)")).ratio;
    EXPECT_NEAR(a, b, 1e-12);
    // psi = e^{-r^2/2}: int r^4 e^{-r^2} dr / int e^{-r^2} dr = (3 sqrt(pi)/8) / (sqrt(pi)/2)
    EXPECT_NEAR(a, 0.75, 1e-12);
}
