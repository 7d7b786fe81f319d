#include "hardy/weights.hpp"

#include <gtest/gtest.h>

#include <boost/math/differentiation/finite_difference.hpp>

#include <cmath>
#include <numbers>

using namespace hardy;

TEST(Parse, Literals) {
    const auto e = parse_weight("exp(r)");
    EXPECT_EQ(e.kind(), WeightExpr::Kind::exp);
    EXPECT_EQ(e.children().at(0).kind(), WeightExpr::Kind::variable);
    const auto p = parse_weight("(1+r)^4");
    EXPECT_EQ(p.kind(), WeightExpr::Kind::pow);
    EXPECT_EQ(p.number(), 4.0);
    EXPECT_EQ(p.children().at(0).kind(), WeightExpr::Kind::add);
    EXPECT_DOUBLE_EQ(p(2.0), 81.0);
}

TEST(Parse, PrecedenceAndAssociativity) {
    EXPECT_DOUBLE_EQ(parse_weight("1-r-r")(1.0), -1.0);
    EXPECT_DOUBLE_EQ(parse_weight("8/r/2")(2.0), 2.0);
    EXPECT_DOUBLE_EQ(parse_weight("2*r^2+1")(3.0), 19.0);
    EXPECT_DOUBLE_EQ(parse_weight(" log( exp(r) ) ")(0.75), 0.75);
    EXPECT_DOUBLE_EQ(parse_weight("r^-0.5")(4.0), 0.5);
}

TEST(Parse, ErrorsCarryColumns) {
    auto column = [](const char* text) {
        try {
            (void)parse_weight(text);
        } catch (const WeightParseError& e) {
            return e.column();
        }
        return std::size_t{0};
    };
    EXPECT_EQ(column("r^"), 3u);
    EXPECT_EQ(column("r^-"), 4u);
    EXPECT_EQ(column("r+"), 3u);
    EXPECT_EQ(column("(1+r"), 5u);
    EXPECT_EQ(column("r $"), 3u);
    EXPECT_EQ(column("sin(r)"), 1u);
    EXPECT_EQ(column("r^(2)"), 3u);
    EXPECT_EQ(column(""), 1u);
}

TEST(Parse, PrintRoundTrip) {
    for (const char* t : {"exp(r)", "(1+r)^4", "1/(1+r^2)", "r*exp(0-r^2/2)", "exp(0-r)/r^0.48", "log(1+r)-r/(2+r)",
                          "(r-1)-(r-2)", "r/(r/r)", "2^3", "(1+r)^-2.5", "0.5*r^2*exp(0-r^2/2)"}) {
        const auto e = parse_weight(t);
        const auto again = parse_weight(e.str());
        EXPECT_EQ(again.str(), e.str()) << t;
        for (double r : {0.3, 1.0, 2.7}) EXPECT_DOUBLE_EQ(again(r), e(r)) << t;
    }
}

TEST(Differentiate, ClosedForms) {
    const auto d1 = differentiate(parse_weight("exp(r)"));
    const auto d2 = differentiate(parse_weight("(1+r)^4"));
    for (double r : {0.1, 1.0, 5.0}) {
        EXPECT_DOUBLE_EQ(d1(r), std::exp(r));
        EXPECT_NEAR(d2(r), 4 * std::pow(1 + r, 3), 1e-12 * std::pow(1 + r, 3));
    }
    EXPECT_EQ(differentiate(WeightExpr::constant(3)).kind(), WeightExpr::Kind::constant);
}

TEST(Differentiate, AgreesWithFiniteDifferences) {
    using boost::math::differentiation::finite_difference_derivative;
    for (const char* t : {"r*exp(0-r^2/2)", "1/(1+r^2)", "exp(0-r)/r^0.48", "log(1+r)*r^3", "exp(exp(1-r))",
                          "(1+r)^-3", "r/(2+r)"}) {
        const auto e = parse_weight(t);
        const auto d = differentiate(e);
        for (double r : {0.5, 0.9, 3.1}) {
            const double ref = finite_difference_derivative<decltype(e), double, 8>(e, r);
            EXPECT_NEAR(d(r), ref, 1e-6 * (1 + std::abs(ref))) << t << " at " << r;
        }
    }
}

TEST(Gamma, Values) {
    const auto r = parse_weight("r");
    const auto g0 = compute_gamma(parse_weight("exp(r)"), parse_weight("exp(r)"));
    EXPECT_EQ(g0.value, 0.0);
    EXPECT_EQ(compute_gamma(r, r).value, 0.0);
    const auto g1 = compute_gamma(parse_weight("r^2"), r);
    EXPECT_NEAR(g1.value, 1.0, 1e-12);
    EXPECT_EQ(g1.kind, ExtremumKind::plateau);
    // r (1/(1+r) - 1/r) = -1/(1+r): largest as r -> 0
    EXPECT_EQ(compute_gamma(parse_weight("1+r"), r).kind, ExtremumKind::boundary);
    // eta = 1, log omega = 1 - (1+r) e^-r: gamma = max r e^-r = 1/e at r = 1
    const auto gi = compute_gamma(parse_weight("exp(1-(1+r)*exp(0-r))"), parse_weight("1"));
    EXPECT_EQ(gi.kind, ExtremumKind::interior);
    EXPECT_NEAR(gi.value, std::exp(-1.0), 1e-12);
    EXPECT_NEAR(gi.radius, 1.0, 1e-5);
}

TEST(Gamma, RejectsNonPositiveWeights) {
    EXPECT_THROW(compute_gamma(parse_weight("r-1"), parse_weight("r")), WeightAnalysisError);
    EXPECT_THROW(compute_tau(parse_weight("0-r")), WeightAnalysisError);
}

TEST(Tau, ExponentialWeight) {
    const Domain d{1e-6, 100.0};
    const auto t = compute_tau(parse_weight("exp(r)"), d);
    EXPECT_NEAR(t.value, std::numbers::e, 1e-9);
    EXPECT_NEAR(t.radius, 1.0, 1e-6);
    EXPECT_EQ(t.kind, ExtremumKind::interior);
    // shrinking the refinement tolerance keeps it within bounds
    const auto fine = compute_tau(parse_weight("exp(r)"), d, {8192, 1e-13});
    EXPECT_THROW(compute_tau(parse_weight("exp(r)")), WeightAnalysisError);  // overflows before 1e3
    EXPECT_NEAR(fine.value, std::numbers::e, 1e-12);
    EXPECT_NEAR(fine.radius, 1.0, 1e-6);
}

TEST(Tau, PolynomialWeights) {
    for (double a : {2.5, 4.0, 6.0}) {
        const auto t = compute_tau(pow(WeightExpr::constant(1) + WeightExpr::variable(), a));
        EXPECT_NEAR(t.value, std::pow(a, a) / std::pow(a - 1, a - 1), 1e-9 * t.value) << a;
        EXPECT_NEAR(t.radius, 1 / (a - 1), 1e-6) << a;
    }
}

TEST(Tau, KatoAndBoundary) {
    const auto t = compute_tau(parse_weight("r"));
    EXPECT_DOUBLE_EQ(t.value, 1.0);
    EXPECT_EQ(t.kind, ExtremumKind::plateau);
    const auto b = compute_tau(parse_weight("1/r"));
    EXPECT_EQ(b.kind, ExtremumKind::boundary);
    EXPECT_TRUE(std::isnan(b.value));
    EXPECT_EQ(compute_tau(parse_weight("1")).kind, ExtremumKind::boundary);
}

TEST(AnalyzePair, Presets) {
    const auto e = analyze_pair(parse_weight("exp(r)"), parse_weight("exp(r)"));
    EXPECT_TRUE(e.valid);
    EXPECT_NEAR(e.sharp_constant, std::exp(2.0), 1e-8);
    EXPECT_LT(e.domain.r_max, 710.0);  // clipped where exp overflows
    const auto k = analyze_pair(parse_weight("r"), parse_weight("r"));
    EXPECT_TRUE(k.valid);
    EXPECT_DOUBLE_EQ(k.sharp_constant, 1.0);
    const auto q = analyze_pair(parse_weight("r^2"), parse_weight("r"));
    EXPECT_TRUE(q.valid);
    EXPECT_NEAR(q.sharp_constant, 0.25, 1e-12);
}

TEST(AnalyzePair, InvalidCases) {
    const auto b = analyze_pair(parse_weight("r"), parse_weight("1/r"));
    EXPECT_FALSE(b.valid);
    EXPECT_TRUE(b.admissible);
    EXPECT_EQ(b.sharp_constant, 0.0);
    // tau = 1 < gamma / 2 = 3 / 2
    const auto t = analyze_pair(parse_weight("r^4"), parse_weight("r"));
    EXPECT_FALSE(t.valid);
    const auto n = analyze_pair(parse_weight("0-r"), parse_weight("r"));
    EXPECT_FALSE(n.admissible);
    EXPECT_FALSE(n.messages.empty());
}

TEST(LogValue, FiniteWhereValueOverflows) {
    const auto w = parse_weight("exp(r)/(exp(r)*exp(r))");
    EXPECT_TRUE(std::isnan(w(800.0)));
    EXPECT_NEAR(w.log_value(800.0), -800.0, 1e-10);
    EXPECT_NEAR(parse_weight("(1+exp(r))^2").log_value(1000.0), 2000.0, 1e-10);
    EXPECT_NEAR(parse_weight("log(exp(r))").log_value(800.0), std::log(800.0), 1e-14);
    for (const char* t : {"r*exp(0-r^2/2)", "1/(1+r^2)", "(1+r)^-2.5", "2-r"})
        EXPECT_NEAR(parse_weight(t).log_value(0.7), std::log(parse_weight(t)(0.7)), 1e-14) << t;
    EXPECT_TRUE(std::isnan(parse_weight("0-r").log_value(1.0)));
}
