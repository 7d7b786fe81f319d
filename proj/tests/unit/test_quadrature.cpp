#include "hardy/parallel.hpp"
#include "hardy/quadrature.hpp"

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <atomic>
#include <cmath>
#include <vector>

using namespace hardy;

namespace {

template <unsigned N>
void compare_with_boost() {
    using B = boost::math::quadrature::gauss<double, N>;
    const auto& rule = gauss_legendre(N);
    ASSERT_EQ(rule.nodes.size(), N);
    const auto& x = B::abscissa();
    const auto& w = B::weights();
    // boost stores the non-negative nodes ascending, so node k sits at N/2 + k
    for (std::size_t k = 0; k < x.size(); ++k) {
        const std::size_t idx = N / 2 + k;
        EXPECT_NEAR(rule.nodes[idx], x[k], 1e-15);
        EXPECT_NEAR(rule.weights[idx], w[k], 1e-15);
        EXPECT_NEAR(rule.nodes[N - 1 - idx], -x[k], 1e-15);
    }
}

}  // namespace

TEST(GaussLegendre, MatchesBoostTables) {
    compare_with_boost<7>();
    compare_with_boost<20>();
    compare_with_boost<30>();
}

TEST(GaussLegendre, ExactForPolynomials) {
    for (std::size_t n : {1u, 4u, 11u, 20u}) {
        const auto& rule = gauss_legendre_cached(n);
        for (std::size_t d = 0; d <= 2 * n - 1; ++d) {
            double s = 0;
            for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], double(d));
            EXPECT_NEAR(s, d % 2 ? 0.0 : 2.0 / (d + 1.0), 1e-14) << n << ' ' << d;
        }
    }
}

TEST(GaussLegendre, CacheReturnsSameRule) {
    EXPECT_EQ(&gauss_legendre_cached(13), &gauss_legendre_cached(13));
    EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(Parallel, VisitsEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_GE(thread_count(), 1u);
    parallel_for(0, [](std::size_t) { FAIL(); });
}
