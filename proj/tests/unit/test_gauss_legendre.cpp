#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "drl/error.hpp"
#include "drl/gauss_legendre.hpp"

namespace {

using drl::adaptive_integrate;
using drl::AdaptiveOptions;

TEST(GaussRule, WeightsSumToTwoAndNodesAreSymmetric) {
    for (int order : {1, 2, 5, 16, 40}) {
        const auto& rule = drl::gauss_legendre_rule(order);
        ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(order));
        double sum = 0.0;
        for (int i = 0; i < order; ++i) {
            sum += rule.weights[i];
            EXPECT_NEAR(rule.nodes[i], -rule.nodes[order - 1 - i], 1e-15);
        }
        EXPECT_NEAR(sum, 2.0, 1e-14) << "order " << order;
    }
}

TEST(GaussRule, ExactForPolynomialsUpToDegree2nMinus1) {
    const auto& rule = drl::gauss_legendre_rule(6);
    for (int deg = 0; deg <= 11; ++deg) {
        const double got = drl::apply_rule(rule, [deg](double x) { return std::pow(x, deg); }, 0.0, 2.0);
        const double exact = std::pow(2.0, deg + 1) / (deg + 1);
        EXPECT_NEAR(got, exact, 1e-12 * exact) << "degree " << deg;
    }
}

TEST(GaussRule, RejectsOrderZero) {
    EXPECT_THROW(drl::gauss_legendre_rule(0), drl::InvalidInput);
}

TEST(Adaptive, GaussianIntegral) {
    const auto e = adaptive_integrate([](double x) { return std::exp(-x * x); }, 0.0, 10.0, {});
    EXPECT_NEAR(e.value, std::sqrt(std::numbers::pi) / 2.0, 1e-14);
    EXPECT_LE(e.error, 1e-9);
}

TEST(Adaptive, KinkWithBreakpoint) {
    const std::vector<double> br{-1.0, 0.3, 2.0};
    AdaptiveOptions opt;
    opt.rel_tol = 1e-13;
    const auto e = adaptive_integrate([](double x) { return std::abs(x - 0.3); }, br, opt);
    EXPECT_NEAR(e.value, 0.5 * 1.3 * 1.3 + 0.5 * 1.7 * 1.7, 1e-13);
}

TEST(Adaptive, ErrorEstimateBoundsTrueError) {
    AdaptiveOptions opt;
    opt.rel_tol = 1e-6;
    const auto e = adaptive_integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, opt);
    EXPECT_GE(e.error, std::abs(e.value - 2.0 / 3.0));
}

TEST(Adaptive, EmptyIntervalIsZero) {
    const auto e = adaptive_integrate([](double) { return 1.0; }, 2.0, 2.0, {});
    EXPECT_EQ(e.value, 0.0);
}

TEST(Adaptive, NonFiniteIntegrandThrows) {
    EXPECT_THROW(adaptive_integrate([](double) { return std::nan(""); }, 0.0, 1.0, {}),
                 drl::QuadratureError);
}

TEST(Adaptive, PanelBudgetExhaustionThrows) {
    AdaptiveOptions opt;
    opt.max_panels = 4;
    opt.rel_tol = 1e-14;
    EXPECT_THROW(adaptive_integrate([](double x) { return std::sin(1e4 * x); }, 0.0, 1.0, opt),
                 drl::QuadratureError);
}

TEST(Estimate, ArithmeticAddsErrors) {
    const drl::Estimate a{1.0, 0.1};
    const drl::Estimate b{3.0, 0.2};
    EXPECT_DOUBLE_EQ((a + b).value, 4.0);
    EXPECT_DOUBLE_EQ((a - b).value, -2.0);
    EXPECT_NEAR((a - b).error, 0.3, 1e-15);
    EXPECT_DOUBLE_EQ(a.scaled(-2.0).value, -2.0);
    EXPECT_DOUBLE_EQ(a.scaled(-2.0).error, 0.2);
}

} // namespace
