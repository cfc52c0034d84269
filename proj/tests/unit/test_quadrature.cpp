#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "pbk/errors.hpp"
#include "pbk/quadrature.hpp"

namespace {

using namespace pbk;
using namespace pbk::quadrature;

const ComplexFn one = [](double) { return Complex(1.0); };

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    for (int n : {1, 2, 5, 12, 40}) {
        const auto rule = gauss_legendre(n, {-0.5, 2.0});
        for (int k = 0; k <= 2 * n - 1; ++k) {
            const ComplexFn mono = [k](double x) { return Complex(std::pow(x, k)); };
            const double exact = (std::pow(2.0, k + 1) - std::pow(-0.5, k + 1)) / (k + 1);
            EXPECT_NEAR(integrate(mono, rule).real(), exact, 1e-12 * std::max(1.0, std::abs(exact)))
                << "n=" << n << " k=" << k;
        }
    }
}

TEST(GaussLegendre, NodesInsideAndWeightsPositive) {
    const auto rule = gauss_legendre(257, {1.0, 3.0});
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        EXPECT_GT(rule.nodes[i], 1.0);
        EXPECT_LT(rule.nodes[i], 3.0);
        EXPECT_GT(rule.weights[i], 0.0);
        if (i > 0) EXPECT_GT(rule.nodes[i], rule.nodes[i - 1]);
        sum += rule.weights[i];
    }
    EXPECT_NEAR(sum, 2.0, 1e-13);
}

TEST(GaussHermite, GaussianMomentsAreExact) {
    // With the dx-measure weights, integrate(x^{2k} e^{-x^2}) = Gamma(k + 1/2).
    const auto rule = gauss_hermite(30);
    for (int k = 0; k <= 20; ++k) {
        const ComplexFn h = [k](double x) { return Complex(std::pow(x, 2 * k) * std::exp(-x * x)); };
        const double exact = std::tgamma(k + 0.5);
        EXPECT_NEAR(integrate(h, rule).real(), exact, 1e-12 * exact) << "k=" << k;
    }
}

TEST(GaussHermite, AffineMapIntegratesShiftedGaussian) {
    const double c = 1.7, s = 0.3;
    const auto rule = gauss_hermite(20, c, s);
    const ComplexFn h = [=](double x) { return Complex(std::exp(-(x - c) * (x - c) / (s * s)) * (1.0 + x)); };
    EXPECT_NEAR(integrate(h, rule).real(), s * std::sqrt(std::numbers::pi) * (1.0 + c), 1e-13);
}

TEST(GaussHermite, LargeRulesStayFinite) {
    const auto rule = gauss_hermite(4096);
    for (double w : rule.weights) {
        ASSERT_TRUE(std::isfinite(w));
        ASSERT_GT(w, 0.0);
    }
    const ComplexFn g = [](double x) { return Complex(std::exp(-x * x)); };
    EXPECT_NEAR(integrate(g, rule).real(), std::sqrt(std::numbers::pi), 1e-12);
}

TEST(Adaptive, ConvergesAndRecordsEstimates) {
    const ComplexFn f = [](double x) { return Complex(std::sin(x)); };
    const auto res = adaptive_inner_product_detailed(one, f, RuleSpec::legendre(0.0, std::numbers::pi), 1e-12);
    EXPECT_NEAR(res.value.real(), 2.0, 1e-12);
    EXPECT_GE(res.nodes, kAdaptiveStartNodes);
    EXPECT_GE(res.estimates.size(), 2u);
}

TEST(Adaptive, ExactZeroIntegralsConverge) {
    const ComplexFn s1 = [](double x) { return Complex(std::sin(x)); };
    const ComplexFn s2 = [](double x) { return Complex(std::sin(2.0 * x)); };
    const Complex v = adaptive_inner_product(s1, s2, RuleSpec::legendre(0.0, std::numbers::pi), 1e-12);
    EXPECT_LT(std::abs(v), 1e-13);
}

TEST(Adaptive, InnerProductConjugatesFirstArgument) {
    const ComplexFn f = [](double) { return Complex(0.0, 1.0); };
    const Complex v = adaptive_inner_product(f, one, RuleSpec::legendre(0.0, 2.0), 1e-12);
    EXPECT_NEAR(v.imag(), -2.0, 1e-13);
}

TEST(Adaptive, ReportsNonConvergenceAtTheCap) {
    const ComplexFn step = [](double x) { return Complex(x < 0.3 ? 0.0 : 1.0); };
    try {
        adaptive_integrate(step, RuleSpec::legendre(0.0, 1.0), 1e-13);
        FAIL() << "expected QuadratureNonConvergence";
    } catch (const QuadratureNonConvergence& e) {
        EXPECT_EQ(e.nodes(), kAdaptiveMaxNodes);
        EXPECT_NEAR(e.last().real(), 0.7, 1e-3);
    }
}

TEST(Adaptive, RejectsNonFiniteSamplesAndBadArguments) {
    const ComplexFn bad = [](double x) { return Complex(x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0); };
    EXPECT_THROW(adaptive_integrate(bad, RuleSpec::legendre(0.0, 1.0), 1e-10), NonFiniteSample);
    EXPECT_THROW(adaptive_integrate(one, RuleSpec::legendre(0.0, 1.0), 1e-14), InvalidInput);
    EXPECT_THROW(gauss_legendre(0, {0.0, 1.0}), InvalidInput);
    EXPECT_THROW(gauss_legendre(4, {1.0, 1.0}), InvalidInput);
}

}  // namespace
