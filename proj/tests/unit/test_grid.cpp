#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pbk/grid.hpp"
#include "pbk/jet.hpp"

namespace {

using namespace pbk;

double max_error(const GridFunction& f, double (*exact)(double)) {
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, std::abs(f[i] - exact(f.x(i))));
    return e;
}

double dsin(double x) { return std::cos(x); }
double d2sin(double x) { return -std::sin(x); }

TEST(Jet, PropagatesExactDerivatives) {
    const auto x = Jet<4>::variable(0.7);
    const auto f = exp(2.0 * x) * sin(x);
    // d^k/dx^k e^{2x} sin x = 5^{k/2} e^{2x} sin(x + k atan(1/2)).
    for (int k = 0; k <= 4; ++k) {
        const double ref = std::pow(5.0, k / 2.0) * std::exp(1.4) * std::sin(0.7 + k * std::atan(0.5));
        EXPECT_NEAR(f.derivative(k), ref, 1e-12 * std::abs(ref) + 1e-14) << "k=" << k;
    }
    EXPECT_DOUBLE_EQ(value_of(f), std::exp(1.4) * std::sin(0.7));
}

TEST(Jet, ArithmeticWithConstants) {
    const auto x = Jet<2>::variable(3.0);
    const auto f = (1.0 - x) * (x + 2.0) / 2.0;
    EXPECT_DOUBLE_EQ(f.value(), -5.0);
    EXPECT_DOUBLE_EQ(f.derivative(1), -3.5);
    EXPECT_DOUBLE_EQ(f.derivative(2), -1.0);
}

TEST(GridFunction, CentralDifferencesAreSecondOrder) {
    double prev1 = 0.0, prev2 = 0.0;
    for (int points : {201, 401, 801}) {
        const auto f = sample(GridSpec{0.0, 3.0, points}, [](double x) { return std::sin(x); });
        const auto d1 = derivative(f);
        const auto d2 = second_derivative(f);
        EXPECT_EQ(d1.size(), f.size() - 2);
        EXPECT_NEAR(d1.x(0), f.x(1), 1e-15);
        const double e1 = max_error(d1, dsin), e2 = max_error(d2, d2sin);
        if (prev1 > 0.0) {
            EXPECT_NEAR(std::log2(prev1 / e1), 2.0, 0.05);
            EXPECT_NEAR(std::log2(prev2 / e2), 2.0, 0.05);
        }
        prev1 = e1;
        prev2 = e2;
    }
}

TEST(GridFunction, ArithmeticUsesCommonSubGrid) {
    const GridSpec g{-1.0, 1.0, 101};
    const auto f = sample(g, [](double x) { return x * x; });
    const auto df = derivative(f);
    const auto sum = f + df;
    EXPECT_EQ(sum.size(), df.size());
    for (std::size_t i = 0; i < sum.size(); ++i) EXPECT_NEAR(sum[i].real(), sum.x(i) * sum.x(i) + 2.0 * sum.x(i), 1e-12);
    const auto [a, b] = common_support(f, df);
    EXPECT_EQ(a.size(), b.size());
    EXPECT_DOUBLE_EQ(a.x0(), b.x0());
}

TEST(GridFunction, NormInnerAndDistance) {
    const auto f = sample(GridSpec{0.0, 1.0, 1001}, [](double) { return 2.0; });
    EXPECT_NEAR(norm(f), std::sqrt(4.0 * 1001 * 0.001), 1e-12);
    const auto g = sample(GridSpec{0.0, 1.0, 1001}, [](double) { return Complex(0.0, 1.0); });
    EXPECT_NEAR(inner(f, g).imag(), 2.0 * 1001 * 0.001, 1e-12);
    EXPECT_NEAR(inner(g, f).imag(), -2.0 * 1001 * 0.001, 1e-12);
    EXPECT_DOUBLE_EQ(distance(f, f), 0.0);
    EXPECT_DOUBLE_EQ(max_abs(f), 2.0);
}

TEST(GridFunction, MultiplyAndAffineMultiply) {
    const auto f = sample(GridSpec{0.0, 2.0, 21}, [](double x) { return x; });
    const auto g = affine_multiply(f, 2.0, 1.0);
    const auto h = multiply(f, [](double x) { return std::exp(x); });
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_NEAR(g[i].real(), (2.0 * f.x(i) + 1.0) * f.x(i), 1e-14);
        EXPECT_NEAR(h[i].real(), std::exp(f.x(i)) * f.x(i), 1e-13);
    }
}

TEST(GridFunction, RejectsShortOrMismatchedGrids) {
    EXPECT_THROW((GridSpec{0.0, 1.0, 5}.validate()), GridTooShort);
    EXPECT_THROW((GridSpec{1.0, 0.0, 50}.validate()), InvalidInput);
    const auto f = sample(GridSpec{0.0, 1.0, 11}, [](double x) { return x; });
    const auto g = sample(GridSpec{0.0, 1.0, 21}, [](double x) { return x; });
    EXPECT_THROW(f + g, InvalidInput);
    const auto tiny = sample(GridSpec{0.0, 1.0, 9}, [](double x) { return x; });
    EXPECT_THROW(derivative(tiny), GridTooShort);
}

TEST(JetGridFunction, DerivativesAreExactAndKeepAllSamples) {
    const GridSpec g{0.0, std::numbers::pi, 33};
    const auto f = sample_jets(g, [](const auto& x) { return sin(x); });
    const auto d2 = second_derivative(f);
    EXPECT_EQ(d2.size(), f.size());
    EXPECT_EQ(d2.order(), kJetOrder - 2);
    EXPECT_LT(distance(d2 + f, 0.0 * f), 1e-14);
    auto d = f;
    for (int k = 0; k < kJetOrder; ++k) d = derivative(d);
    EXPECT_THROW(derivative(d), InvalidInput);
}

}  // namespace
