#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pbk/diagnostics.hpp"
#include "pbk/harmonic.hpp"

namespace {

using namespace pbk;
using namespace pbk::harmonic;

class HarmonicModel : public ::testing::TestWithParam<std::tuple<double, double>> {
protected:
    HarmonicParams p{MarketParams(0.2, std::get<0>(GetParam())), std::get<1>(GetParam())};
};

TEST_P(HarmonicModel, PhiIsScaledHermiteFunction) {
    const double s = p.sigma();
    for (int n : {0, 1, 5, 20})
        for (double x : {-0.4, -0.05, 0.0, 0.1, 0.6}) {
            const double ref = double(oracle::hermite_function_explicit(n, x / s + s * p.w)) / std::sqrt(s);
            EXPECT_NEAR(Phi(p, n, x), ref, 1e-11);
        }
}

TEST_P(HarmonicModel, FamiliesMultiplyToPhiSquared) {
    for (int n : {0, 3, 11})
        for (double x : {-0.3, 0.0, 0.25})
            EXPECT_NEAR(varphi(p, n, x) * psi(p, n, x), Phi(p, n, x) * Phi(p, n, x), 1e-12);
}

TEST_P(HarmonicModel, CommutatorIsIdentityOnJets) {
    const auto grid = default_grid(p, 401);
    const auto f = sample_jets(grid, [&](const auto& x) { return exp(-10.0 * (x - 0.05) * (x - 0.05)) * (1.0 + x); });
    const auto ab = apply_A(p, apply_B(p, f));
    const auto ba = apply_B(p, apply_A(p, f));
    EXPECT_LT(distance(ab - ba, f) / norm(f), 1e-12);
    const auto c = apply_c(p, apply_c_dag(p, f)) - apply_c_dag(p, apply_c(p, f));
    EXPECT_LT(distance(c, f) / norm(f), 1e-12);
}

TEST_P(HarmonicModel, HamiltonianFactorisesAsBAPlusDelta) {
    const auto grid = default_grid(p, 401);
    for (int n : {0, 2, 7}) {
        const auto f = sample_jets(grid, [&](const auto& x) { return varphi(p, n, x); });
        const auto lhs = apply_H_eff(p, f);
        const auto rhs = apply_B(p, apply_A(p, f)) + p.delta() * f;
        EXPECT_LT(distance(lhs, rhs) / norm(lhs), 1e-12);
        EXPECT_LT(distance(lhs, p.eigenvalue(n) * f) / norm(lhs), 1e-12);
    }
}

TEST_P(HarmonicModel, ThetaMapsVarphiToPsi) {
    const auto grid = default_grid(p, 801);
    for (int n : {0, 4, 9}) {
        const auto ph = sample(grid, [&](double x) { return varphi(p, n, x); });
        const auto ps = sample(grid, [&](double x) { return psi(p, n, x); });
        EXPECT_LT(distance(apply_Theta(p, ph), ps) / norm(ps), 1e-13);
        EXPECT_LT(distance(apply_Theta_inv(p, ps), ph) / norm(ph), 1e-13);
    }
}

TEST_P(HarmonicModel, NormClosedFormsMatchQuadrature) {
    const auto inner = inner_binding(p, p.sigma());
    for (int n : {0, 1, 6, 15}) {
        const auto ph = varphi_fn(p, n), ps = psi_fn(p, n);
        EXPECT_NEAR(inner(ph, ph).real() / varphi_norm_sq(p, n), 1.0, 1e-10);
        EXPECT_NEAR(inner(ps, ps).real() / psi_norm_sq(p, n), 1.0, 1e-10);
        EXPECT_NEAR(std::sqrt(varphi_norm_sq(p, n) * psi_norm_sq(p, n)), norm_product(p, n), 1e-12 * norm_product(p, n));
    }
}

TEST_P(HarmonicModel, FlippingBetaSwapsFamilies) {
    const auto q = p.flipped_beta();
    EXPECT_DOUBLE_EQ(q.beta(), -p.beta());
    EXPECT_DOUBLE_EQ(q.delta(), p.delta());
    for (double x : {-0.2, 0.1}) EXPECT_DOUBLE_EQ(varphi(q, 3, x), psi(p, 3, x));
}

INSTANTIATE_TEST_SUITE_P(Markets, HarmonicModel,
                         ::testing::Combine(::testing::Values(0.02, 0.05, 0.1), ::testing::Values(0.0, 0.7)));

TEST(Harmonic, BetaZeroCollapsesFamilies) {
    const HarmonicParams p{MarketParams(0.2, 0.02), 0.0};
    ASSERT_TRUE(p.market.beta_is_zero());
    for (double x : {-0.3, 0.2}) {
        EXPECT_DOUBLE_EQ(varphi(p, 4, x), Phi(p, 4, x));
        EXPECT_DOUBLE_EQ(psi(p, 4, x), Phi(p, 4, x));
    }
    EXPECT_NEAR(norm_product(p, 30), 1.0, 1e-14);
}

TEST(Harmonic, DeltaEqualsGamma) {
    for (double r : {0.0, 0.03, 0.2}) {
        const HarmonicParams p{MarketParams(0.3, r), 0.0};
        EXPECT_NEAR(p.delta(), p.market.gamma(), 1e-15);
    }
}

TEST(Harmonic, FiniteDifferenceEigenResidualIsSecondOrder) {
    const HarmonicParams p{MarketParams(0.2, 0.05), 0.0};
    const double r1 = diagnostics::harmonic_eigen_residual(p, {-1.6, 1.6, 4001}, 4);
    const double r2 = diagnostics::harmonic_eigen_residual(p, {-1.6, 1.6, 8001}, 4);
    EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.05);
}

TEST(Harmonic, DiagnoseAllPass) {
    const auto report = diagnostics::diagnose(HarmonicParams{MarketParams(0.2, 0.05), 0.0});
    for (const auto& c : report.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.max_residual;
    EXPECT_EQ(report.params_echo["model"], "harmonic");
}

TEST(Harmonic, RejectsInvalidInput) {
    EXPECT_THROW(MarketParams(0.0, 0.05), InvalidInput);
    EXPECT_THROW(MarketParams(0.2, -0.01), InvalidInput);
    EXPECT_THROW(require_index(61), InvalidInput);
}

}  // namespace
