#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "pbk/harmonic.hpp"
#include "pbk/pb_core.hpp"

namespace {

using namespace pbk;

harmonic::HarmonicParams params(double r, double w = 0.0) { return {MarketParams(0.2, r), w}; }

TEST(CheckResult, PassIffFiniteAndWithinTolerance) {
    EXPECT_TRUE(pb::CheckResult::make("a", 1e-9, 1e-8).pass);
    EXPECT_TRUE(pb::CheckResult::make("a", 1e-8, 1e-8).pass);
    EXPECT_FALSE(pb::CheckResult::make("a", 2e-8, 1e-8).pass);
    EXPECT_FALSE(pb::CheckResult::make("a", std::numeric_limits<double>::quiet_NaN(), 1.0).pass);
    EXPECT_FALSE(pb::CheckResult::make("a", INFINITY, 1.0).pass);
}

TEST(DiagnosticReport, JsonShape) {
    pb::DiagnosticReport r;
    r.params_echo = {{"sigma", 0.2}};
    r.add(pb::CheckResult::make("ok", 1e-12, 1e-10));
    r.add(pb::CheckResult::make("bad", INFINITY, 1e-10));
    r.notes.push_back("note");
    const nlohmann::json j = r;
    EXPECT_FALSE(j["all_pass"].get<bool>());
    ASSERT_EQ(j["checks"].size(), 2u);
    EXPECT_EQ(j["checks"][0]["check"], "ok");
    EXPECT_TRUE(j["checks"][0]["pass"].get<bool>());
    EXPECT_TRUE(j["checks"][1]["max_residual"].is_null());
    EXPECT_EQ(j["params_echo"]["sigma"], 0.2);
    EXPECT_EQ(j["notes"][0], "note");
}

TEST(EigenSequence, LinearIsIdentity) {
    const auto e = pb::EigenSequence::linear();
    EXPECT_TRUE(e.strictly_increasing);
    EXPECT_DOUBLE_EQ(e.value(0), 0.0);
    EXPECT_DOUBLE_EQ(e.value(7), 7.0);
}

TEST(Harness, AcceptsAConsistentLadder) {
    const auto p = params(0.05);
    const auto sys = harmonic::ladder_system_exact(p, harmonic::default_grid(p));
    EXPECT_TRUE(pb::check_vacua(sys, 1e-10).pass);
    EXPECT_TRUE(pb::check_ladder(sys, 10, 1e-8).pass);
    EXPECT_TRUE(pb::check_number_operator(sys, 10, 1e-8).pass);
    EXPECT_TRUE(pb::check_biorthogonality(sys, 10).pass);
}

TEST(Harness, FlagsABrokenRaisingMap) {
    const auto p = params(0.05);
    auto sys = harmonic::ladder_system_exact(p, harmonic::default_grid(p));
    sys.raise_b = [p](const JetGridFunction& f) { return 1.01 * harmonic::apply_B(p, f); };
    const auto r = pb::check_ladder(sys, 5, 1e-8);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.max_residual, 0.005);
}

TEST(Harness, FlagsAFamilyPairedWithItself) {
    const auto p = params(0.05);
    auto sys = harmonic::ladder_system_fd(p, harmonic::default_grid(p));
    sys.psi_fn = sys.phi_fn;
    // <varphi_n, varphi_m> is not the identity when beta != 0.
    EXPECT_FALSE(pb::check_biorthogonality(sys, 4).pass);
}

TEST(Harness, ZeroVacuumIsDegenerate) {
    const auto p = params(0.05);
    auto sys = harmonic::ladder_system_fd(p, harmonic::default_grid(p));
    sys.phi = [g = harmonic::default_grid(p)](int) { return sample(g, [](double) { return 0.0; }); };
    EXPECT_THROW(pb::check_vacua(sys), DegenerateInput);
}

TEST(Harness, RejectsOversizedIndexRanges) {
    const auto p = params(0.05);
    const auto sys = harmonic::ladder_system_fd(p, harmonic::default_grid(p));
    EXPECT_THROW(pb::check_ladder(sys, 41, 1e-5), InvalidInput);
    EXPECT_THROW(pb::check_biorthogonality(sys, 41), InvalidInput);
    EXPECT_THROW(pb::check_norm_growth(sys, 61, pb::NormGrowth::strictly_increasing, {}, 1e-8), InvalidInput);
}

TEST(QuasiBasis, GroundStatePairIsExactAtBetaZero) {
    const auto p = params(0.02);
    const auto sys = harmonic::ladder_system_fd(p, harmonic::default_grid(p));
    const ComplexFn phi0 = harmonic::Phi_fn(p, 0);
    const auto res = pb::check_quasi_basis(sys, {{phi0, phi0, "phi0"}}, 10, 1e-12);
    EXPECT_TRUE(res.check.pass);
    for (const auto& s : res.traces[0].partial) EXPECT_NEAR(std::abs(s - 1.0), 0.0, 1e-12);
}

TEST(QuasiBasis, UnitWidthGaussianStallsAtMeasuredLevel) {
    // For width s = 1 at sigma = 0.2 the partial sums converge too slowly for 1e-6 at N = 60.
    const auto p = params(0.05);
    auto sys = harmonic::ladder_system_fd(p, harmonic::default_grid(p));
    sys.inner = harmonic::inner_binding(p, 1.0);
    const ComplexFn g = [](double x) { return Complex(std::exp(-x * x)); };
    const auto res = pb::check_quasi_basis(sys, {{g, g, "unit_gauss"}}, 60, 1e-6);
    const double e = res.traces[0].error(60);
    EXPECT_GT(e, 1e-6);
    EXPECT_LT(e, 1e-4);
    EXPECT_LT(e, res.traces[0].error(20));
}

TEST(NormGrowth, ConstantOneAtBetaZeroAndIncreasingOtherwise) {
    const auto zero = params(0.02);
    const auto sys0 = harmonic::ladder_system_fd(zero, harmonic::default_grid(zero));
    EXPECT_TRUE(pb::check_norm_growth(sys0, 20, pb::NormGrowth::constant_one, {}, 1e-10).check.pass);

    const auto p = params(0.05);
    const auto sys = harmonic::ladder_system_fd(p, harmonic::default_grid(p));
    const auto res = pb::check_norm_growth(sys, 20, pb::NormGrowth::strictly_increasing, {}, 1.0);
    EXPECT_TRUE(res.check.pass);
    EXPECT_FALSE(pb::check_norm_growth(sys, 20, pb::NormGrowth::constant_one, {}, 1e-3).check.pass);
}

TEST(ThetaConjugacy, DetectsAWrongMetric) {
    const auto p = params(0.05);
    const auto grid = harmonic::default_grid(p, 16001);
    const auto sys = harmonic::ladder_system_fd(p, grid);
    std::vector<GridFunction> tests{sample(grid, [](double x) { return std::exp(-x * x / 0.04); })};
    EXPECT_TRUE(pb::check_theta_conjugacy(sys, harmonic::theta_operator(p), 5, tests, 1e-5).pass);
    auto wrong = harmonic::theta_operator(p);
    wrong.apply = [p](const GridFunction& f) { return harmonic::apply_Theta_inv(p, f); };
    EXPECT_FALSE(pb::check_theta_conjugacy(sys, wrong, 5, tests, 1e-5).pass);
    auto negative = harmonic::theta_operator(p);
    negative.apply = [p](const GridFunction& f) { return -harmonic::apply_Theta(p, f); };
    EXPECT_EQ(pb::check_theta_conjugacy(sys, negative, 0, tests, 1e-5).max_residual, INFINITY);
}

}  // namespace
