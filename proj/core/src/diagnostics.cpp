#include "pbk/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace pbk::diagnostics {

nlohmann::json to_json(const Options& o) {
    return {{"n_max", o.n_max}, {"fd_points", o.fd_points}, {"quasi_n", o.quasi_n}, {"norm_n", o.norm_n}};
}

double relative_eigen_residual(const GridFunction& hf, const GridFunction& f, double eigenvalue) {
    return distance(hf, eigenvalue * f) / (std::abs(eigenvalue) * norm(f));
}

double harmonic_eigen_residual(const harmonic::HarmonicParams& p, const GridSpec& grid, int n_max) {
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double e = p.eigenvalue(n);
        const auto big = sample(grid, [&](double x) { return harmonic::Phi(p, n, x); });
        const auto ph = sample(grid, [&](double x) { return harmonic::varphi(p, n, x); });
        const auto ps = sample(grid, [&](double x) { return harmonic::psi(p, n, x); });
        worst = std::max(worst, relative_eigen_residual(harmonic::apply_h_eff(p, big), big, e));
        worst = std::max(worst, relative_eigen_residual(harmonic::apply_H_eff(p, ph), ph, e));
        worst = std::max(worst, relative_eigen_residual(harmonic::apply_H_eff_dag(p, ps), ps, e));
    }
    return worst;
}

double barrier_eigen_residual(const barrier::BarrierParams& p, double h_fraction, int n_max) {
    const auto grid = barrier::closed_grid(p, h_fraction);
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double e = p.eigenvalue(n);
        const auto ph = sample(grid, [&](double x) { return barrier::varphi(p, n, x); });
        const auto ps = sample(grid, [&](double x) { return barrier::psi(p, n, x); });
        worst = std::max(worst, relative_eigen_residual(barrier::apply_H_eff(p, ph), ph, e));
        worst = std::max(worst, relative_eigen_residual(barrier::apply_H_eff_dag(p, ps), ps, e));
    }
    return worst;
}

double riesz_bound_violation(const barrier::BarrierParams& p, int n_max) {
    const double ea = std::exp(2.0 * p.beta() * p.a);
    const double eb = std::exp(2.0 * p.beta() * p.b);
    const double lo = std::min(ea, eb), hi = std::max(ea, eb);
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const auto f = barrier::varphi_fn(p, n);
        const double v = barrier::inner_1(p, f, f).real();
        // Quadrature rounding may land a hair outside when beta = 0 and lo = hi = 1.
        const double slack = 1e-12 * hi;
        if (v < lo - slack) worst = std::max(worst, (lo - v) / lo);
        if (v > hi + slack) worst = std::max(worst, (v - hi) / hi);
    }
    return worst;
}

namespace {

nlohmann::json market_echo(const MarketParams& m) {
    return {{"sigma", m.sigma()}, {"r", m.r()}, {"beta", m.beta()}, {"gamma", m.gamma()}};
}

void note_beta_zero(pb::DiagnosticReport& report, const MarketParams& m) {
    if (m.beta_is_zero())
        report.notes.push_back(
            "beta = 0 (sigma^2 = 2r): varphi_n = Psi_n = Phi_n, the degenerate orthonormal regime");
}

}  // namespace

pb::DiagnosticReport diagnose(const harmonic::HarmonicParams& p, const Options& opt) {
    using namespace harmonic;
    pb::DiagnosticReport report;
    report.params_echo = market_echo(p.market);
    report.params_echo["model"] = "harmonic";
    report.params_echo["w"] = p.w;
    report.params_echo["knobs"] = to_json(opt);
    note_beta_zero(report, p.market);

    const auto grid = default_grid(p);
    const auto fd = ladder_system_fd(p, grid);
    const auto exact = ladder_system_exact(p, grid);
    const auto fine_grid = default_grid(p, opt.fd_points);
    const auto fine = ladder_system_fd(p, fine_grid);

    report.add(pb::check_vacua(fd, pb::kFiniteDifferenceTol));
    if (p.market.beta_is_zero()) {
        double d = 0.0;
        for (int i = 0; i < grid.points; ++i) {
            const double x = grid.x(i);
            d = std::max(d, std::abs(varphi(p, 0, x) - psi(p, 0, x)));
        }
        report.add(pb::CheckResult::make("vacua_coincide", d, 1e-12));
    }
    report.add(pb::check_ladder(exact, opt.n_max, 1e-8, "ladder_exact"));
    report.add(pb::check_ladder(fine, opt.n_max, 1e-5, "ladder_fd"));
    report.add(pb::check_number_operator(exact, opt.n_max, pb::kFiniteDifferenceTol));
    report.add(pb::check_biorthogonality(fd, opt.n_max, pb::kAlgebraicTol));

    const double s = 0.5;
    const double c = p.center();
    auto gauss = [c, s](double x) { return std::exp(-(x - c) * (x - c) / (s * s)); };
    std::vector<pb::QuasiBasisPair> pairs{
        {[=](double x) { return Complex(gauss(x)); }, [=](double x) { return Complex((x - c) * gauss(x)); },
         "gauss_vs_x_gauss"},
        {[=](double x) { return Complex(gauss(x)); }, [=](double x) { return Complex((1.0 + (x - c) * (x - c)) * gauss(x)); },
         "gauss_vs_quadratic_gauss"}};
    auto quasi_sys = fd;
    quasi_sys.inner = inner_binding(p, s);
    report.add(pb::check_quasi_basis(quasi_sys, pairs, opt.quasi_n, 1e-6).check);

    std::vector<GridFunction> tests;
    for (double shift : {-1.0, 0.0, 1.0})
        tests.push_back(sample(fine_grid, [&](double x) {
            const double t = (x - c - shift * p.sigma()) / p.sigma();
            return std::exp(-t * t);
        }));
    report.add(pb::check_theta_conjugacy(fine, theta_operator(p), opt.n_max, tests, pb::kFiniteDifferenceTol));

    const bool zero = p.market.beta_is_zero();
    const auto growth = pb::check_norm_growth(
        fd, opt.norm_n, zero ? pb::NormGrowth::constant_one : pb::NormGrowth::strictly_increasing,
        [p](int n) { return norm_product(p, n); }, zero ? 1e-10 : 1e-8);
    report.add(growth.check);

    const GridSpec eigen_grid{c - 8.0 * p.sigma(), c + 8.0 * p.sigma(), 16001};
    report.add(pb::CheckResult::make("eigen_equations", harmonic_eigen_residual(p, eigen_grid, std::min(opt.n_max, 10)),
                                     1e-5));
    return report;
}

pb::DiagnosticReport diagnose(const barrier::BarrierParams& p, const Options& opt) {
    using namespace barrier;
    p.validate();
    pb::DiagnosticReport report;
    report.params_echo = market_echo(p.market);
    report.params_echo["model"] = "barrier";
    report.params_echo["a"] = p.a;
    report.params_echo["b"] = p.b;
    report.params_echo["knobs"] = to_json(opt);
    note_beta_zero(report, p.market);

    const auto sys = ladder_system(p);
    report.add(pb::check_vacua(sys, pb::kAlgebraicTol));
    report.add(pb::check_ladder(sys, opt.n_max, 1e-12, "ladder_spectral"));
    report.add(pb::check_number_operator(sys, opt.n_max, 1e-10));
    report.add(pb::check_biorthogonality(sys, opt.n_max, pb::kAlgebraicTol));

    const auto f = [p](double x) { return Phi(p, 0, x) + 0.5 * Phi(p, 2, x); };
    const auto g = [p](double x) { return Phi(p, 1, x) - 0.25 * Phi(p, 3, x) + 0.1 * Phi(p, 0, x); };
    std::vector<pb::QuasiBasisPair> pairs{
        {[=](double x) { return Complex(f(x)); }, [=](double x) { return Complex(g(x)); }, "trig_pair"},
        {[=](double x) { return Complex(f(x)); }, [=](double x) { return Complex(f(x)); }, "trig_self"}};
    report.add(pb::check_quasi_basis(sys, pairs, opt.quasi_n, 1e-6).check);

    std::vector<SpectralVector> tests;
    for (int k = 0; k < 3; ++k) {
        auto v = SpectralVector::unit(k, Basis::phi);
        v.coeffs[std::size_t(k) + 2] = 0.5;
        tests.push_back(v);
    }
    report.add(pb::check_theta_conjugacy(sys, metric_operator(p), opt.n_max, tests, 1e-12));

    report.add(pb::CheckResult::make("riesz_bounds", riesz_bound_violation(p, 200), 1e-10));

    double identity = 0.0;
    for (int n = 0; n <= specialfn::kMaxDegree; ++n)
        identity = std::max(identity, std::abs(0.5 * p.sigma() * p.sigma() * p.rho(n) + p.delta_prime() -
                                               p.eigenvalue(n)) / p.eigenvalue(n));
    report.add(pb::CheckResult::make("spectral_differential_agreement", identity, 1e-12));

    report.add(pb::CheckResult::make("eigen_equations", barrier_eigen_residual(p, 1e-3, 2), 1e-5));

    // pass <=> residual >= 0.1, expressed as the best-fit correlation <= sqrt(1 - 0.1^2).
    const double residual = failed_factorization_residual(p);
    report.add(pb::CheckResult::make("failed_factorization_correlation", std::sqrt(1.0 - residual * residual),
                                     std::sqrt(1.0 - kFailedFactorizationFloor * kFailedFactorizationFloor)));
    report.notes.push_back("failed_factorization_residual = " + std::to_string(residual));
    return report;
}

}  // namespace pbk::diagnostics
