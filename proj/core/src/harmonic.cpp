#include "pbk/harmonic.hpp"

#include <string>

namespace pbk::harmonic {

double HarmonicParams::delta() const {
    const double s = market.sigma();
    const double b = market.beta();
    return 0.5 * s * s * b * b + market.r();
}

GridSpec default_grid(const HarmonicParams& p, int points) {
    const double c = p.center();
    return {c - 8.0 * p.sigma(), c + 8.0 * p.sigma(), points};
}

void require_index(int n) {
    if (n < 0 || n > kMaxIndex)
        throw InvalidInput("harmonic family index must lie in [0, 60], got " + std::to_string(n));
}

ComplexFn Phi_fn(const HarmonicParams& p, int n) {
    require_index(n);
    return [p, n](double x) { return Complex(Phi(p, n, x)); };
}

ComplexFn varphi_fn(const HarmonicParams& p, int n) {
    require_index(n);
    return [p, n](double x) { return Complex(varphi(p, n, x)); };
}

ComplexFn psi_fn(const HarmonicParams& p, int n) {
    require_index(n);
    return [p, n](double x) { return Complex(psi(p, n, x)); };
}

double varphi_norm_sq(const HarmonicParams& p, int n) {
    const double s2 = p.sigma() * p.sigma();
    const double b = p.beta();
    return std::exp(b * b * s2 - 2.0 * b * p.w * s2) * specialfn::laguerre(n, 0, -2.0 * b * b * s2);
}

double psi_norm_sq(const HarmonicParams& p, int n) { return varphi_norm_sq(p.flipped_beta(), n); }

double norm_product(const HarmonicParams& p, int n) {
    const double s2 = p.sigma() * p.sigma();
    const double b = p.beta();
    return std::exp(b * b * s2) * specialfn::laguerre(n, 0, -2.0 * b * b * s2);
}

std::function<Complex(const ComplexFn&, const ComplexFn&)> inner_binding(const HarmonicParams& p,
                                                                        double scale) {
    const auto spec = quadrature::RuleSpec::hermite(p.center(), scale);
    return [spec](const ComplexFn& f, const ComplexFn& g) {
        return quadrature::adaptive_inner_product(f, g, spec, kInnerTol);
    };
}

namespace {

template <class V, class SampleFn>
pb::LadderSystem<V> make_system(const HarmonicParams& p, SampleFn sampler) {
    pb::LadderSystem<V> sys;
    sys.phi_fn = [p](int n) { return varphi_fn(p, n); };
    sys.psi_fn = [p](int n) { return psi_fn(p, n); };
    sys.phi = [p, sampler](int n) {
        require_index(n);
        return sampler([p, n](const auto& x) { return varphi(p, n, x); });
    };
    sys.psi = [p, sampler](int n) {
        require_index(n);
        return sampler([p, n](const auto& x) { return psi(p, n, x); });
    };
    sys.lower_a = [p](const V& f) { return apply_A(p, f); };
    sys.raise_b = [p](const V& f) { return apply_B(p, f); };
    sys.lower_b_dag = [p](const V& f) { return apply_B_dag(p, f); };
    sys.raise_a_dag = [p](const V& f) { return apply_A_dag(p, f); };
    sys.eigens = pb::EigenSequence::linear();
    sys.inner = inner_binding(p, p.sigma());
    return sys;
}

}  // namespace

pb::LadderSystem<GridFunction> ladder_system_fd(const HarmonicParams& p, const GridSpec& grid) {
    grid.validate();
    return make_system<GridFunction>(p, [grid](const auto& fn) { return sample(grid, fn); });
}

pb::LadderSystem<JetGridFunction> ladder_system_exact(const HarmonicParams& p, const GridSpec& grid) {
    grid.validate();
    return make_system<JetGridFunction>(p, [grid](const auto& fn) { return sample_jets(grid, fn); });
}

pb::MetricOperator<GridFunction> theta_operator(const HarmonicParams& p) {
    return {[p](const GridFunction& f) { return apply_Theta(p, f); },
            [p](const GridFunction& f) { return apply_Theta_inv(p, f); }, "Theta = exp(-2 beta x)"};
}

}  // namespace pbk::harmonic
