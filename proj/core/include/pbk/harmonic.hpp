#pragma once

#include <cmath>
#include <numbers>

#include "pbk/grid.hpp"
#include "pbk/market.hpp"
#include "pbk/pb_core.hpp"
#include "pbk/quadrature.hpp"
#include "pbk/specialfn.hpp"

namespace pbk::harmonic {

inline constexpr int kMaxIndex = 60;

/// Market plus the free shift w of W(x) = x/sigma^2 + w.
struct HarmonicParams {
    MarketParams market;
    double w = 0.0;

    double sigma() const { return market.sigma(); }
    double beta() const { return market.beta(); }
    /// sigma^2 beta^2 / 2 + r; equal to gamma.
    double delta() const;
    /// sigma / sqrt(2), the prefactor of every ladder operator.
    double k() const { return market.sigma() / std::numbers::sqrt2; }
    /// Centre -sigma^2 w of the eigenfunction envelope.
    double center() const { return -market.sigma() * market.sigma() * w; }
    double eigenvalue(int n) const { return n + delta(); }

    HarmonicParams flipped_beta() const { return {market.flipped_beta(), w}; }
};

/// [center - 8 sigma, center + 8 sigma] with 8001 points.
GridSpec default_grid(const HarmonicParams& p, int points = 8001);

void require_index(int n);

template <class T>
T Phi(const HarmonicParams& p, int n, const T& x) {
    const double s = p.sigma();
    return (1.0 / std::sqrt(s)) * specialfn::hermite_function(n, x * (1.0 / s) + s * p.w);
}

template <class T>
T varphi(const HarmonicParams& p, int n, const T& x) {
    using std::exp;
    return exp(p.beta() * x) * Phi(p, n, x);
}

template <class T>
T psi(const HarmonicParams& p, int n, const T& x) {
    using std::exp;
    return exp(-p.beta() * x) * Phi(p, n, x);
}

ComplexFn Phi_fn(const HarmonicParams& p, int n);
ComplexFn varphi_fn(const HarmonicParams& p, int n);
ComplexFn psi_fn(const HarmonicParams& p, int n);

// Differential operators, generic over GridFunction (central differences)
// and JetGridFunction (exact derivatives).

template <class Rep>
Rep apply_A(const HarmonicParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return p.k() * (derivative(f) + affine_multiply(f, 1.0 / s2, p.w - p.beta()));
}

template <class Rep>
Rep apply_B(const HarmonicParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return p.k() * (affine_multiply(f, 1.0 / s2, p.w + p.beta()) - derivative(f));
}

template <class Rep>
Rep apply_A_dag(const HarmonicParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return p.k() * (affine_multiply(f, 1.0 / s2, p.w - p.beta()) - derivative(f));
}

template <class Rep>
Rep apply_B_dag(const HarmonicParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return p.k() * (derivative(f) + affine_multiply(f, 1.0 / s2, p.w + p.beta()));
}

template <class Rep>
Rep apply_c(const HarmonicParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return p.k() * (derivative(f) + affine_multiply(f, 1.0 / s2, p.w));
}

template <class Rep>
Rep apply_c_dag(const HarmonicParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return p.k() * (affine_multiply(f, 1.0 / s2, p.w) - derivative(f));
}

/// V(x) = (sigma^2/2)(x/sigma^2 + w)^2 - 1/2.
template <class T>
T potential(const HarmonicParams& p, const T& x) {
    const double s2 = p.sigma() * p.sigma();
    const T W = x * (1.0 / s2) + p.w;
    return (0.5 * s2) * (W * W) - 0.5;
}

/// -sigma^2/2 f'' + drift f' + c0 f, optionally plus V f. The drift sigma^2 beta equals sigma^2/2 - r.
template <class Rep>
Rep second_order(const HarmonicParams& p, const Rep& f, double drift, double c0, bool with_potential) {
    const double s2 = p.sigma() * p.sigma();
    Rep out = (-0.5 * s2) * second_derivative(f) + drift * derivative(f) + c0 * f;
    if (with_potential) out = out + multiply(f, [&p](const auto& x) { return potential(p, x); });
    return out;
}

template <class Rep>
Rep apply_H_BS(const HarmonicParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return second_order(p, f, s2 * p.beta(), p.market.r(), false);
}

template <class Rep>
Rep apply_H_eff(const HarmonicParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return second_order(p, f, s2 * p.beta(), p.market.r(), true);
}

/// H_eff with the drift sign flipped.
template <class Rep>
Rep apply_H_eff_dag(const HarmonicParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return second_order(p, f, -s2 * p.beta(), p.market.r(), true);
}

template <class Rep>
Rep apply_h_BS(const HarmonicParams& p, const Rep& f) {
    return second_order(p, f, 0.0, p.market.gamma(), false);
}

template <class Rep>
Rep apply_h_eff(const HarmonicParams& p, const Rep& f) {
    return second_order(p, f, 0.0, p.market.gamma(), true);
}

/// Multiplication by e^{-beta x}.
template <class Rep>
Rep apply_rho(const HarmonicParams& p, const Rep& f) {
    const double b = p.beta();
    return multiply(f, [b](const auto& x) { using std::exp; return exp(-b * x); });
}

/// Multiplication by e^{beta x}.
template <class Rep>
Rep apply_rho_inv(const HarmonicParams& p, const Rep& f) {
    const double b = p.beta();
    return multiply(f, [b](const auto& x) { using std::exp; return exp(b * x); });
}

/// Multiplication by e^{-2 beta x}.
template <class Rep>
Rep apply_Theta(const HarmonicParams& p, const Rep& f) {
    const double b = p.beta();
    return multiply(f, [b](const auto& x) { using std::exp; return exp(-2.0 * b * x); });
}

template <class Rep>
Rep apply_Theta_inv(const HarmonicParams& p, const Rep& f) {
    const double b = p.beta();
    return multiply(f, [b](const auto& x) { using std::exp; return exp(2.0 * b * x); });
}

/// ||varphi_n||^2 = e^{beta^2 sigma^2 - 2 beta w sigma^2} L_n(-2 beta^2 sigma^2); psi uses -beta.
double varphi_norm_sq(const HarmonicParams& p, int n);
double psi_norm_sq(const HarmonicParams& p, int n);
/// ||varphi_n|| ||Psi_n|| = e^{beta^2 sigma^2} L_n(-2 beta^2 sigma^2).
double norm_product(const HarmonicParams& p, int n);

inline constexpr double kInnerTol = 1e-12;

/// Adaptive Gauss-Hermite pairing whose weight has width `scale` around the envelope centre.
std::function<Complex(const ComplexFn&, const ComplexFn&)> inner_binding(const HarmonicParams& p,
                                                                        double scale);

/// Ladder maps by central differences on `grid`.
pb::LadderSystem<GridFunction> ladder_system_fd(const HarmonicParams& p, const GridSpec& grid);
/// Same maps with exact derivative jets.
pb::LadderSystem<JetGridFunction> ladder_system_exact(const HarmonicParams& p, const GridSpec& grid);

pb::MetricOperator<GridFunction> theta_operator(const HarmonicParams& p);

}  // namespace pbk::harmonic
