#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "pbk/grid.hpp"
#include "pbk/market.hpp"
#include "pbk/pb_core.hpp"
#include "pbk/quadrature.hpp"
#include "pbk/specialfn.hpp"

namespace pbk::barrier {

/// Double knock-out model on the log-price interval (a, b).
struct BarrierParams {
    MarketParams market;
    double a = 0.0;
    double b = std::numbers::pi;

    void validate() const;

    double sigma() const { return market.sigma(); }
    double beta() const { return market.beta(); }
    double width() const { return b - a; }
    /// n pi / (b - a).
    double lambda(int n) const { return n * std::numbers::pi / width(); }
    /// sigma^2 lambda_{n+1}^2 / 2 + gamma.
    double eigenvalue(int n) const;
    /// lambda_{n+1}^2 - lambda_1^2 = pi^2 n (n + 2) / (b - a)^2.
    double rho(int n) const;
    /// sigma^2 pi^2 / (2 (b - a)^2).
    double k2() const;
    /// gamma + sigma^2 lambda_1^2 / 2, so that eigenvalue(n) = sigma^2 rho(n) / 2 + delta_prime().
    double delta_prime() const;

    BarrierParams flipped_beta() const { return {market.flipped_beta(), a, b}; }
};

void require_index(int n);

/// sqrt(2/(b-a)) sin(lambda_{n+1}(x - a)) on (a, b), zero outside.
template <class T>
T Phi(const BarrierParams& p, int n, const T& x) {
    const double xv = value_of(x);
    if (!(xv > p.a && xv < p.b)) return T(0.0);
    using std::sin;
    return std::sqrt(2.0 / p.width()) * sin(p.lambda(n + 1) * (x - p.a));
}

template <class T>
T varphi(const BarrierParams& p, int n, const T& x) {
    using std::exp;
    return exp(p.beta() * x) * Phi(p, n, x);
}

template <class T>
T psi(const BarrierParams& p, int n, const T& x) {
    using std::exp;
    return exp(-p.beta() * x) * Phi(p, n, x);
}

ComplexFn Phi_fn(const BarrierParams& p, int n);
ComplexFn varphi_fn(const BarrierParams& p, int n);
ComplexFn psi_fn(const BarrierParams& p, int n);

/// Interior grid [a + 2h, b - 2h] with h = (b - a) / (points + 3).
GridSpec interior_grid(const BarrierParams& p, int points);
/// Closed grid [a, b] with spacing h_fraction * (b - a).
GridSpec closed_grid(const BarrierParams& p, double h_fraction);

/// A = d/dx - lambda_1 cot(lambda_1 (x - a)) - beta. Rejects grids within 2h of a barrier.
GridFunction apply_A_naive(const BarrierParams& p, const GridFunction& f);
/// B = -d/dx - lambda_1 cot(lambda_1 (x - a)) + beta. Same restriction.
GridFunction apply_B_naive(const BarrierParams& p, const GridFunction& f);

/// min_c ||u - c v|| / ||u|| on the common sub-grid of u and v.
double projection_residual(const GridFunction& u, const GridFunction& v);

/// min_c ||B_naive phi_0 - c phi_1|| / ||B_naive phi_0|| on the interior grid.
/// Dropping the end strips biases the value by O(h), hence the fine default grid.
double failed_factorization_residual(const BarrierParams& p, int points = 32001);

/// Inside (a, b) the potential vanishes: -sigma^2/2 f'' + sigma^2 beta f' + r f.
template <class Rep>
Rep apply_H_eff(const BarrierParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return (-0.5 * s2) * second_derivative(f) + (s2 * p.beta()) * derivative(f) + p.market.r() * f;
}

template <class Rep>
Rep apply_H_eff_dag(const BarrierParams& p, const Rep& f) {
    const double s2 = p.sigma() * p.sigma();
    return (-0.5 * s2) * second_derivative(f) - (s2 * p.beta()) * derivative(f) + p.market.r() * f;
}

/// Multiplication by e^{2 beta x}.
template <class Rep>
Rep apply_S_phi(const BarrierParams& p, const Rep& f) {
    const double b = p.beta();
    return multiply(f, [b](const auto& x) { using std::exp; return exp(2.0 * b * x); });
}

/// Multiplication by e^{-2 beta x}.
template <class Rep>
Rep apply_S_psi(const BarrierParams& p, const Rep& f) {
    const double b = p.beta();
    return multiply(f, [b](const auto& x) { using std::exp; return exp(-2.0 * b * x); });
}

ComplexFn apply_S_phi(const BarrierParams& p, ComplexFn f);
ComplexFn apply_S_psi(const BarrierParams& p, ComplexFn f);

enum class Basis { phi, psi };

inline constexpr int kDefaultCapacity = 128;

/**
 * Truncated expansion f = sum_{n <= n_max} coeffs[n] e_n, with e_n = varphi_n
 * (Basis::phi, coeffs = <Psi_n, f>) or e_n = Psi_n (Basis::psi,
 * coeffs = <varphi_n, f>). discarded_tail records the largest coefficient a
 * raising map pushed past n_max.
 */
struct SpectralVector {
    std::vector<Complex> coeffs;
    Basis basis = Basis::phi;
    double discarded_tail = 0.0;

    int n_max() const { return int(coeffs.size()) - 1; }

    static SpectralVector unit(int n, Basis basis, int capacity = kDefaultCapacity);
};

SpectralVector operator+(const SpectralVector& u, const SpectralVector& v);
SpectralVector operator-(const SpectralVector& u, const SpectralVector& v);
SpectralVector operator*(double s, SpectralVector v);
SpectralVector operator*(Complex s, SpectralVector v);

/// l2 norm of the coefficients.
double norm(const SpectralVector& v);
double distance(const SpectralVector& u, const SpectralVector& v);
/// Dual pairing sum conj(u_n) v_n; requires one phi- and one psi-expansion.
Complex inner(const SpectralVector& u, const SpectralVector& v);

SpectralVector apply_A_hat(const BarrierParams& p, const SpectralVector& v);
SpectralVector apply_B_hat(const BarrierParams& p, const SpectralVector& v);
SpectralVector apply_A_hat_dag(const BarrierParams& p, const SpectralVector& v);
SpectralVector apply_B_hat_dag(const BarrierParams& p, const SpectralVector& v);

/// Basis swap: Psi-expansion to the varphi-expansion with the same coefficients.
SpectralVector apply_S_phi(const BarrierParams& p, const SpectralVector& v);
SpectralVector apply_S_psi(const BarrierParams& p, const SpectralVector& v);

inline constexpr double kInnerTol = 1e-12;

/// <f, g>_1 on (a, b) by adaptive Gauss-Legendre.
Complex inner_1(const BarrierParams& p, const ComplexFn& f, const ComplexFn& g);

/// Coefficients <Psi_n, f>_1, n <= n_max.
SpectralVector project(const BarrierParams& p, const ComplexFn& f, int n_max = kDefaultCapacity);
/// Coefficients <varphi_n, f>_1, n <= n_max.
SpectralVector project_dual(const BarrierParams& p, const ComplexFn& f, int n_max = kDefaultCapacity);

ComplexFn synthesize(const BarrierParams& p, const SpectralVector& v);
GridFunction synthesize(const BarrierParams& p, const SpectralVector& v, const GridSpec& grid);

/// Spectral ladder maps on unit coefficient vectors with eps_n = rho_n.
pb::LadderSystem<SpectralVector> ladder_system(const BarrierParams& p, int capacity = kDefaultCapacity);

pb::MetricOperator<SpectralVector> metric_operator(const BarrierParams& p);

}  // namespace pbk::barrier
