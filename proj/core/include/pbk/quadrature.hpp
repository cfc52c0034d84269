#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace pbk {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(double)>;

}  // namespace pbk

namespace pbk::quadrature {

enum class RuleKind { gauss_hermite, gauss_legendre };

struct Interval {
    double a;
    double b;
};

/**
 * An immutable quadrature rule in dx-measure form: the integral of h over the
 * rule's domain is approximated by sum_i weights[i] * h(nodes[i]).
 *
 * Hermite rules already carry the e^{u^2} compensation and the affine map
 * x = center + scale * u, so a Gaussian of width `scale` centred at `center`
 * is integrated exactly by the underlying Gauss-Hermite weight.
 */
struct QuadratureRule {
    RuleKind kind;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::optional<Interval> interval;  // set for gauss_legendre
    double center = 0.0;               // gauss_hermite affine map
    double scale = 1.0;
};

/// Gauss-Legendre rule with n nodes on (a, b). Requires a < b and n >= 1.
QuadratureRule gauss_legendre(int n, Interval interval);

/// Gauss-Hermite rule with n nodes for the weight exp(-((x - center)/scale)^2).
QuadratureRule gauss_hermite(int n, double center = 0.0, double scale = 1.0);

/// Describes a family of rules of one kind and mapping, indexed by node count.
struct RuleSpec {
    RuleKind kind = RuleKind::gauss_legendre;
    Interval interval{0.0, 1.0};
    double center = 0.0;
    double scale = 1.0;

    static RuleSpec legendre(double a, double b) { return {RuleKind::gauss_legendre, {a, b}, 0.0, 1.0}; }
    static RuleSpec hermite(double center, double scale) {
        return {RuleKind::gauss_hermite, {0.0, 0.0}, center, scale};
    }

    QuadratureRule rule(int n) const;
};

inline constexpr int kAdaptiveStartNodes = 64;
inline constexpr int kAdaptiveMaxNodes = 4096;

/// sum_i w_i conj(f(x_i)) g(x_i). Throws NonFiniteSample on NaN/inf samples.
Complex inner_product(const ComplexFn& f, const ComplexFn& g, const QuadratureRule& rule);

/// sum_i w_i h(x_i).
Complex integrate(const ComplexFn& h, const QuadratureRule& rule);

struct AdaptiveResult {
    Complex value;
    int nodes = 0;
    std::vector<Complex> estimates;  // one per node count tried, 64, 128, ...
};

/**
 * Doubles the node count from 64 up to 4096 until successive estimates agree:
 * |I_2n - I_n| <= rel_tol * max(|I_2n|, sum_i w_i |conj(f) g|(x_i)).
 * The absolute-integrand mass in the denominator keeps integrals that
 * vanish exactly (orthogonality) convergent.
 *
 * Throws InvalidInput for rel_tol < 1e-13 and QuadratureNonConvergence at the cap.
 */
AdaptiveResult adaptive_inner_product_detailed(const ComplexFn& f, const ComplexFn& g,
                                               const RuleSpec& spec, double rel_tol);

Complex adaptive_inner_product(const ComplexFn& f, const ComplexFn& g, const RuleSpec& spec,
                               double rel_tol);

/// Adaptive integral of h, same policy as adaptive_inner_product with f = 1.
Complex adaptive_integrate(const ComplexFn& h, const RuleSpec& spec, double rel_tol);

}  // namespace pbk::quadrature
