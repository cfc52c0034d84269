#include "pbk/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "pbk/errors.hpp"

namespace pbk::quadrature {
namespace {

// Reference rule on the canonical domain: (-1, 1) for Legendre, R for Hermite (dx-measure weights).
struct Reference {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Reference make_legendre(int n) {
    Reference ref;
    ref.nodes.resize(n);
    ref.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Newton from the cosine guess converges to the i-th largest root.
        ref.nodes[n - 1 - i] = x;
        ref.nodes[i] = -x;
        ref.weights[n - 1 - i] = w;
        ref.weights[i] = w;
    }
    if (n % 2 == 1) ref.nodes[n / 2] = 0.0;
    return ref;
}

// Orthonormal Hermite polynomials p_k (weight e^{-u^2}) evaluated with rescaling.
struct ScaledHermite {
    double p_n;       // p_n(u) * 10^{-shift}
    double p_nm1;     // p_{n-1}(u) * 10^{-shift}
    double log_sum;   // log sum_{k<n} p_k(u)^2, unscaled
};

ScaledHermite scaled_hermite(int n, double u) {
    constexpr double kBig = 1e150;
    constexpr double kLogBig = 150.0 * std::numbers::ln10;
    double pm1 = 0.0;
    double p = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
    double sum = 0.0;
    double log_scale = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += p * p;  // p_k
        const double next = std::sqrt(2.0 / (k + 1)) * u * p - std::sqrt(double(k) / (k + 1)) * pm1;
        pm1 = p;
        p = next;
        if (std::abs(p) > kBig) {
            p /= kBig;
            pm1 /= kBig;
            sum /= kBig * kBig;
            log_scale += kLogBig;
        }
    }
    return {p, pm1, std::log(sum) + 2.0 * log_scale};
}

Reference make_hermite(int n) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int k = 0; k + 1 < n; ++k) sub[k] = std::sqrt((k + 1) / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    Eigen::VectorXd roots = solver.eigenvalues();

    Reference ref;
    ref.nodes.resize(n);
    ref.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double u = roots[i];
        for (int it = 0; it < 3; ++it) {
            const auto h = scaled_hermite(n, u);
            const double du = h.p_n / (std::sqrt(2.0 * n) * h.p_nm1);
            u -= du;
            if (std::abs(du) < 1e-15 * std::max(1.0, std::abs(u))) break;
        }
        ref.nodes[i] = u;
    }
    for (int i = 0; i < n / 2; ++i) {
        const double u = 0.5 * (ref.nodes[n - 1 - i] - ref.nodes[i]);
        ref.nodes[i] = -u;
        ref.nodes[n - 1 - i] = u;
    }
    if (n % 2 == 1) ref.nodes[n / 2] = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = ref.nodes[i];
        ref.weights[i] = std::exp(u * u - scaled_hermite(n, u).log_sum);
    }
    return ref;
}

const Reference& cached(RuleKind kind, int n) {
    static std::mutex mutex;
    static std::map<std::pair<RuleKind, int>, std::unique_ptr<Reference>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{kind, n}];
    if (!slot)
        slot = std::make_unique<Reference>(kind == RuleKind::gauss_legendre ? make_legendre(n)
                                                                           : make_hermite(n));
    return *slot;
}

void check_finite(Complex v, double x) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NonFiniteSample(x);
}

struct Sum {
    Complex value;
    double mass;
};

Sum weighted_sum(const ComplexFn& f, const ComplexFn& g, const QuadratureRule& rule) {
    Complex s{0.0, 0.0};
    double mass = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const Complex fv = f ? f(x) : Complex{1.0, 0.0};
        check_finite(fv, x);
        const Complex gv = g(x);
        check_finite(gv, x);
        const Complex term = std::conj(fv) * gv;
        s += rule.weights[i] * term;
        mass += rule.weights[i] * std::abs(term);
    }
    return {s, mass};
}

}  // namespace

QuadratureRule gauss_legendre(int n, Interval interval) {
    if (n < 1) throw InvalidInput("gauss_legendre: need at least one node");
    if (!(interval.a < interval.b)) throw InvalidInput("gauss_legendre: interval requires a < b");
    const auto& ref = cached(RuleKind::gauss_legendre, n);
    const double mid = 0.5 * (interval.a + interval.b);
    const double half = 0.5 * (interval.b - interval.a);
    QuadratureRule rule{RuleKind::gauss_legendre, {}, {}, interval};
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * ref.nodes[i];
        rule.weights[i] = half * ref.weights[i];
    }
    return rule;
}

QuadratureRule gauss_hermite(int n, double center, double scale) {
    if (n < 1) throw InvalidInput("gauss_hermite: need at least one node");
    if (!(scale > 0.0)) throw InvalidInput("gauss_hermite: scale must be positive");
    const auto& ref = cached(RuleKind::gauss_hermite, n);
    QuadratureRule rule{RuleKind::gauss_hermite, {}, {}, std::nullopt, center, scale};
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = center + scale * ref.nodes[i];
        rule.weights[i] = scale * ref.weights[i];
    }
    return rule;
}

QuadratureRule RuleSpec::rule(int n) const {
    return kind == RuleKind::gauss_legendre ? gauss_legendre(n, interval)
                                            : gauss_hermite(n, center, scale);
}

Complex inner_product(const ComplexFn& f, const ComplexFn& g, const QuadratureRule& rule) {
    return weighted_sum(f, g, rule).value;
}

Complex integrate(const ComplexFn& h, const QuadratureRule& rule) {
    return weighted_sum(nullptr, h, rule).value;
}

AdaptiveResult adaptive_inner_product_detailed(const ComplexFn& f, const ComplexFn& g,
                                               const RuleSpec& spec, double rel_tol) {
    if (!(rel_tol >= 1e-13)) throw InvalidInput("adaptive quadrature: rel_tol must be >= 1e-13");
    AdaptiveResult result;
    Complex previous{};
    for (int n = kAdaptiveStartNodes; n <= kAdaptiveMaxNodes; n *= 2) {
        const auto s = weighted_sum(f, g, spec.rule(n));
        result.estimates.push_back(s.value);
        result.value = s.value;
        result.nodes = n;
        if (n > kAdaptiveStartNodes &&
            std::abs(s.value - previous) <= rel_tol * std::max(std::abs(s.value), s.mass))
            return result;
        previous = s.value;
    }
    const auto& e = result.estimates;
    throw QuadratureNonConvergence(e[e.size() - 2], e.back(), kAdaptiveMaxNodes);
}

Complex adaptive_inner_product(const ComplexFn& f, const ComplexFn& g, const RuleSpec& spec,
                               double rel_tol) {
    return adaptive_inner_product_detailed(f, g, spec, rel_tol).value;
}

Complex adaptive_integrate(const ComplexFn& h, const RuleSpec& spec, double rel_tol) {
    return adaptive_inner_product_detailed(nullptr, h, spec, rel_tol).value;
}

}  // namespace pbk::quadrature
