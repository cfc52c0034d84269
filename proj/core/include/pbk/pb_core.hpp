#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pbk/errors.hpp"
#include "pbk/quadrature.hpp"

namespace pbk::pb {

/// One row of a diagnostic report. pass <=> max_residual <= tolerance.
struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    static CheckResult make(std::string name, double residual, double tolerance) {
        const bool ok = std::isfinite(residual) && residual <= tolerance;
        return {std::move(name), residual, tolerance, ok};
    }
};

struct DiagnosticReport {
    std::vector<CheckResult> checks;
    nlohmann::json params_echo = nlohmann::json::object();
    std::vector<std::string> notes;

    void add(CheckResult c) { checks.push_back(std::move(c)); }
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
};

void to_json(nlohmann::json& j, const CheckResult& c);
void to_json(nlohmann::json& j, const DiagnosticReport& r);

/// Strictly increasing eigenvalue sequence with eps_0 = 0 (linear case: eps_n = n).
struct EigenSequence {
    std::function<double(int)> value;
    bool strictly_increasing = true;

    static EigenSequence linear() {
        return {[](int n) { return double(n); }, true};
    }
};

/// Representation types the harness can measure: a norm, a distance and a pairing.
template <class V>
concept HarnessVector = requires(const V& a, const V& b, double s) {
    { norm(a) } -> std::convertible_to<double>;
    { distance(a, b) } -> std::convertible_to<double>;
    { inner(a, b) } -> std::convertible_to<std::complex<double>>;
    { s * a } -> std::convertible_to<V>;
};

/**
 * Everything the harness needs about one model: the two families as closed
 * form functions (for L^2 inner products) and in the representation V on
 * which the ladder maps act (finite-difference grid, exact jets, or
 * spectral coefficients).
 */
template <HarnessVector V>
struct LadderSystem {
    std::function<ComplexFn(int)> phi_fn;
    std::function<ComplexFn(int)> psi_fn;
    std::function<V(int)> phi;
    std::function<V(int)> psi;
    std::function<V(const V&)> lower_a;
    std::function<V(const V&)> raise_b;
    std::function<V(const V&)> lower_b_dag;
    std::function<V(const V&)> raise_a_dag;
    EigenSequence eigens;
    std::function<Complex(const ComplexFn&, const ComplexFn&)> inner;
};

/// Positive invertible Theta with Psi_n = Theta phi_n.
template <HarnessVector V>
struct MetricOperator {
    std::function<V(const V&)> apply;
    std::function<V(const V&)> apply_inverse;
    std::string label;
};

inline constexpr double kFiniteDifferenceTol = 1e-6;
inline constexpr double kAlgebraicTol = 1e-10;

namespace detail {

template <class V>
double relative(const V& residual_of, double reference_norm) {
    return norm(residual_of) / reference_norm;
}

template <class V>
double checked_norm(const V& v, const char* what) {
    const double n = norm(v);
    if (!(n > 0.0)) throw DegenerateInput(std::string(what) + " has zero norm");
    return n;
}

}  // namespace detail

/// ||a phi_0|| / ||phi_0|| and ||b^dag Psi_0|| / ||Psi_0||; reports the larger.
template <HarnessVector V>
CheckResult check_vacua(const LadderSystem<V>& sys, double tol = kFiniteDifferenceTol,
                        std::string name = "vacua") {
    const V phi0 = sys.phi(0);
    const V psi0 = sys.psi(0);
    const double np = detail::checked_norm(phi0, "phi_0");
    const double nq = detail::checked_norm(psi0, "Psi_0");
    const double r = std::max(norm(sys.lower_a(phi0)) / np, norm(sys.lower_b_dag(psi0)) / nq);
    return CheckResult::make(std::move(name), r, tol);
}

/**
 * The four ladder relations for n <= n_max:
 *   b phi_n = sqrt(eps_{n+1}) phi_{n+1},     a phi_n = sqrt(eps_n) phi_{n-1},
 *   a^dag Psi_n = sqrt(eps_{n+1}) Psi_{n+1}, b^dag Psi_n = sqrt(eps_n) Psi_{n-1}.
 * Residuals are relative to the norm of the target family member
 * (of phi_n / Psi_n when the target is zero).
 */
template <HarnessVector V>
CheckResult check_ladder(const LadderSystem<V>& sys, int n_max, double tol,
                         std::string name = "ladder") {
    if (n_max < 0 || n_max > 40) throw InvalidInput("check_ladder: n_max must lie in [0, 40]");
    double worst = 0.0;
    std::vector<V> phis, psis;
    for (int n = 0; n <= n_max + 1; ++n) {
        phis.push_back(sys.phi(n));
        psis.push_back(sys.psi(n));
    }
    for (int n = 0; n <= n_max; ++n) {
        const double up = std::sqrt(sys.eigens.value(n + 1));
        worst = std::max(worst, distance(sys.raise_b(phis[n]), up * phis[n + 1]) / norm(phis[n + 1]));
        worst = std::max(worst, distance(sys.raise_a_dag(psis[n]), up * psis[n + 1]) / norm(psis[n + 1]));
        if (n == 0) {
            worst = std::max(worst, norm(sys.lower_a(phis[0])) / norm(phis[0]));
            worst = std::max(worst, norm(sys.lower_b_dag(psis[0])) / norm(psis[0]));
        } else {
            const double down = std::sqrt(sys.eigens.value(n));
            worst = std::max(worst, distance(sys.lower_a(phis[n]), down * phis[n - 1]) / norm(phis[n - 1]));
            worst = std::max(worst,
                             distance(sys.lower_b_dag(psis[n]), down * psis[n - 1]) / norm(psis[n - 1]));
        }
    }
    return CheckResult::make(std::move(name), worst, tol);
}

/// ||(ba) phi_n - eps_n phi_n|| / ||phi_n|| and ||(a^dag b^dag) Psi_n - eps_n Psi_n|| / ||Psi_n||.
template <HarnessVector V>
CheckResult check_number_operator(const LadderSystem<V>& sys, int n_max, double tol,
                                  std::string name = "number_operator") {
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double e = sys.eigens.value(n);
        const V p = sys.phi(n);
        const V q = sys.psi(n);
        worst = std::max(worst, distance(sys.raise_b(sys.lower_a(p)), e * p) / norm(p));
        worst = std::max(worst, distance(sys.raise_a_dag(sys.lower_b_dag(q)), e * q) / norm(q));
    }
    return CheckResult::make(std::move(name), worst, tol);
}

/// max over n, m <= n_max of |<phi_n, Psi_m> - delta_nm|.
template <HarnessVector V>
CheckResult check_biorthogonality(const LadderSystem<V>& sys, int n_max, double tol = kAlgebraicTol,
                                  std::string name = "biorthogonality") {
    if (n_max < 0 || n_max > 40) throw InvalidInput("check_biorthogonality: n_max must lie in [0, 40]");
    std::vector<ComplexFn> phis, psis;
    for (int n = 0; n <= n_max; ++n) {
        phis.push_back(sys.phi_fn(n));
        psis.push_back(sys.psi_fn(n));
    }
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n)
        for (int m = 0; m <= n_max; ++m)
            worst = std::max(worst, std::abs(sys.inner(phis[n], psis[m]) - (n == m ? 1.0 : 0.0)));
    return CheckResult::make(std::move(name), worst, tol);
}

struct QuasiBasisPair {
    ComplexFn f;
    ComplexFn g;
    std::string label;
};

struct QuasiBasisTrace {
    std::string label;
    Complex reference;                 // <f, g> by direct quadrature
    std::vector<Complex> partial;      // S_N = sum_{n<=N} <f, phi_n><Psi_n, g>
    std::vector<Complex> mirrored;     // sum_{n<=N} <f, Psi_n><phi_n, g>

    double error(int n) const {
        return std::max(std::abs(partial[n] - reference), std::abs(mirrored[n] - reference));
    }
};

struct QuasiBasisResult {
    CheckResult check;
    std::vector<QuasiBasisTrace> traces;
};

/// Weak resolution of the identity on the supplied test pairs, truncated at n_max.
template <HarnessVector V>
QuasiBasisResult check_quasi_basis(const LadderSystem<V>& sys, const std::vector<QuasiBasisPair>& pairs,
                                   int n_max, double tol, std::string name = "quasi_basis") {
    QuasiBasisResult out;
    std::vector<ComplexFn> phis, psis;
    for (int n = 0; n <= n_max; ++n) {
        phis.push_back(sys.phi_fn(n));
        psis.push_back(sys.psi_fn(n));
    }
    double worst = 0.0;
    for (const auto& pr : pairs) {
        QuasiBasisTrace t{pr.label, sys.inner(pr.f, pr.g), {}, {}};
        Complex s{}, m{};
        for (int n = 0; n <= n_max; ++n) {
            s += sys.inner(pr.f, phis[n]) * sys.inner(psis[n], pr.g);
            m += sys.inner(pr.f, psis[n]) * sys.inner(phis[n], pr.g);
            t.partial.push_back(s);
            t.mirrored.push_back(m);
        }
        worst = std::max(worst, t.error(n_max));
        out.traces.push_back(std::move(t));
    }
    out.check = CheckResult::make(std::move(name), worst, tol);
    return out;
}

/**
 * Theta-conjugacy: Psi_n = Theta phi_n (n <= n_max), positivity <f, Theta f> > 0
 * and the intertwining Theta N f = N^dag Theta f on the test vectors.
 * Positivity failures are reported as an infinite residual.
 */
template <HarnessVector V>
CheckResult check_theta_conjugacy(const LadderSystem<V>& sys, const MetricOperator<V>& theta, int n_max,
                                  const std::vector<V>& test_vectors, double tol,
                                  std::string name = "theta_conjugacy") {
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const V q = sys.psi(n);
        worst = std::max(worst, distance(theta.apply(sys.phi(n)), q) / norm(q));
    }
    for (const V& f : test_vectors) {
        const double fn = detail::checked_norm(f, "test vector");
        const V tf = theta.apply(f);
        const Complex pos = inner(f, tf);
        if (!(pos.real() > 0.0)) worst = INFINITY;
        worst = std::max(worst, std::abs(pos.imag()) / (fn * fn));
        const V lhs = theta.apply(sys.raise_b(sys.lower_a(f)));
        const V rhs = sys.raise_a_dag(sys.lower_b_dag(tf));
        worst = std::max(worst, distance(lhs, rhs) / std::max(norm(lhs), norm(tf)));
        worst = std::max(worst, distance(theta.apply_inverse(tf), f) / fn);
    }
    return CheckResult::make(std::move(name), worst, tol);
}

enum class NormGrowth { constant_one, strictly_increasing };

struct NormGrowthResult {
    CheckResult check;
    std::vector<double> products;  // ||phi_n|| * ||Psi_n||
};

/**
 * Computes ||phi_n|| ||Psi_n|| for n <= n_max by quadrature. The residual is
 * the worst relative deviation from `closed_form` (when given) or from 1
 * (constant_one); a strictly_increasing expectation that is violated
 * reports an infinite residual.
 */
template <HarnessVector V>
NormGrowthResult check_norm_growth(const LadderSystem<V>& sys, int n_max, NormGrowth expect,
                                   const std::function<double(int)>& closed_form, double tol,
                                   std::string name = "norm_growth") {
    if (n_max < 0 || n_max > 60) throw InvalidInput("check_norm_growth: n_max must lie in [0, 60]");
    NormGrowthResult out;
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const auto p = sys.phi_fn(n);
        const auto q = sys.psi_fn(n);
        const double prod = std::sqrt(std::abs(sys.inner(p, p)) * std::abs(sys.inner(q, q)));
        out.products.push_back(prod);
        const double target = closed_form ? closed_form(n) : 1.0;
        if (closed_form || expect == NormGrowth::constant_one)
            worst = std::max(worst, std::abs(prod - target) / target);
        if (expect == NormGrowth::strictly_increasing && n > 0 && !(prod > out.products[n - 1]))
            worst = INFINITY;
    }
    out.check = CheckResult::make(std::move(name), worst, tol);
    return out;
}

}  // namespace pbk::pb
