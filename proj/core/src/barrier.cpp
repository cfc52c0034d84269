#include "pbk/barrier.hpp"

#include <algorithm>
#include <string>

namespace pbk::barrier {

void BarrierParams::validate() const {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b)) throw InvalidInput("barrier model requires a < b");
}

double BarrierParams::eigenvalue(int n) const {
    const double l = lambda(n + 1);
    return 0.5 * sigma() * sigma() * l * l + market.gamma();
}

double BarrierParams::rho(int n) const {
    const double w = width();
    return std::numbers::pi * std::numbers::pi * n * (n + 2.0) / (w * w);
}

double BarrierParams::k2() const {
    const double w = width();
    return sigma() * sigma() * std::numbers::pi * std::numbers::pi / (2.0 * w * w);
}

double BarrierParams::delta_prime() const {
    const double l = lambda(1);
    return market.gamma() + 0.5 * sigma() * sigma() * l * l;
}

void require_index(int n) {
    if (n < 0 || n > specialfn::kMaxDegree)
        throw InvalidInput("barrier family index must lie in [0, 200], got " + std::to_string(n));
}

ComplexFn Phi_fn(const BarrierParams& p, int n) {
    require_index(n);
    return [p, n](double x) { return Complex(Phi(p, n, x)); };
}

ComplexFn varphi_fn(const BarrierParams& p, int n) {
    require_index(n);
    return [p, n](double x) { return Complex(varphi(p, n, x)); };
}

ComplexFn psi_fn(const BarrierParams& p, int n) {
    require_index(n);
    return [p, n](double x) { return Complex(psi(p, n, x)); };
}

GridSpec interior_grid(const BarrierParams& p, int points) {
    p.validate();
    const double h = p.width() / (points + 3);
    return {p.a + 2.0 * h, p.b - 2.0 * h, points};
}

GridSpec closed_grid(const BarrierParams& p, double h_fraction) {
    p.validate();
    if (!(h_fraction > 0.0 && h_fraction <= 1.0 / (kMinGridSamples - 1)))
        throw InvalidInput("closed_grid: h_fraction out of range");
    return {p.a, p.b, int(std::lround(1.0 / h_fraction)) + 1};
}

namespace {

void require_interior(const BarrierParams& p, const GridFunction& f) {
    const double margin = 2.0 * f.dx() * (1.0 - 1e-9);
    if (f.x0() - p.a < margin || p.b - f.x(f.size() - 1) < margin)
        throw InvalidInput("naive barrier operators need the grid at least 2h inside (a, b)");
}

GridFunction naive(const BarrierParams& p, const GridFunction& f, double sign) {
    p.validate();
    require_interior(p, f);
    const double l1 = p.lambda(1);
    const double a = p.a;
    const double b = p.beta();
    auto drift = multiply(f, [=](double x) { return -l1 / std::tan(l1 * (x - a)) - sign * b; });
    return sign * derivative(f) + drift;
}

}  // namespace

GridFunction apply_A_naive(const BarrierParams& p, const GridFunction& f) { return naive(p, f, 1.0); }
GridFunction apply_B_naive(const BarrierParams& p, const GridFunction& f) { return naive(p, f, -1.0); }

double projection_residual(const GridFunction& u_full, const GridFunction& v_full) {
    const auto [u, v] = common_support(u_full, v_full);
    const double nu = norm(u);
    const double nv = norm(v);
    if (!(nu > 0.0) || !(nv > 0.0)) throw DegenerateInput("projection_residual: zero vector");
    const double c = std::abs(inner(v, u)) / (nu * nv);
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

double failed_factorization_residual(const BarrierParams& p, int points) {
    const auto grid = interior_grid(p, points);
    const auto phi0 = sample(grid, [&p](double x) { return varphi(p, 0, x); });
    const auto phi1 = sample(grid, [&p](double x) { return varphi(p, 1, x); });
    return projection_residual(apply_B_naive(p, phi0), phi1);
}

ComplexFn apply_S_phi(const BarrierParams& p, ComplexFn f) {
    const double b = p.beta();
    return [b, f = std::move(f)](double x) { return std::exp(2.0 * b * x) * f(x); };
}

ComplexFn apply_S_psi(const BarrierParams& p, ComplexFn f) {
    const double b = p.beta();
    return [b, f = std::move(f)](double x) { return std::exp(-2.0 * b * x) * f(x); };
}

SpectralVector SpectralVector::unit(int n, Basis basis, int capacity) {
    if (capacity < 1 || capacity > specialfn::kMaxDegree) throw InvalidInput("capacity must lie in [1, 200]");
    if (n < 0 || n > capacity) throw InvalidInput("unit vector index exceeds capacity");
    SpectralVector v{std::vector<Complex>(std::size_t(capacity) + 1), basis, 0.0};
    v.coeffs[std::size_t(n)] = 1.0;
    return v;
}

namespace {

void require_same_shape(const SpectralVector& u, const SpectralVector& v) {
    if (u.basis != v.basis) throw InvalidInput("spectral vectors are expanded in different bases");
    if (u.coeffs.size() != v.coeffs.size()) throw InvalidInput("spectral vectors have different capacities");
}

template <class Op>
SpectralVector combine(const SpectralVector& u, const SpectralVector& v, Op op) {
    require_same_shape(u, v);
    SpectralVector out{std::vector<Complex>(u.coeffs.size()), u.basis,
                       std::max(u.discarded_tail, v.discarded_tail)};
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) out.coeffs[i] = op(u.coeffs[i], v.coeffs[i]);
    return out;
}

void require_basis(const SpectralVector& v, Basis expected, const char* op) {
    if (v.n_max() < 1) throw InvalidInput(std::string(op) + ": spectral vector needs n_max >= 1");
    if (v.basis != expected)
        throw InvalidInput(std::string(op) + (expected == Basis::phi ? " acts on varphi-expansions"
                                                                     : " acts on Psi-expansions"));
}

// d_{n-1} = sqrt(rho_n) c_n.
SpectralVector lower(const BarrierParams& p, const SpectralVector& v) {
    SpectralVector out{std::vector<Complex>(v.coeffs.size()), v.basis, v.discarded_tail};
    for (int n = 1; n <= v.n_max(); ++n) out.coeffs[n - 1] = std::sqrt(p.rho(n)) * v.coeffs[n];
    return out;
}

// d_{n+1} = sqrt(rho_{n+1}) c_n; the image of c_{n_max} is discarded and recorded.
SpectralVector raise(const BarrierParams& p, const SpectralVector& v) {
    SpectralVector out{std::vector<Complex>(v.coeffs.size()), v.basis, v.discarded_tail};
    const int top = v.n_max();
    for (int n = 0; n < top; ++n) out.coeffs[n + 1] = std::sqrt(p.rho(n + 1)) * v.coeffs[n];
    out.discarded_tail = std::max(out.discarded_tail, std::sqrt(p.rho(top + 1)) * std::abs(v.coeffs[top]));
    return out;
}

}  // namespace

SpectralVector operator+(const SpectralVector& u, const SpectralVector& v) {
    return combine(u, v, [](Complex x, Complex y) { return x + y; });
}

SpectralVector operator-(const SpectralVector& u, const SpectralVector& v) {
    return combine(u, v, [](Complex x, Complex y) { return x - y; });
}

SpectralVector operator*(Complex s, SpectralVector v) {
    for (auto& c : v.coeffs) c *= s;
    return v;
}

SpectralVector operator*(double s, SpectralVector v) { return Complex(s) * std::move(v); }

double norm(const SpectralVector& v) {
    double s = 0.0;
    for (const auto& c : v.coeffs) s += std::norm(c);
    return std::sqrt(s);
}

double distance(const SpectralVector& u, const SpectralVector& v) { return norm(u - v); }

Complex inner(const SpectralVector& u, const SpectralVector& v) {
    if (u.basis == v.basis)
        throw InvalidInput("spectral inner product is the dual pairing of a varphi- and a Psi-expansion");
    if (u.coeffs.size() != v.coeffs.size()) throw InvalidInput("spectral vectors have different capacities");
    Complex s{};
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) s += std::conj(u.coeffs[i]) * v.coeffs[i];
    return s;
}

SpectralVector apply_A_hat(const BarrierParams& p, const SpectralVector& v) {
    require_basis(v, Basis::phi, "A_hat");
    return lower(p, v);
}

SpectralVector apply_B_hat(const BarrierParams& p, const SpectralVector& v) {
    require_basis(v, Basis::phi, "B_hat");
    return raise(p, v);
}

SpectralVector apply_A_hat_dag(const BarrierParams& p, const SpectralVector& v) {
    require_basis(v, Basis::psi, "A_hat_dag");
    return raise(p, v);
}

SpectralVector apply_B_hat_dag(const BarrierParams& p, const SpectralVector& v) {
    require_basis(v, Basis::psi, "B_hat_dag");
    return lower(p, v);
}

SpectralVector apply_S_phi(const BarrierParams&, const SpectralVector& v) {
    if (v.basis != Basis::psi) throw InvalidInput("S_phi maps Psi-expansions to varphi-expansions");
    SpectralVector out = v;
    out.basis = Basis::phi;
    return out;
}

SpectralVector apply_S_psi(const BarrierParams&, const SpectralVector& v) {
    if (v.basis != Basis::phi) throw InvalidInput("S_psi maps varphi-expansions to Psi-expansions");
    SpectralVector out = v;
    out.basis = Basis::psi;
    return out;
}

Complex inner_1(const BarrierParams& p, const ComplexFn& f, const ComplexFn& g) {
    p.validate();
    return quadrature::adaptive_inner_product(f, g, quadrature::RuleSpec::legendre(p.a, p.b), kInnerTol);
}

namespace {

SpectralVector project_with(const BarrierParams& p, const ComplexFn& f, int n_max, Basis basis) {
    p.validate();
    if (n_max < 1 || n_max > specialfn::kMaxDegree) throw InvalidInput("projection n_max must lie in [1, 200]");
    SpectralVector v{std::vector<Complex>(std::size_t(n_max) + 1), basis, 0.0};
    for (int n = 0; n <= n_max; ++n) {
        const auto dual = basis == Basis::phi ? psi_fn(p, n) : varphi_fn(p, n);
        v.coeffs[n] = inner_1(p, dual, f);
    }
    return v;
}

}  // namespace

SpectralVector project(const BarrierParams& p, const ComplexFn& f, int n_max) {
    return project_with(p, f, n_max, Basis::phi);
}

SpectralVector project_dual(const BarrierParams& p, const ComplexFn& f, int n_max) {
    return project_with(p, f, n_max, Basis::psi);
}

ComplexFn synthesize(const BarrierParams& p, const SpectralVector& v) {
    return [p, v](double x) {
        Complex s{};
        for (int n = 0; n <= v.n_max(); ++n) {
            if (v.coeffs[n] == Complex{}) continue;
            s += v.coeffs[n] * (v.basis == Basis::phi ? varphi(p, n, x) : psi(p, n, x));
        }
        return s;
    };
}

GridFunction synthesize(const BarrierParams& p, const SpectralVector& v, const GridSpec& grid) {
    return sample(grid, synthesize(p, v));
}

pb::LadderSystem<SpectralVector> ladder_system(const BarrierParams& p, int capacity) {
    p.validate();
    pb::LadderSystem<SpectralVector> sys;
    sys.phi_fn = [p](int n) { return varphi_fn(p, n); };
    sys.psi_fn = [p](int n) { return psi_fn(p, n); };
    sys.phi = [capacity](int n) { return SpectralVector::unit(n, Basis::phi, capacity); };
    sys.psi = [capacity](int n) { return SpectralVector::unit(n, Basis::psi, capacity); };
    sys.lower_a = [p](const SpectralVector& v) { return apply_A_hat(p, v); };
    sys.raise_b = [p](const SpectralVector& v) { return apply_B_hat(p, v); };
    sys.lower_b_dag = [p](const SpectralVector& v) { return apply_B_hat_dag(p, v); };
    sys.raise_a_dag = [p](const SpectralVector& v) { return apply_A_hat_dag(p, v); };
    sys.eigens = {[p](int n) { return p.rho(n); }, true};
    sys.inner = [p](const ComplexFn& f, const ComplexFn& g) { return inner_1(p, f, g); };
    return sys;
}

pb::MetricOperator<SpectralVector> metric_operator(const BarrierParams& p) {
    return {[p](const SpectralVector& v) { return apply_S_psi(p, v); },
            [p](const SpectralVector& v) { return apply_S_phi(p, v); }, "S_psi = exp(-2 beta x)"};
}

}  // namespace pbk::barrier
