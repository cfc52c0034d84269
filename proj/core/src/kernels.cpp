#include "pbk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

namespace pbk::kernels {

std::string to_string(Model m) { return m == Model::harmonic ? "harmonic" : "barrier"; }
std::string to_string(Which w) { return w == Which::p1 ? "p1" : "p2"; }
std::string to_string(Method m) { return m == Method::spectral ? "spectral" : "closed"; }

namespace {

void require_tau(double tau) {
    if (!(std::isfinite(tau) && tau > 0.0)) throw InvalidInput("kernel requires tau > 0");
}

void require_truncation(int n) {
    if (n < 0 || n > kMaxTruncation) throw InvalidInput("n_trunc must lie in [0, 200]");
}

void require_inside(const barrier::BarrierParams& p, double x, double x_prime) {
    p.validate();
    if (!(x > p.a && x < p.b && x_prime > p.a && x_prime < p.b))
        throw InvalidInput("barrier kernel requires x, x' strictly inside (a, b)");
}

harmonic::HarmonicParams select(const harmonic::HarmonicParams& p, Which w) {
    return w == Which::p1 ? p : p.flipped_beta();
}

barrier::BarrierParams select(const barrier::BarrierParams& p, Which w) {
    return w == Which::p1 ? p : p.flipped_beta();
}

/// h_0(u) .. h_N(u) by the normalized recurrence.
std::vector<double> hermite_functions(int n_max, double u) {
    std::vector<double> h(std::size_t(n_max) + 1);
    h[0] = std::exp(-0.5 * u * u) / std::sqrt(std::sqrt(std::numbers::pi));
    if (n_max >= 1) h[1] = std::numbers::sqrt2 * u * h[0];
    for (int k = 1; k < n_max; ++k)
        h[k + 1] = std::sqrt(2.0 / (k + 1)) * u * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
    return h;
}

KernelValue finish(double value, double tail) {
    return {value, tail, tail > kTailWarning};
}

}  // namespace

KernelValue kernel_spectral(const KernelRequest& req, const harmonic::HarmonicParams& params) {
    require_tau(req.tau);
    require_truncation(req.n_trunc);
    const auto p = select(params, req.which);
    const double s = p.sigma();
    const auto hx = hermite_functions(req.n_trunc, req.x / s + s * p.w);
    const auto hy = hermite_functions(req.n_trunc, req.x_prime / s + s * p.w);
    const double pre = std::exp(-req.tau * p.delta() + p.beta() * (req.x - req.x_prime)) / s;
    double sum = 0.0, last = 0.0;
    for (int n = 0; n <= req.n_trunc; ++n) {
        last = std::exp(-req.tau * n) * hx[n] * hy[n];
        sum += last;
    }
    return finish(pre * sum, std::abs(pre * last));
}

KernelValue kernel_spectral(const KernelRequest& req, const barrier::BarrierParams& params) {
    require_tau(req.tau);
    require_truncation(req.n_trunc);
    require_inside(params, req.x, req.x_prime);
    const auto p = select(params, req.which);
    const double l1 = p.lambda(1);
    const double k2 = p.k2();
    const double pre = 2.0 / p.width() *
                       std::exp(-req.tau * p.market.gamma() + p.beta() * (req.x - req.x_prime));
    double sum = 0.0, last = 0.0;
    for (int n = 0; n <= req.n_trunc; ++n) {
        const double m = n + 1.0;
        last = std::exp(-req.tau * k2 * m * m) * std::sin(m * l1 * (req.x - p.a)) *
               std::sin(m * l1 * (req.x_prime - p.a));
        sum += last;
    }
    return finish(pre * sum, std::abs(pre * last));
}

KernelValue kernel_closed_harmonic(const KernelRequest& req, const harmonic::HarmonicParams& params) {
    require_tau(req.tau);
    const auto p = select(params, req.which);
    const double s = p.sigma();
    const double u = req.x / s + s * p.w;
    const double v = req.x_prime / s + s * p.w;
    const double z = std::exp(-req.tau);
    const double one_minus_z2 = -std::expm1(-2.0 * req.tau);
    const double d = v - z * u;
    // The Gaussian prefactor and the exponent of I are combined before exponentiation.
    const double exponent = -req.tau * p.delta() + p.beta() * (req.x - req.x_prime) - 0.5 * (u * u + v * v) +
                            v * v - d * d / one_minus_z2;
    const double value = std::exp(exponent) / (s * std::sqrt(std::numbers::pi * one_minus_z2));
    return {value, 0.0, false};
}

KernelValue kernel_closed_barrier(const KernelRequest& req, const barrier::BarrierParams& params) {
    require_tau(req.tau);
    require_inside(params, req.x, req.x_prime);
    const auto p = select(params, req.which);
    const double l1 = p.lambda(1);
    const double q = std::exp(-p.k2() * req.tau);
    const double k1 = 0.5 * (specialfn::theta3(0.5 * l1 * (req.x - req.x_prime), q) - 1.0);
    const double k2 = 0.5 * (specialfn::theta3(0.5 * l1 * (req.x + req.x_prime - 2.0 * p.a), q) - 1.0);
    const double pre = 2.0 / p.width() *
                       std::exp(-req.tau * p.market.gamma() + p.beta() * (req.x - req.x_prime));
    return {pre * 0.5 * (k1 - k2), 0.0, false};
}

KernelValue evaluate(const KernelRequest& req, const harmonic::HarmonicParams& p) {
    return req.method == Method::spectral ? kernel_spectral(req, p) : kernel_closed_harmonic(req, p);
}

KernelValue evaluate(const KernelRequest& req, const barrier::BarrierParams& p) {
    return req.method == Method::spectral ? kernel_spectral(req, p) : kernel_closed_barrier(req, p);
}

double kernel_oracle_image_series(const barrier::BarrierParams& p, double x, double x_prime, double tau) {
    require_tau(tau);
    p.validate();
    const double s2 = p.sigma() * p.sigma();
    const double r = p.market.r();
    const double mu = r - 0.5 * s2;
    const double L = p.width();
    const double var = s2 * tau;
    auto g = [var](double y) { return std::exp(-0.5 * y * y / var) / std::sqrt(2.0 * std::numbers::pi * var); };
    auto pair = [&](int n) { return g(x_prime - x + 2.0 * n * L) - g(x_prime + x - 2.0 * p.a + 2.0 * n * L); };

    double sum = pair(0);
    for (int n = 1; n < 100000; ++n) {
        const double c = pair(n) + pair(-n);
        sum += c;
        if (n >= 2 && std::abs(c) <= 1e-14 * std::abs(sum)) break;
        if (n >= 2 && c == 0.0) break;
    }
    return std::exp(-r * tau) * std::exp(mu * (x_prime - x) / s2 - mu * mu * tau / (2.0 * s2)) * sum;
}

namespace {

template <class Params>
std::vector<KernelRow> table(const Params& p, const std::vector<double>& xs, const std::vector<double>& yps,
                             const std::vector<double>& taus, int n_trunc) {
    std::vector<KernelRow> rows;
    for (double tau : taus)
        for (double x : xs)
            for (double y : yps)
                for (Which w : {Which::p1, Which::p2}) {
                    KernelRequest req{w, x, y, tau, Method::spectral, n_trunc};
                    const auto spec = evaluate(req, p);
                    req.method = Method::closed;
                    const auto closed = evaluate(req, p);
                    const double agree = std::abs(spec.value - closed.value) / std::abs(closed.value);
                    rows.push_back({x, y, tau, w, Method::spectral, spec.value, spec.tail_estimate, agree});
                    rows.push_back({x, y, tau, w, Method::closed, closed.value, closed.tail_estimate, agree});
                }
    return rows;
}

}  // namespace

std::vector<KernelRow> kernel_table(const harmonic::HarmonicParams& p, const std::vector<double>& xs,
                                    const std::vector<double>& x_primes, const std::vector<double>& taus,
                                    int n_trunc) {
    return table(p, xs, x_primes, taus, n_trunc);
}

std::vector<KernelRow> kernel_table(const barrier::BarrierParams& p, const std::vector<double>& xs,
                                    const std::vector<double>& x_primes, const std::vector<double>& taus,
                                    int n_trunc) {
    return table(p, xs, x_primes, taus, n_trunc);
}

void write_csv(std::ostream& out, const std::vector<KernelRow>& rows) {
    const auto old_flags = out.flags();
    const auto old_precision = out.precision();
    out << "x,x_prime,tau,which,method,value,tail_estimate,agreement\n";
    out << std::setprecision(17);
    for (const auto& r : rows)
        out << r.x << ',' << r.x_prime << ',' << r.tau << ',' << to_string(r.which) << ','
            << to_string(r.method) << ',' << r.value << ',' << r.tail_estimate << ',' << r.agreement << '\n';
    out.flags(old_flags);
    out.precision(old_precision);
}

}  // namespace pbk::kernels
