#include "pbk/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

namespace pbk::pricing {

std::string to_string(PayoffKind k) {
    switch (k) {
        case PayoffKind::call: return "call";
        case PayoffKind::put: return "put";
        case PayoffKind::digital_call: return "digital_call";
    }
    return "call";
}

PayoffKind payoff_kind_from_string(const std::string& s) {
    if (s == "call") return PayoffKind::call;
    if (s == "put") return PayoffKind::put;
    if (s == "digital_call") return PayoffKind::digital_call;
    throw InvalidInput("unknown payoff kind '" + s + "'");
}

Payoff::Payoff(PayoffKind kind_, double strike_) : kind(kind_), strike(strike_) {
    if (!(std::isfinite(strike) && strike > 0.0)) throw InvalidInput("strike must be finite and > 0");
}

double Payoff::operator()(double s) const {
    switch (kind) {
        case PayoffKind::call: return std::max(s - strike, 0.0);
        case PayoffKind::put: return std::max(strike - s, 0.0);
        case PayoffKind::digital_call: return s > strike ? 1.0 : 0.0;
    }
    return 0.0;
}

void to_json(nlohmann::json& j, const PricingResult& r) {
    j = nlohmann::json{{"value", r.value}, {"method", r.method}, {"config_echo", r.config_echo}};
    if (r.std_error) j["stderr"] = *r.std_error;
}

namespace {

void require_tau(double tau) {
    if (!(std::isfinite(tau) && tau > 0.0)) throw InvalidInput("pricing requires tau > 0");
}

/// Integral of h over [lo, hi], split at the payoff kink when it falls inside.
double integrate_split(const std::function<double(double)>& h, double lo, double hi, double kink) {
    const ComplexFn fn = [&h](double x) { return Complex(h(x)); };
    auto piece = [&](double a, double b) {
        if (!(b > a)) return 0.0;
        return quadrature::adaptive_integrate(fn, quadrature::RuleSpec::legendre(a, b), kPriceTol).real();
    };
    if (kink > lo && kink < hi) return piece(lo, kink) + piece(kink, hi);
    return piece(lo, hi);
}

nlohmann::json payoff_echo(const Payoff& g) {
    return {{"kind", to_string(g.kind)}, {"strike", g.strike}};
}

}  // namespace

PricingResult price_spectral(const barrier::BarrierParams& p, kernels::Which which, const Payoff& payoff,
                             double x, double tau, int n_trunc) {
    require_tau(tau);
    p.validate();
    kernels::KernelRequest req{which, x, 0.0, tau, kernels::Method::spectral, n_trunc};
    auto h = [&](double y) {
        req.x_prime = y;
        const double g = payoff.as_log(y);
        return g == 0.0 ? 0.0 : kernels::kernel_spectral(req, p).value * g;
    };
    // The killed density is dominated by the free Gaussian with drift -sigma^2 beta, so
    // x' beyond 12 standard deviations contributes below e^{-72} of the value.
    const double beta = which == kernels::Which::p1 ? p.beta() : -p.beta();
    const double centre = x - p.sigma() * p.sigma() * beta * tau;
    const double sd = p.sigma() * std::sqrt(tau);
    const double lo = std::max(p.a, centre - 12.0 * sd);
    const double hi = std::min(p.b, centre + 12.0 * sd);
    const double value = integrate_split(h, lo, hi, std::log(payoff.strike));
    PricingResult out{value, std::nullopt, "spectral", {}};
    out.config_echo = {{"model", "barrier"}, {"which", kernels::to_string(which)}, {"x", x},      {"tau", tau},
                       {"n_trunc", n_trunc}, {"sigma", p.sigma()},                 {"r", p.market.r()},
                       {"a", p.a},           {"b", p.b},                           {"payoff", payoff_echo(payoff)}};
    return out;
}

PricingResult price_spectral(const harmonic::HarmonicParams& p, kernels::Which which, const Payoff& payoff,
                             double x, double tau, int n_trunc) {
    require_tau(tau);
    // In v = x'/sigma + sigma w the kernel is Gaussian with centre 2zu/(1+z^2) and
    // variance (1-z^2)/(1+z^2); the e^{-beta x'} factor moves the centre by -beta sigma var.
    const auto& q = which == kernels::Which::p1 ? p : p.flipped_beta();
    const double s = p.sigma();
    const double z = std::exp(-tau);
    const double u = x / s + s * p.w;
    const double var = -std::expm1(-2.0 * tau) / (1.0 + z * z);
    const double centre_v = 2.0 * z * u / (1.0 + z * z) - q.beta() * s * var;
    const double centre_x = s * (centre_v - s * p.w);
    const double sd_x = s * std::sqrt(var);
    kernels::KernelRequest req{which, x, 0.0, tau, kernels::Method::spectral, n_trunc};
    auto h = [&](double y) {
        req.x_prime = y;
        const double g = payoff.as_log(y);
        return g == 0.0 ? 0.0 : kernels::kernel_spectral(req, p).value * g;
    };
    const double value = integrate_split(h, centre_x - 10.0 * sd_x, centre_x + 10.0 * sd_x, std::log(payoff.strike));
    PricingResult out{value, std::nullopt, "spectral", {}};
    out.config_echo = {{"model", "harmonic"}, {"which", kernels::to_string(which)}, {"x", x},
                       {"tau", tau},          {"n_trunc", n_trunc},                 {"sigma", p.sigma()},
                       {"r", p.market.r()},   {"w", p.w},                           {"payoff", payoff_echo(payoff)}};
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("PBK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return int(std::min(v, 256L));
    }
    return int(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

struct BlockSum {
    double sum = 0.0;
    double sum_sq = 0.0;
};

struct PathModel {
    double x0, log_lo, log_hi, drift, sigma, tau, discount;
    int steps;
    bool bridge;
};

/// Brownian motion at t_k = k tau / steps, k = 0..steps, from `steps` normals.
void brownian_path(const PathModel& m, std::mt19937_64& rng, std::normal_distribution<double>& normal,
                   std::vector<double>& w) {
    const int n = m.steps;
    const double dt = m.tau / n;
    w[0] = 0.0;
    if (!is_power_of_two(n)) {
        for (int k = 1; k <= n; ++k) w[k] = w[k - 1] + std::sqrt(dt) * normal(rng);
        return;
    }
    w[n] = std::sqrt(m.tau) * normal(rng);
    for (int span = n; span > 1; span /= 2) {
        const int half = span / 2;
        const double sd = std::sqrt(0.25 * span * dt);
        for (int left = 0; left < n; left += span)
            w[left + half] = 0.5 * (w[left] + w[left + span]) + sd * normal(rng);
    }
}

/// Discounted payoff times survival weight for one path.
double path_value(const PathModel& m, const Payoff& payoff, const std::vector<double>& w) {
    const double dt = m.tau / m.steps;
    const double bridge_scale = 2.0 / (m.sigma * m.sigma * dt);
    double weight = 1.0;
    double prev = m.x0;
    for (int k = 1; k <= m.steps; ++k) {
        const double x = m.x0 + m.drift * k * dt + m.sigma * w[k];
        if (x <= m.log_lo || x >= m.log_hi) return 0.0;
        if (m.bridge) {
            const double p_lo = std::exp(-bridge_scale * (prev - m.log_lo) * (x - m.log_lo));
            const double p_hi = std::exp(-bridge_scale * (m.log_hi - prev) * (m.log_hi - x));
            weight *= (1.0 - p_lo) * (1.0 - p_hi);
        }
        prev = x;
    }
    return m.discount * weight * payoff.as_log(prev);
}

}  // namespace

PricingResult price_mc_barrier(const Payoff& payoff, double s0, double lower, double upper, double sigma,
                               double r, double tau, const MCConfig& cfg) {
    require_tau(tau);
    if (!(lower < upper)) throw InvalidInput("degenerate barriers: require lower < upper");
    if (!(lower > 0.0)) throw InvalidInput("lower barrier must be > 0");
    if (!(s0 > lower && s0 < upper)) throw InvalidInput("spot must lie strictly between the barriers");
    if (!(std::isfinite(sigma) && sigma > 0.0)) throw InvalidInput("sigma must be finite and > 0");
    if (!(std::isfinite(r) && r >= 0.0)) throw InvalidInput("r must be finite and >= 0");
    if (cfg.paths < 2 || cfg.steps < 1) throw InvalidInput("MC needs paths >= 2 and steps >= 1");

    const PathModel model{std::log(s0), std::log(lower), std::log(upper), r - 0.5 * sigma * sigma, sigma, tau,
                          std::exp(-r * tau), cfg.steps, cfg.bridge_correction};
    const std::int64_t blocks = (cfg.paths + kPathsPerBlock - 1) / kPathsPerBlock;
    std::vector<BlockSum> sums(static_cast<std::size_t>(blocks));

    auto run_block = [&](std::int64_t b) {
        std::mt19937_64 rng;
        std::normal_distribution<double> normal;
        std::vector<double> w(std::size_t(cfg.steps) + 1);
        const std::int64_t first = b * kPathsPerBlock;
        const std::int64_t count = std::min(kPathsPerBlock, cfg.paths - first);
        BlockSum s;
        for (std::int64_t i = 0; i < count; ++i) {
            // Per-path streams keep path i identical across step counts (coarse = subsample of fine).
            rng.seed(splitmix64(cfg.seed ^ splitmix64(std::uint64_t(first + i))));
            normal.reset();
            brownian_path(model, rng, normal, w);
            const double v = path_value(model, payoff, w);
            s.sum += v;
            s.sum_sq += v * v;
        }
        sums[std::size_t(b)] = s;
    };

    const int workers = int(std::min<std::int64_t>(cfg.threads > 0 ? cfg.threads : default_threads(), blocks));
    if (workers <= 1) {
        for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (std::int64_t b = t; b < blocks; b += workers) run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    double sum = 0.0, sum_sq = 0.0;
    for (const auto& s : sums) {
        sum += s.sum;
        sum_sq += s.sum_sq;
    }
    const double n = double(cfg.paths);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    PricingResult out{mean, std::sqrt(var / n), "monte_carlo", {}};
    out.config_echo = {{"paths", cfg.paths},
                       {"steps", cfg.steps},
                       {"seed", cfg.seed},
                       {"bridge_correction", cfg.bridge_correction},
                       {"rng", kRngName},
                       {"s0", s0},
                       {"lower", lower},
                       {"upper", upper},
                       {"sigma", sigma},
                       {"r", r},
                       {"tau", tau},
                       {"payoff", payoff_echo(payoff)}};
    return out;
}

double bs_closed_form(PayoffKind kind, double s0, double strike, double sigma, double r, double tau) {
    if (!(sigma > 0.0 && tau > 0.0)) throw InvalidInput("Black-Scholes formula requires sigma, tau > 0");
    if (!(s0 > 0.0 && strike > 0.0)) throw InvalidInput("Black-Scholes formula requires positive prices");
    auto N = [](double v) { return 0.5 * std::erfc(-v / std::numbers::sqrt2); };
    const double sd = sigma * std::sqrt(tau);
    const double d1 = (std::log(s0 / strike) + (r + 0.5 * sigma * sigma) * tau) / sd;
    const double d2 = d1 - sd;
    const double df = std::exp(-r * tau);
    switch (kind) {
        case PayoffKind::call: return s0 * N(d1) - strike * df * N(d2);
        case PayoffKind::put: return strike * df * N(-d2) - s0 * N(-d1);
        case PayoffKind::digital_call: return df * N(d2);
    }
    return 0.0;
}

}  // namespace pbk::pricing
