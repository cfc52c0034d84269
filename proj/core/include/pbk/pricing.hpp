#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "pbk/kernels.hpp"

namespace pbk::pricing {

enum class PayoffKind { call, put, digital_call };

std::string to_string(PayoffKind k);
PayoffKind payoff_kind_from_string(const std::string& s);

struct Payoff {
    PayoffKind kind = PayoffKind::call;
    double strike = 100.0;

    Payoff(PayoffKind kind, double strike);

    /// Payoff as a function of the price S.
    double operator()(double s) const;
    /// Payoff as a function of the log-price x, g(e^x).
    double as_log(double x) const { return (*this)(std::exp(x)); }
};

struct PricingResult {
    double value = 0.0;
    std::optional<double> std_error;  // Monte Carlo only
    std::string method;
    nlohmann::json config_echo = nlohmann::json::object();
};

/// {"value", "stderr"?, "method", "config_echo"}.
void to_json(nlohmann::json& j, const PricingResult& r);

inline constexpr double kPriceTol = 1e-12;

/// C_j(x; tau): spectral kernel p_j integrated against the payoff over (a, b), clipped
/// to 12 standard deviations of the free Gaussian around the drifted mean.
PricingResult price_spectral(const barrier::BarrierParams& p, kernels::Which which, const Payoff& payoff,
                             double x, double tau, int n_trunc = 128);

/// Harmonic model: integration over a 10 standard deviation window of the kernel's Gaussian in x'.
PricingResult price_spectral(const harmonic::HarmonicParams& p, kernels::Which which, const Payoff& payoff,
                             double x, double tau, int n_trunc = 80);

struct MCConfig {
    std::int64_t paths = 200000;
    int steps = 512;
    std::uint64_t seed = 20240501;
    bool bridge_correction = true;
    /// Worker count; 0 reads PBK_THREADS, falling back to the hardware concurrency.
    int threads = 0;
};

inline constexpr std::int64_t kPathsPerBlock = 4096;
inline constexpr const char* kRngName = "mt19937_64 per path, seeded by splitmix64(seed ^ splitmix64(path))";

/**
 * Monte Carlo double knock-out price under GBM. Paths are built by
 * Brownian-bridge bisection (breadth-first) when steps is a power of two,
 * by sequential increments otherwise. With bridge_correction each step
 * multiplies the path weight by its survival probability against both
 * barriers. Every path has its own generator, so for power-of-two step counts
 * the coarse path is a subsample of the fine one. Blocks are reduced in
 * ascending order, so results do not depend on the worker count.
 */
PricingResult price_mc_barrier(const Payoff& payoff, double s0, double lower, double upper, double sigma,
                               double r, double tau, const MCConfig& cfg);

/// Black-Scholes price; the normal CDF is 0.5 erfc(-x / sqrt 2).
double bs_closed_form(PayoffKind kind, double s0, double strike, double sigma, double r, double tau);

/// Worker count from PBK_THREADS, else hardware concurrency (at least 1).
int default_threads();

}  // namespace pbk::pricing
