#pragma once

// Reference implementations used only by tests. Each one takes a different
// route from the library code it checks (explicit sums, Poisson summation,
// long double arithmetic), so agreement is evidence rather than tautology.

#include <cmath>
#include <numbers>

namespace pbk::oracle {

/// H_n(x) from the explicit sum n! sum_m (-1)^m (2x)^{n-2m} / (m! (n-2m)!). Fine for n <= 40.
inline long double hermite_explicit(int n, long double x) {
    long double sum = 0.0L;
    for (int m = 0; 2 * m <= n; ++m) {
        const long double term = std::pow(2.0L * x, n - 2 * m) /
                                 (std::tgamma(static_cast<long double>(m + 1)) *
                                  std::tgamma(static_cast<long double>(n - 2 * m + 1)));
        sum += (m % 2 ? -term : term);
    }
    return sum * std::tgamma(static_cast<long double>(n + 1));
}

/// Normalised Hermite function from the explicit polynomial.
inline long double hermite_function_explicit(int n, long double u) {
    const long double norm = std::sqrt(std::pow(2.0L, n) * std::tgamma(static_cast<long double>(n + 1)) *
                                       std::sqrt(std::numbers::pi_v<long double>));
    return hermite_explicit(n, u) * std::exp(-0.5L * u * u) / norm;
}

/// L_n^k(x) = sum_i (-1)^i C(n+k, n-i) x^i / i!.
inline long double laguerre_explicit(int n, int k, long double x) {
    long double sum = 0.0L;
    for (int i = 0; i <= n; ++i) {
        const long double binom = std::tgamma(static_cast<long double>(n + k + 1)) /
                                  (std::tgamma(static_cast<long double>(n - i + 1)) *
                                   std::tgamma(static_cast<long double>(k + i + 1)));
        const long double term = binom * std::pow(x, i) / std::tgamma(static_cast<long double>(i + 1));
        sum += (i % 2 ? -term : term);
    }
    return sum;
}

/// theta_3(u, e^{-s}) by Poisson summation: sqrt(pi/s) sum_k exp(-(u - k pi)^2 / s).
inline double theta3_poisson(double u, double s) {
    const long double pi = std::numbers::pi_v<long double>;
    long double sum = 0.0L;
    const int reach = 8 + static_cast<int>(std::ceil(std::sqrt(40.0 * s) / std::numbers::pi));
    const long double k0 = std::round(u / pi);
    for (int k = -reach; k <= reach; ++k) {
        const long double d = u - (k0 + k) * pi;
        sum += std::exp(-d * d / s);
    }
    return static_cast<double>(std::sqrt(pi / s) * sum);
}

/// Mehler kernel sum_n z^n h_n(u) h_n(v), written in the separated-square form.
inline double mehler(double u, double v, double z) {
    const long double zz = z, one_m = 1.0L - zz * zz;
    const long double q = ((1.0L + zz * zz) * (static_cast<long double>(u) * u + static_cast<long double>(v) * v) -
                           4.0L * zz * u * v) /
                          (2.0L * one_m);
    return static_cast<double>(std::exp(-q) / std::sqrt(std::numbers::pi_v<long double> * one_m));
}

/// Standard normal CDF in long double.
inline long double normal_cdf(long double v) {
    return 0.5L * std::erfc(-v / std::sqrt(2.0L));
}

/// Black-Scholes call in long double.
inline double bs_call(double s0, double k, double sigma, double r, double tau) {
    const long double sd = static_cast<long double>(sigma) * std::sqrt(static_cast<long double>(tau));
    const long double d1 =
        (std::log(static_cast<long double>(s0) / k) + (r + 0.5L * sigma * sigma) * tau) / sd;
    return static_cast<double>(s0 * normal_cdf(d1) - k * std::exp(-static_cast<long double>(r) * tau) * normal_cdf(d1 - sd));
}

/**
 * Density at y of drifted Brownian motion x + mu t + sigma W_t killed on
 * leaving (a, b), by the reflection principle (image sum over 2L shifts).
 */
inline double killed_density(double x, double y, double a, double b, double mu, double sigma, double tau) {
    const long double L = b - a, var = static_cast<long double>(sigma) * sigma * tau;
    const long double pi = std::numbers::pi_v<long double>;
    auto gauss = [&](long double d) { return std::exp(-d * d / (2.0L * var)) / std::sqrt(2.0L * pi * var); };
    long double sum = 0.0L;
    for (int k = -40; k <= 40; ++k) {
        const long double shift = 2.0L * k * L;
        // Free density at y + shift minus the image reflected through a.
        const long double direct = gauss(y + shift - x);
        const long double image = gauss(2.0L * a - y + shift - x);
        sum += direct - image;
    }
    // Girsanov factor for the drift.
    const long double g = std::exp(mu * (y - x) / var * tau - 0.5L * mu * mu * tau / (static_cast<long double>(sigma) * sigma));
    return static_cast<double>(sum * g);
}

}  // namespace pbk::oracle
