#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pbk/barrier.hpp"
#include "pbk/harmonic.hpp"

namespace pbk::kernels {

enum class Model { harmonic, barrier };
enum class Which { p1, p2 };
enum class Method { spectral, closed };

std::string to_string(Model m);
std::string to_string(Which w);
std::string to_string(Method m);

inline constexpr int kMaxTruncation = 200;
inline constexpr double kTailWarning = 1e-10;

struct KernelRequest {
    Which which = Which::p1;
    double x = 0.0;
    double x_prime = 0.0;
    double tau = 1.0;
    Method method = Method::spectral;
    int n_trunc = 80;
};

struct KernelValue {
    double value = 0.0;
    /// Spectral: magnitude of the last included term. Closed forms report 0.
    double tail_estimate = 0.0;
    bool tail_warning = false;
};

/// e^{-tau delta + beta (x - x')} sum_{n <= N} e^{-tau n} Phi_n(x) Phi_n(x').
KernelValue kernel_spectral(const KernelRequest& req, const harmonic::HarmonicParams& p);
/// (2/(b-a)) e^{-tau gamma + beta (x - x')} sum_{n <= N} e^{-tau k^2 (n+1)^2} sin sin.
KernelValue kernel_spectral(const KernelRequest& req, const barrier::BarrierParams& p);

/// Mehler closed form.
KernelValue kernel_closed_harmonic(const KernelRequest& req, const harmonic::HarmonicParams& p);
/// Theta_3 closed form (K_1 - K_2) / 2.
KernelValue kernel_closed_barrier(const KernelRequest& req, const barrier::BarrierParams& p);

/// Dispatch on req.method.
KernelValue evaluate(const KernelRequest& req, const harmonic::HarmonicParams& p);
KernelValue evaluate(const KernelRequest& req, const barrier::BarrierParams& p);

/**
 * Method of images for drifted Brownian motion killed at a and b, discounted
 * by e^{-r tau}. Independent of the eigenfunction expansion; images are added
 * until the last pair contributes below 1e-14 of the running sum.
 */
double kernel_oracle_image_series(const barrier::BarrierParams& p, double x, double x_prime, double tau);

struct KernelRow {
    double x;
    double x_prime;
    double tau;
    Which which;
    Method method;
    double value;
    double tail_estimate;
    /// |spectral - closed| / |closed| for the (point, which) pair.
    double agreement;
};

/// Both methods and both kernels for every (x, x', tau) in the product grid.
std::vector<KernelRow> kernel_table(const harmonic::HarmonicParams& p, const std::vector<double>& xs,
                                    const std::vector<double>& x_primes, const std::vector<double>& taus,
                                    int n_trunc);
std::vector<KernelRow> kernel_table(const barrier::BarrierParams& p, const std::vector<double>& xs,
                                    const std::vector<double>& x_primes, const std::vector<double>& taus,
                                    int n_trunc);

/// Header "x,x_prime,tau,which,method,value,tail_estimate,agreement"; 17 significant digits.
void write_csv(std::ostream& out, const std::vector<KernelRow>& rows);

}  // namespace pbk::kernels
