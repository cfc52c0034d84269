#pragma once

#include <cmath>
#include <numbers>

#include "pbk/errors.hpp"

namespace pbk::specialfn {

inline constexpr int kMaxDegree = 200;

/// Physicists' Hermite polynomial H_n(x), three-term recurrence. Throws InvalidInput for n > 200.
double hermite(int n, double x);

/// Generalized Laguerre polynomial L_n^k(x) for integer k >= -n. Throws InvalidInput for n > 200.
double laguerre(int n, int k, double x);

/// Jacobi theta function 1 + 2 sum_{m>=1} q^{m^2} cos(2 m u), 0 <= q < 1.
double theta3(double u, double q);

/// Throws InvalidInput unless 0 <= n <= kMaxDegree.
void require_degree(int n);

/**
 * Orthonormal Hermite function h_n(u) = (2^n n! sqrt(pi))^{-1/2} H_n(u) exp(-u^2/2).
 *
 * Uses the normalized recurrence h_{k+1} = sqrt(2/(k+1)) u h_k - sqrt(k/(k+1)) h_{k-1},
 * which never forms H_n or n! explicitly. Generic in the scalar so that jets
 * can be pushed through it.
 */
template <class T>
T hermite_function(int n, const T& u) {
    require_degree(n);
    using std::exp;
    T prev = exp(-0.5 * (u * u)) * (1.0 / std::sqrt(std::sqrt(std::numbers::pi)));
    if (n == 0) return prev;
    T cur = std::numbers::sqrt2 * (u * prev);
    for (int k = 1; k < n; ++k) {
        T next = std::sqrt(2.0 / (k + 1)) * (u * cur) - std::sqrt(double(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace pbk::specialfn
