#include "pbk/specialfn.hpp"

#include <string>

namespace pbk::specialfn {

void require_degree(int n) {
    if (n < 0 || n > kMaxDegree)
        throw InvalidInput("polynomial degree " + std::to_string(n) + " outside [0, 200]");
}

double hermite(int n, double x) {
    require_degree(n);
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double laguerre(int n, int k, double x) {
    require_degree(n);
    if (k < -n) throw InvalidInput("laguerre: order k must satisfy k >= -n");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + k - x;
    for (int m = 1; m < n; ++m) {
        const double next = ((2.0 * m + 1.0 + k - x) * cur - (m + k) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double theta3(double u, double q) {
    if (!(q >= 0.0 && q < 1.0)) throw InvalidInput("theta3: nome must satisfy 0 <= q < 1");
    double sum = 1.0;
    if (q == 0.0) return sum;
    const double log_q = std::log(q);
    for (int m = 1;; ++m) {
        const double term = std::exp(log_q * double(m) * double(m));
        if (term < 1e-16) break;
        sum += 2.0 * term * std::cos(2.0 * m * u);
    }
    return sum;
}

}  // namespace pbk::specialfn
