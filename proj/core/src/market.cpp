#include "pbk/market.hpp"

#include <cmath>

#include "pbk/errors.hpp"

namespace pbk {

MarketParams::MarketParams(double sigma, double r) : sigma_(sigma), r_(r) {
    if (!(std::isfinite(sigma) && sigma > 0.0)) throw InvalidInput("sigma must be finite and > 0");
    if (!(std::isfinite(r) && r >= 0.0)) throw InvalidInput("r must be finite and >= 0");
}

double MarketParams::gamma() const noexcept {
    const double s2 = sigma_ * sigma_;
    const double t = 0.5 * s2 + r_;
    return t * t / (2.0 * s2);
}

MarketParams MarketParams::flipped_beta() const {
    MarketParams m = *this;
    m.beta_sign_ = -beta_sign_;
    return m;
}

bool MarketParams::beta_is_zero() const noexcept {
    return std::abs(beta()) <= 1e-14;
}

}  // namespace pbk
