#pragma once

namespace pbk {

/**
 * Volatility / risk-free-rate pair with the derived similarity exponent
 * beta = 1/2 - r/sigma^2 and the constant gamma = (sigma^2/2 + r)^2 / (2 sigma^2).
 *
 * beta_sign lets callers evaluate the beta -> -beta mirror of a model
 * (the second pricing kernel) without touching sigma or r; gamma is even in
 * beta and therefore unaffected.
 */
class MarketParams {
public:
    MarketParams(double sigma, double r);

    double sigma() const noexcept { return sigma_; }
    double r() const noexcept { return r_; }
    double beta() const noexcept { return beta_sign_ * (0.5 - r_ / (sigma_ * sigma_)); }
    double gamma() const noexcept;
    int beta_sign() const noexcept { return beta_sign_; }

    /// Same market with beta negated.
    MarketParams flipped_beta() const;

    /// True when sigma^2 = 2r up to rounding, where both eigenfamilies coincide.
    bool beta_is_zero() const noexcept;

private:
    double sigma_;
    double r_;
    int beta_sign_ = 1;
};

}  // namespace pbk
