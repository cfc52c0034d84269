#pragma once

#include <array>
#include <cmath>

namespace pbk {

/**
 * Truncated Taylor polynomial f(x0 + t) = sum_k c[k] t^k, k = 0..N.
 *
 * Arithmetic on jets propagates exact derivatives through closed-form
 * expressions (forward-mode differentiation to order N). Evaluating an
 * eigenfunction at Jet<N>::variable(x) yields f(x), f'(x), ..., f^(N)(x)
 * without any finite-difference error.
 */
template <int N>
struct Jet {
    static_assert(N >= 0);
    static constexpr int order = N;

    std::array<double, N + 1> c{};

    constexpr Jet() = default;
    constexpr Jet(double v) { c[0] = v; }  // NOLINT: constants mix freely with jets

    static constexpr Jet variable(double x) {
        Jet j(x);
        if constexpr (N >= 1) j.c[1] = 1.0;
        return j;
    }

    constexpr double value() const { return c[0]; }

    /// k-th derivative at the expansion point.
    double derivative(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f * c[k];
    }

    Jet& operator+=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
        return *this;
    }
    Jet& operator*=(double s) {
        for (auto& v : c) v *= s;
        return *this;
    }
    Jet& operator*=(const Jet& o) {
        Jet r;
        for (int k = 0; k <= N; ++k)
            for (int j = 0; j <= k; ++j) r.c[k] += c[j] * o.c[k - j];
        *this = r;
        return *this;
    }
};

template <int N> Jet<N> operator-(Jet<N> a) { return a *= -1.0; }
template <int N> Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <int N> Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <int N> Jet<N> operator*(Jet<N> a, const Jet<N>& b) { return a *= b; }
template <int N> Jet<N> operator+(Jet<N> a, double s) { a.c[0] += s; return a; }
template <int N> Jet<N> operator+(double s, Jet<N> a) { a.c[0] += s; return a; }
template <int N> Jet<N> operator-(Jet<N> a, double s) { a.c[0] -= s; return a; }
template <int N> Jet<N> operator-(double s, const Jet<N>& a) { return s + (-a); }
template <int N> Jet<N> operator*(Jet<N> a, double s) { return a *= s; }
template <int N> Jet<N> operator*(double s, Jet<N> a) { return a *= s; }
template <int N> Jet<N> operator/(Jet<N> a, double s) { return a *= 1.0 / s; }

template <int N>
Jet<N> exp(const Jet<N>& t) {
    // e' = t' e  =>  k e_k = sum_{j=1..k} j t_j e_{k-j}
    Jet<N> e;
    e.c[0] = std::exp(t.c[0]);
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * t.c[j] * e.c[k - j];
        e.c[k] = s / k;
    }
    return e;
}

template <int N>
void sincos(const Jet<N>& t, Jet<N>& s, Jet<N>& co) {
    s = Jet<N>{};
    co = Jet<N>{};
    s.c[0] = std::sin(t.c[0]);
    co.c[0] = std::cos(t.c[0]);
    for (int k = 1; k <= N; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * t.c[j] * co.c[k - j];
            cc -= j * t.c[j] * s.c[k - j];
        }
        s.c[k] = ss / k;
        co.c[k] = cc / k;
    }
}

template <int N>
Jet<N> sin(const Jet<N>& t) {
    Jet<N> s, c;
    sincos(t, s, c);
    return s;
}

template <int N>
Jet<N> cos(const Jet<N>& t) {
    Jet<N> s, c;
    sincos(t, s, c);
    return c;
}

inline double value_of(double x) { return x; }
template <int N> double value_of(const Jet<N>& j) { return j.value(); }

}  // namespace pbk
