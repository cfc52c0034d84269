#include "pbk/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pbk {
namespace {

struct Overlap {
    std::size_t a_first;
    std::size_t b_first;
    std::size_t count;
    double x0;
};

template <class G>
Overlap overlap(const G& a, const G& b) {
    if (std::abs(a.dx() - b.dx()) > 1e-12 * a.dx())
        throw InvalidInput("grid functions live on grids with different spacing");
    const double shift = (b.x0() - a.x0()) / a.dx();
    const long k = std::lround(shift);
    if (std::abs(shift - double(k)) > 1e-6) throw InvalidInput("grid functions are not co-located");
    const long a_first = std::max(0L, k);
    const long b_first = std::max(0L, -k);
    const long count = std::min(long(a.size()) - a_first, long(b.size()) - b_first);
    if (count < long(kMinGridSamples)) throw GridTooShort("grid functions share too few samples");
    return {std::size_t(a_first), std::size_t(b_first), std::size_t(count), a.x(std::size_t(a_first))};
}

void require_stencil(std::size_t n) {
    if (n < kMinGridSamples + 2)
        throw GridTooShort("finite-difference stencil needs at least " +
                           std::to_string(kMinGridSamples + 2) + " samples, got " +
                           std::to_string(n));
}

}  // namespace

void GridSpec::validate() const {
    if (points < int(kMinGridSamples)) throw GridTooShort("grid needs at least 9 points");
    if (!(x_max > x_min)) throw InvalidInput("grid requires x_min < x_max");
}

GridFunction::GridFunction(double x0, double dx, std::vector<Complex> samples)
    : x0_(x0), dx_(dx), samples_(std::move(samples)) {
    if (!(dx > 0.0)) throw InvalidInput("grid spacing must be positive");
    if (samples_.size() < kMinGridSamples) throw GridTooShort("grid function needs at least 9 samples");
}

GridFunction GridFunction::window(std::size_t first, std::size_t count) const {
    if (first + count > size()) throw InvalidInput("window exceeds grid");
    return GridFunction(x(first), dx_,
                        std::vector<Complex>(samples_.begin() + long(first),
                                             samples_.begin() + long(first + count)));
}

GridFunction& GridFunction::operator*=(Complex s) {
    for (auto& v : samples_) v *= s;
    return *this;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    const auto o = overlap(a, b);
    std::vector<Complex> v(o.count);
    for (std::size_t i = 0; i < o.count; ++i) v[i] = a[o.a_first + i] + b[o.b_first + i];
    return GridFunction(o.x0, a.dx(), std::move(v));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    const auto o = overlap(a, b);
    std::vector<Complex> v(o.count);
    for (std::size_t i = 0; i < o.count; ++i) v[i] = a[o.a_first + i] - b[o.b_first + i];
    return GridFunction(o.x0, a.dx(), std::move(v));
}

GridFunction operator-(const GridFunction& a) { return -1.0 * a; }
GridFunction operator*(Complex s, GridFunction f) { return f *= s; }
GridFunction operator*(double s, GridFunction f) { return f *= Complex(s); }

GridFunction derivative(const GridFunction& f) {
    require_stencil(f.size());
    const double inv = 0.5 / f.dx();
    std::vector<Complex> v(f.size() - 2);
    for (std::size_t i = 1; i + 1 < f.size(); ++i) v[i - 1] = (f[i + 1] - f[i - 1]) * inv;
    return GridFunction(f.x(1), f.dx(), std::move(v));
}

GridFunction second_derivative(const GridFunction& f) {
    require_stencil(f.size());
    const double inv = 1.0 / (f.dx() * f.dx());
    std::vector<Complex> v(f.size() - 2);
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
        v[i - 1] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
    return GridFunction(f.x(1), f.dx(), std::move(v));
}

GridFunction affine_multiply(const GridFunction& f, double slope, double intercept) {
    return multiply(f, [&](double x) { return slope * x + intercept; });
}

double norm(const GridFunction& f) {
    double s = 0.0;
    for (const auto& v : f.samples()) s += std::norm(v);
    return std::sqrt(f.dx() * s);
}

Complex inner(const GridFunction& f, const GridFunction& g) {
    const auto o = overlap(f, g);
    Complex s{};
    for (std::size_t i = 0; i < o.count; ++i) s += std::conj(f[o.a_first + i]) * g[o.b_first + i];
    return f.dx() * s;
}

double distance(const GridFunction& a, const GridFunction& b) { return norm(a - b); }

std::pair<GridFunction, GridFunction> common_support(const GridFunction& a, const GridFunction& b) {
    const auto o = overlap(a, b);
    return {a.window(o.a_first, o.count), b.window(o.b_first, o.count)};
}

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (const auto& v : f.samples()) m = std::max(m, std::abs(v));
    return m;
}

JetGridFunction::JetGridFunction(double x0, double dx, std::vector<GridJet> samples, int order)
    : x0_(x0), dx_(dx), order_(order), samples_(std::move(samples)) {
    if (!(dx > 0.0)) throw InvalidInput("grid spacing must be positive");
    if (samples_.size() < kMinGridSamples) throw GridTooShort("grid function needs at least 9 samples");
    if (order < 0 || order > kJetOrder) throw InvalidInput("jet order out of range");
}

JetGridFunction& JetGridFunction::operator*=(double s) {
    for (auto& v : samples_) v *= s;
    return *this;
}

namespace {

template <class Op>
JetGridFunction combine(const JetGridFunction& a, const JetGridFunction& b, Op op) {
    const auto o = overlap(a, b);
    const int order = std::min(a.order(), b.order());
    std::vector<GridJet> v(o.count);
    for (std::size_t i = 0; i < o.count; ++i) {
        v[i] = op(a[o.a_first + i], b[o.b_first + i]);
        for (int k = order + 1; k <= kJetOrder; ++k) v[i].c[k] = 0.0;
    }
    return JetGridFunction(o.x0, a.dx(), std::move(v), order);
}

}  // namespace

JetGridFunction operator+(const JetGridFunction& a, const JetGridFunction& b) {
    return combine(a, b, [](const GridJet& x, const GridJet& y) { return x + y; });
}

JetGridFunction operator-(const JetGridFunction& a, const JetGridFunction& b) {
    return combine(a, b, [](const GridJet& x, const GridJet& y) { return x - y; });
}

JetGridFunction operator-(const JetGridFunction& a) { return -1.0 * a; }
JetGridFunction operator*(double s, JetGridFunction f) { return f *= s; }

JetGridFunction derivative(const JetGridFunction& f) {
    if (f.order() < 1) throw InvalidInput("jet order exhausted: cannot differentiate further");
    std::vector<GridJet> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (int k = 0; k < kJetOrder; ++k) v[i].c[k] = (k + 1) * f[i].c[k + 1];
        v[i].c[kJetOrder] = 0.0;
    }
    return JetGridFunction(f.x0(), f.dx(), std::move(v), f.order() - 1);
}

JetGridFunction second_derivative(const JetGridFunction& f) { return derivative(derivative(f)); }

JetGridFunction affine_multiply(const JetGridFunction& f, double slope, double intercept) {
    return multiply(f, [&](const GridJet& x) { return slope * x + intercept; });
}

double norm(const JetGridFunction& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i].value() * f[i].value();
    return std::sqrt(f.dx() * s);
}

Complex inner(const JetGridFunction& f, const JetGridFunction& g) {
    const auto o = overlap(f, g);
    double s = 0.0;
    for (std::size_t i = 0; i < o.count; ++i) s += f[o.a_first + i].value() * g[o.b_first + i].value();
    return f.dx() * s;
}

double distance(const JetGridFunction& a, const JetGridFunction& b) { return norm(a - b); }

}  // namespace pbk
