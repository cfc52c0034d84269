#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pbk/errors.hpp"
#include "pbk/jet.hpp"

namespace pbk {

using Complex = std::complex<double>;

/// Uniform grid x_i = x_min + i * step, i = 0..points-1.
struct GridSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    int points = 9;

    double step() const { return (x_max - x_min) / (points - 1); }
    double x(int i) const { return x_min + i * step(); }
    void validate() const;
};

inline constexpr std::size_t kMinGridSamples = 9;

/**
 * Complex samples on a uniform grid; the carrier for finite-difference
 * operator application. Derivatives drop one sample at each end, and
 * arithmetic between two grid functions acts on their common sub-grid, so
 * operator formulas compose without manual index bookkeeping.
 */
class GridFunction {
public:
    GridFunction(double x0, double dx, std::vector<Complex> samples);

    double x0() const noexcept { return x0_; }
    double dx() const noexcept { return dx_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double x(std::size_t i) const noexcept { return x0_ + double(i) * dx_; }
    const Complex& operator[](std::size_t i) const { return samples_[i]; }
    std::span<const Complex> samples() const noexcept { return samples_; }

    /// Sub-grid [first, first + count).
    GridFunction window(std::size_t first, std::size_t count) const;

    GridFunction& operator*=(Complex s);

private:
    double x0_;
    double dx_;
    std::vector<Complex> samples_;
};

template <class F>
GridFunction sample(const GridSpec& grid, F&& fn) {
    grid.validate();
    std::vector<Complex> v(grid.points);
    for (int i = 0; i < grid.points; ++i) v[i] = Complex(fn(grid.x(i)));
    return GridFunction(grid.x_min, grid.step(), std::move(v));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a);
GridFunction operator*(Complex s, GridFunction f);
GridFunction operator*(double s, GridFunction f);

/// Second-order central first derivative; output is two samples shorter.
GridFunction derivative(const GridFunction& f);
/// Three-point second derivative; output is two samples shorter.
GridFunction second_derivative(const GridFunction& f);
/// (slope * x + intercept) * f(x).
GridFunction affine_multiply(const GridFunction& f, double slope, double intercept);

template <class F>
GridFunction multiply(const GridFunction& f, F&& fn) {
    std::vector<Complex> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = Complex(fn(f.x(i))) * f[i];
    return GridFunction(f.x0(), f.dx(), std::move(v));
}

/// Riemann grid norm sqrt(dx sum |f_i|^2).
double norm(const GridFunction& f);
/// dx sum conj(f_i) g_i over the common sub-grid.
Complex inner(const GridFunction& f, const GridFunction& g);
double distance(const GridFunction& a, const GridFunction& b);
double max_abs(const GridFunction& f);
/// Both functions restricted to their common sub-grid.
std::pair<GridFunction, GridFunction> common_support(const GridFunction& a, const GridFunction& b);

inline constexpr int kJetOrder = 4;
using GridJet = Jet<kJetOrder>;

/**
 * Exact derivative jets (value and up to four derivatives) sampled on a
 * uniform grid. Differentiation shifts Taylor coefficients and lowers the
 * available order by one; no samples are lost. This is the finite-difference
 * free realisation of the same differential operators.
 */
class JetGridFunction {
public:
    JetGridFunction(double x0, double dx, std::vector<GridJet> samples, int order = kJetOrder);

    double x0() const noexcept { return x0_; }
    double dx() const noexcept { return dx_; }
    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double x(std::size_t i) const noexcept { return x0_ + double(i) * dx_; }
    const GridJet& operator[](std::size_t i) const { return samples_[i]; }

    JetGridFunction& operator*=(double s);

private:
    double x0_;
    double dx_;
    int order_;
    std::vector<GridJet> samples_;
};

template <class F>
JetGridFunction sample_jets(const GridSpec& grid, F&& fn) {
    grid.validate();
    std::vector<GridJet> v(grid.points);
    for (int i = 0; i < grid.points; ++i) v[i] = GridJet(fn(GridJet::variable(grid.x(i))));
    return JetGridFunction(grid.x_min, grid.step(), std::move(v));
}

JetGridFunction operator+(const JetGridFunction& a, const JetGridFunction& b);
JetGridFunction operator-(const JetGridFunction& a, const JetGridFunction& b);
JetGridFunction operator-(const JetGridFunction& a);
JetGridFunction operator*(double s, JetGridFunction f);

JetGridFunction derivative(const JetGridFunction& f);
JetGridFunction second_derivative(const JetGridFunction& f);
JetGridFunction affine_multiply(const JetGridFunction& f, double slope, double intercept);

template <class F>
JetGridFunction multiply(const JetGridFunction& f, F&& fn) {
    std::vector<GridJet> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        v[i] = GridJet(fn(GridJet::variable(f.x(i)))) * f[i];
        for (int k = f.order() + 1; k <= kJetOrder; ++k) v[i].c[k] = 0.0;
    }
    return JetGridFunction(f.x0(), f.dx(), std::move(v), f.order());
}

double norm(const JetGridFunction& f);
Complex inner(const JetGridFunction& f, const JetGridFunction& g);
double distance(const JetGridFunction& a, const JetGridFunction& b);

}  // namespace pbk
