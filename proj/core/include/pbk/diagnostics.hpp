#pragma once

#include "pbk/barrier.hpp"
#include "pbk/harmonic.hpp"
#include "pbk/pb_core.hpp"

namespace pbk::diagnostics {

struct Options {
    int n_max = 20;
    /// Points of the ±8 sigma grid used by the finite-difference ladder check.
    int fd_points = 32001;
    /// Truncation of the quasi-basis partial sums.
    int quasi_n = 60;
    /// Largest index in the norm-law check.
    int norm_n = 30;
};

nlohmann::json to_json(const Options& o);

/// ||(H - E_n) f|| / (|E_n| ||f||) for a sampled eigenfunction.
double relative_eigen_residual(const GridFunction& hf, const GridFunction& f, double eigenvalue);

/// Full pb_core suite for the shifted-harmonic model.
pb::DiagnosticReport diagnose(const harmonic::HarmonicParams& p, const Options& opt = {});
/// Full pb_core suite for the double-barrier model, plus the failed-factorization entry.
pb::DiagnosticReport diagnose(const barrier::BarrierParams& p, const Options& opt = {});

/// Worst of the h_eff, H_eff and H_eff^dag eigen residuals for n <= n_max on `grid`.
double harmonic_eigen_residual(const harmonic::HarmonicParams& p, const GridSpec& grid, int n_max);
/// Worst H_eff / H_eff^dag eigen residual on the closed grid with spacing h_fraction (b - a).
double barrier_eigen_residual(const barrier::BarrierParams& p, double h_fraction, int n_max);

/// Largest relative deviation of ||varphi_n||^2 outside [min, max](e^{2 beta a}, e^{2 beta b}), 0 if inside.
double riesz_bound_violation(const barrier::BarrierParams& p, int n_max);

inline constexpr double kFailedFactorizationFloor = 0.1;

}  // namespace pbk::diagnostics
