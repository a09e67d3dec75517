// SPDX-License-Identifier: Apache-2.0
//
// Upper-bound machinery on S⁴: the momentum-splitting kernel, the spectral
// series bounding the high-momentum remainder, and the numerical audits of
// the inequalities the upper bound consumes.

#pragma once

#include <array>
#include <cstdint>

#include "lt4/quadrature.hpp"
#include "lt4/series.hpp"

namespace lt4 {

/// g(t) = 1/(1 + (scale·t)³). Throws std::domain_error for t < 0 or scale <= 0.
double kernel_g(double t, double scale);

/// ∫₀^∞ g(t)² dt at scale ρ by quadrature; the closed form is 1.
QuadratureResult kernel_normalization();

/// G(t) = t/(1 + t³)². Throws std::domain_error for t < 0.
double big_g(double t);

/// Σ_{n>=1} (2n+3)(n(n+3)+2) / (1 + (n(n+3)/(ρE))³)², summed until the
/// integral-comparison tail bound is at most rel_tol·max(1, value).
SeriesEstimate spectral_series(double E, double rel_tol = kDefaultSeriesRelTol);

/// 3 (ρE)⁴/(2B) · Σ (2n+3)(n(n+3)+2)/((ρE)³ + (n(n+3))³)². The upper bound
/// needs this to stay <= 1. Throws std::runtime_error if the series does
/// not converge within the term budget.
double s220_ratio(double E, double rel_tol = kDefaultSeriesRelTol);

/// δ(E) = 30/(1 + 64/(ρE)³)² - 2(ρE)² ∫₀^{4/(ρE)} x/(1+x³)² dx.
double delta_e(double E);

/// ∫₀^u x/(1+x³)² dx by adaptive quadrature (relative accuracy ~1e-13).
double first_shell_integral(double u);

struct CrossoverResult {
    bool found = false;
    double e_star = 0.0;             // first zero of δ above the scan start
    double delta_at_e_star = 0.0;
    double grid_step = 0.01;
    std::int64_t grid_points = 0;    // coarse grid points strictly below E*
    double max_grid_delta = 0.0;     // max δ over those points
    double max_refined_delta = 0.0;  // max δ on the refined pass next to E*
    double lipschitz = 0.0;          // max |Δδ/ΔE| observed on the coarse grid
    double certified_up_to = 0.0;    // δ <= 0 on [0.01, this] by grid values plus a local curvature margin
};

inline constexpr double kCrossoverScanStart = 0.01;
inline constexpr double kCrossoverScanEnd = 1000.0;
inline constexpr double kCrossoverTol = 1e-10;

/// Scans E = 0.01, 0.02, ... up to 10³ for the first sign change of δ and
/// bisects it. found == false if δ never becomes positive.
CrossoverResult delta_crossover();

struct EulerMaclaurinAudit {
    double nu = 0.0;
    double series_value = 0.0;       // Σ_{n>=0} R(n)
    double series_tail_bound = 0.0;
    double integral_value = 0.0;     // B(2/3,4/3)/(3ν), closed form
    double integral_quadrature = 0.0;
    double integral_relative_gap = 0.0;
    std::array<double, 5> derivative_table{};  // R^{(j)}(0), j = 1..5
    std::array<double, 5> expected_table{};    // 9ν, 18ν, 12ν, 0, 0
    bool series_below_integral = false;        // series + tail <= integral
};

/// R(x) = (2x+3) G(ν x(x+3)), audited for 0 < ν <= 1.
EulerMaclaurinAudit euler_maclaurin_audit(double nu);

/// R^{(j)}(0) for j = 1..5 from a trapezoid discretization of the Cauchy
/// integral on a circle well inside the disc of analyticity of R.
std::array<double, 5> r_derivatives_at_zero(double nu);

struct EmLinearFit {
    std::array<double, 4> nus{0.04, 0.02, 0.01, 0.005};
    std::array<double, 4> scaled_gaps{};     // (series - integral)/ν
    double intercept = 0.0;                  // least-squares fit extrapolated to ν = 0
    std::array<double, 3> pair_intercepts{}; // consecutive-pair extrapolations
    double window_variation = 0.0;           // (max - min)/|intercept| over pair fits
    double claimed = -11.0 / 25.0;           // previously published value, reported only
    double boundary_terms = 0.0;             // -Σ B_j/j! · (ν-linear part of R^{(j-1)}(0))/ν
};

EmLinearFit em_linear_coefficient();

/// 3√C₀ = √(2B(2/3,4/3))/9.
double sphere_upper_bound();

}  // namespace lt4
