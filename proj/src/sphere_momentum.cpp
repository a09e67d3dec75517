// SPDX-License-Identifier: Apache-2.0

#include "lt4/sphere_momentum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "lt4/constants.hpp"
#include "lt4/numeric.hpp"
#include "lt4/quadrature.hpp"
#include "lt4/special_functions.hpp"

namespace lt4 {

namespace {

constexpr std::int64_t kMaxSeriesTerms = 50'000'000;

double first_shell_integrand(double x) {
    const double d = 1.0 + x * x * x;
    return x / (d * d);
}

// R(x) = (2x+3) G(ν x (x+3)) for real x >= 0.
double r_function(double x, double nu) { return (2.0 * x + 3.0) * big_g(nu * x * (x + 3.0)); }

}  // namespace

double kernel_g(double t, double scale) {
    if (t < 0.0) throw std::domain_error("kernel_g: t must be non-negative");
    if (!(scale > 0.0)) throw std::domain_error("kernel_g: scale must be positive");
    const double s = scale * t;
    return 1.0 / (1.0 + s * s * s);
}

QuadratureResult kernel_normalization() {
    const double rho = constants().rho;
    auto g2 = [rho](double t) {
        const double k = kernel_g(t, rho);
        return k * k;
    };
    // Split at the kernel's knee so the mapped tail stays smooth.
    const QuadratureResult head = integrate(g2, 0.0, 2.0 / rho, 1e-13);
    const QuadratureResult tail = integrate(g2, 2.0 / rho, kInfinity, 1e-13);
    QuadratureResult out;
    out.value = head.value + tail.value;
    out.error_estimate = head.error_estimate + tail.error_estimate;
    out.subdivisions = head.subdivisions + tail.subdivisions;
    out.converged = head.converged && tail.converged;
    return out;
}

double big_g(double t) {
    if (t < 0.0) throw std::domain_error("big_g: t must be non-negative");
    const double d = 1.0 + t * t * t;
    return t / (d * d);
}

SeriesEstimate spectral_series(double E, double rel_tol) {
    if (!(E > 0.0)) throw std::domain_error("spectral_series: E must be positive");
    if (!(rel_tol > 0.0)) throw std::domain_error("spectral_series: tolerance must be positive");
    const long double a = static_cast<long double>(constants().rho) * E;
    const long double a6 = std::pow(a, 6.0L);

    SeriesEstimate out;
    out.parameter = E;
    CompensatedSum sum;
    long double tail = 0.0L;
    std::int64_t n = 1;
    for (; n <= kMaxSeriesTerms; ++n) {
        const long double x = static_cast<long double>(n) * (n + 3);
        const long double y = x / a;
        const long double w = 1.0L + y * y * y;
        sum.add((2.0L * n + 3.0L) * (x + 2.0L) / (w * w));
        // Σ_{m>n} term_m <= (1 + 2/x_n) a⁶ Σ (2m+3)/x_m⁵ <= (1 + 2/x_n) a⁶ / (4 x_n⁴).
        const long double x2 = x * x;
        tail = (1.0L + 2.0L / x) * a6 / (4.0L * x2 * x2);
        if (tail <= rel_tol * std::max(1.0L, sum.value())) break;
    }
    out.value = static_cast<double>(sum.value());
    out.terms_used = std::min(n, kMaxSeriesTerms);
    out.tail_bound = static_cast<double>(tail);
    out.tolerance = rel_tol * std::max(1.0, out.value);
    return out;
}

double s220_ratio(double E, double rel_tol) {
    const SeriesEstimate series = spectral_series(E, rel_tol);
    if (!series.converged())
        throw std::runtime_error("s220_ratio: spectral series did not converge at E = " + std::to_string(E));
    const double a = constants().rho * E;
    return 3.0 * series.value / (2.0 * constants().beta_2_3_4_3 * a * a);
}

double first_shell_integral(double u) {
    if (u < 0.0) throw std::domain_error("first_shell_integral: upper limit must be non-negative");
    if (u == 0.0) return 0.0;
    const double scale = std::min(0.5 * u * u, constants().beta_2_3_4_3 / 3.0);
    const double tol = std::max(1e-13 * scale, 1e-300);
    auto checked = [](const QuadratureResult& r) {
        if (!r.converged) throw std::runtime_error("first_shell_integral: quadrature did not converge");
        return r.value;
    };
    constexpr double kSplit = 4.0;
    if (u <= kSplit) return checked(integrate(first_shell_integrand, 0.0, u, tol));
    // Long ranges: the mass sits near the origin, so integrate the far part
    // as a difference of two mapped semi-infinite tails.
    const double head = checked(integrate(first_shell_integrand, 0.0, kSplit, tol));
    const double tail_from_split = checked(integrate(first_shell_integrand, kSplit, kInfinity, tol));
    const double tail_from_u = checked(integrate(first_shell_integrand, u, kInfinity, tol));
    return head + (tail_from_split - tail_from_u);
}

double delta_e(double E) {
    if (!(E > 0.0)) throw std::domain_error("delta_e: E must be positive");
    const double a = constants().rho * E;
    const double ratio = 64.0 / (a * a * a);
    const double first = 30.0 / ((1.0 + ratio) * (1.0 + ratio));
    return first - 2.0 * a * a * first_shell_integral(4.0 / a);
}

CrossoverResult delta_crossover() {
    CrossoverResult out;
    out.grid_step = 0.01;
    const auto steps = static_cast<std::int64_t>(std::llround(kCrossoverScanEnd / out.grid_step));

    std::vector<double> grid;
    std::vector<double> values;
    for (std::int64_t k = 1; k <= steps; ++k) {
        const double e = static_cast<double>(k) * out.grid_step;
        const double d = delta_e(e);
        if (d > 0.0) {
            if (k == 1) return out;  // no negative region to certify
            double lo = grid.back();
            double hi = e;
            while (hi - lo > kCrossoverTol) {
                const double mid = 0.5 * (lo + hi);
                (delta_e(mid) > 0.0 ? hi : lo) = mid;
            }
            out.found = true;
            out.e_star = lo;
            out.delta_at_e_star = delta_e(lo);
            break;
        }
        grid.push_back(e);
        values.push_back(d);
    }
    if (!out.found) return out;
    out.grid_points = static_cast<std::int64_t>(grid.size());
    out.max_grid_delta = *std::max_element(values.begin(), values.end());

    std::vector<double> slopes(grid.size() > 1 ? grid.size() - 1 : 0);
    for (std::size_t i = 0; i < slopes.size(); ++i)
        slopes[i] = std::fabs(values[i + 1] - values[i]) / out.grid_step;
    out.lipschitz = slopes.empty() ? 0.0 : *std::max_element(slopes.begin(), slopes.end());

    // Each cell [E_i, E_{i+1}] is certified when the endpoint maximum plus
    // h²/8 times twice the local second-difference curvature stays negative.
    std::vector<double> curvature(grid.size(), 0.0);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        curvature[i] = std::fabs(values[i + 1] - 2.0 * values[i] + values[i - 1]) / (out.grid_step * out.grid_step);
    if (grid.size() > 2) {
        curvature.front() = curvature[1];
        curvature.back() = curvature[grid.size() - 2];
    }
    out.certified_up_to = grid.front();
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double local = std::max(curvature[i], curvature[i + 1]);
        if (i > 0) local = std::max(local, curvature[i - 1]);
        if (i + 2 < grid.size()) local = std::max(local, curvature[i + 2]);
        const double bound = std::max(values[i], values[i + 1]) + 2.0 * local * out.grid_step * out.grid_step / 8.0;
        if (bound >= 0.0) break;
        out.certified_up_to = grid[i + 1];
    }

    // Refined pass between the last coarse point and E*.
    constexpr int kRefinedPoints = 100;
    double refined_max = -kInfinity;
    for (int i = 0; i < kRefinedPoints; ++i) {
        const double e = grid.back() + (out.e_star - grid.back()) * static_cast<double>(i) / kRefinedPoints;
        refined_max = std::max(refined_max, delta_e(e));
    }
    out.max_refined_delta = refined_max;
    return out;
}

std::array<double, 5> r_derivatives_at_zero(double nu) {
    if (!(nu > 0.0)) throw std::domain_error("r_derivatives_at_zero: nu must be positive");
    // Keep |ν z (z+3)| <= 1/4 on the contour; the nearest singularity of G is at |t| = 1.
    const double radius = 0.5 * (-3.0 + std::sqrt(9.0 + 1.0 / nu));
    constexpr int kNodes = 128;
    using cplx = std::complex<long double>;
    std::array<cplx, 6> coefficients{};
    for (int k = 0; k < kNodes; ++k) {
        const long double theta = 2.0L * static_cast<long double>(kPi) * k / kNodes;
        const cplx z = std::polar(static_cast<long double>(radius), theta);
        const cplx t = static_cast<long double>(nu) * z * (z + 3.0L);
        const cplx d = 1.0L + t * t * t;
        const cplx value = (2.0L * z + 3.0L) * t / (d * d);
        for (int j = 1; j <= 5; ++j) coefficients[j] += value * std::polar(1.0L, -theta * j);
    }
    std::array<double, 5> out{};
    long double factorial = 1.0L;
    for (int j = 1; j <= 5; ++j) {
        factorial *= j;
        const long double c = coefficients[j].real() / kNodes / std::pow(static_cast<long double>(radius), j);
        out[static_cast<std::size_t>(j - 1)] = static_cast<double>(factorial * c);
    }
    return out;
}

EulerMaclaurinAudit euler_maclaurin_audit(double nu) {
    if (!(nu > 0.0) || nu > 1.0) throw std::domain_error("euler_maclaurin_audit: nu must lie in (0, 1]");
    EulerMaclaurinAudit out;
    out.nu = nu;

    // R(0) = 0, so the n = 0 term is omitted. For n >= N+1,
    // R(n) <= (2n+3)/(ν⁵ x_n⁵) because G(t) <= t⁻⁵, which sums to <= 1/(4 ν⁵ x_N⁴).
    CompensatedSum sum;
    const long double nu5 = std::pow(static_cast<long double>(nu), 5.0L);
    long double tail = 0.0L;
    for (std::int64_t n = 1; n <= kMaxSeriesTerms; ++n) {
        const long double x = static_cast<long double>(n) * (n + 3);
        const long double t = nu * x;
        const long double d = 1.0L + t * t * t;
        sum.add((2.0L * n + 3.0L) * t / (d * d));
        const long double x2 = x * x;
        tail = 1.0L / (4.0L * nu5 * x2 * x2);
        if (tail <= 1e-15L * std::max(1.0L, sum.value())) break;
    }
    out.series_value = static_cast<double>(sum.value());
    out.series_tail_bound = static_cast<double>(tail);

    const double b = constants().beta_2_3_4_3;
    out.integral_value = b / (3.0 * nu);
    const QuadratureResult quad =
        integrate([nu](double x) { return r_function(x, nu); }, 0.0, kInfinity, 1e-12 * out.integral_value);
    if (!quad.converged) throw std::runtime_error("euler_maclaurin_audit: quadrature did not converge");
    out.integral_quadrature = quad.value;
    out.integral_relative_gap = std::fabs(quad.value - out.integral_value) / out.integral_value;

    out.derivative_table = r_derivatives_at_zero(nu);
    out.expected_table = {9.0 * nu, 18.0 * nu, 12.0 * nu, 0.0, 0.0};
    out.series_below_integral = out.series_value + out.series_tail_bound <= out.integral_value;
    return out;
}

EmLinearFit em_linear_coefficient() {
    EmLinearFit fit;
    for (std::size_t i = 0; i < fit.nus.size(); ++i) {
        const auto audit = euler_maclaurin_audit(fit.nus[i]);
        fit.scaled_gaps[i] = (audit.series_value - audit.integral_value) / fit.nus[i];
    }
    // Least-squares line y = c + m ν.
    const double n = static_cast<double>(fit.nus.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < fit.nus.size(); ++i) {
        sx += fit.nus[i];
        sy += fit.scaled_gaps[i];
        sxx += fit.nus[i] * fit.nus[i];
        sxy += fit.nus[i] * fit.scaled_gaps[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - slope * sx) / n;

    for (std::size_t i = 0; i + 1 < fit.nus.size(); ++i) {
        const std::array<double, 2> h{fit.nus[i], fit.nus[i + 1]};
        const std::array<double, 2> v{fit.scaled_gaps[i], fit.scaled_gaps[i + 1]};
        fit.pair_intercepts[i] = extrapolate_to_zero(h, v);
    }
    const auto [lo, hi] = std::minmax_element(fit.pair_intercepts.begin(), fit.pair_intercepts.end());
    fit.window_variation = (*hi - *lo) / std::fabs(fit.intercept);

    // Boundary terms of the Euler-Maclaurin expansion through k = 6, using the
    // ν-linear parts R'(0) = 9ν, R''(0) = 18ν, R'''(0) = 12ν (higher ones are O(ν⁴)).
    const std::array<double, 5> linear_part{9.0, 18.0, 12.0, 0.0, 0.0};
    double factorial = 1.0;
    double boundary = 0.0;
    for (int j = 2; j <= 6; ++j) {
        factorial *= j;
        boundary -= bernoulli(j).to_double() / factorial * linear_part[static_cast<std::size_t>(j - 2)];
    }
    fit.boundary_terms = boundary;
    return fit;
}

double sphere_upper_bound() { return 3.0 * std::sqrt(constants().c0); }

}  // namespace lt4
