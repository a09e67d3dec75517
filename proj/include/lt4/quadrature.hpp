// SPDX-License-Identifier: Apache-2.0
//
// Globally adaptive 15-point Gauss-Kronrod quadrature on finite and
// semi-infinite intervals.

#pragma once

#include <functional>
#include <limits>

namespace lt4 {

inline constexpr double kDefaultQuadratureTol = 1e-10;
inline constexpr int kDefaultMaxSubdivisions = 4000;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute, always >= 0
    int subdivisions = 0;
    bool converged = false;       // error_estimate <= requested tol
};

/// Integrates f over (a, b); b may be +infinity, in which case the interval
/// is mapped onto [0, 1) with t = a + s/(1 - s). `tol` is an absolute error
/// target. Running out of subdivisions yields converged == false, never an
/// exception. Throws std::domain_error if a >= b or tol <= 0.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol = kDefaultQuadratureTol,
                           int max_subdivisions = kDefaultMaxSubdivisions);

}  // namespace lt4
