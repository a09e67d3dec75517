// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lt4/numeric.hpp"

namespace lt4 {

/// Gamma function for real x > 0. Throws std::domain_error otherwise.
double gamma(double x);

/// Euler Beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b) for a, b > 0.
double beta(double a, double b);

inline constexpr int kMaxBernoulliIndex = 32;

/// Exact Bernoulli number B_j (convention B_1 = -1/2) for 0 <= j <= 32.
/// Throws std::out_of_range outside the tabulated range.
Rational bernoulli(int j);

}  // namespace lt4
