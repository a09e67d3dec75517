// SPDX-License-Identifier: Apache-2.0
//
// Spectral data of the Laplace-Beltrami operator on S^d and the
// shell-family lower bound for the d = 4 kinetic-energy constant.
//
// The family of all spherical harmonics of degree 1..M-1 has constant
// density Σ α_n / ω₄ (addition theorem), so Hölder's inequality is an
// equality for it and the best constant satisfies
//
//     K₄(S⁴)² >= P(M)³ / (6 ω₄ Q(M)²),
//
// where P(M) = 6 Σ α_n and Q(M) = 6 Σ Λ_n α_n over n = 1..M-1.

#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "lt4/numeric.hpp"

namespace lt4 {

struct SphereShell {
    int d = 4;
    std::int64_t n = 0;
    int128 eigenvalue = 0;    // n (n + d - 1)
    int128 multiplicity = 0;  // C(d+n, n) - C(d+n-2, n-2)
};

/// Throws std::domain_error if d < 2 or n < 0.
SphereShell shell(int d, std::int64_t n);

struct ShellSums {
    std::int64_t M = 0;
    int128 P = 0;
    int128 Q = 0;
};

inline constexpr std::int64_t kMaxShellIndex = 2'000'000;  // Q(M) ~ M⁶/3 stays inside 128 bits

/// Exact sums for d = 4. Requires 2 <= M <= kMaxShellIndex.
ShellSums shell_sums(std::int64_t M);

/// r(M) = P³ / (6 ω₄ Q²); √r(M) is a valid lower bound on K₄(S⁴).
double lower_bound_ratio(std::int64_t M);

/// Same as lower_bound_ratio, from already computed sums.
long double lower_bound_ratio(const ShellSums& sums);

struct LowerBoundLimit {
    double closed_form = 0.0;    // 3/(8√2 π)
    double extrapolated = 0.0;   // Richardson limit of √r(M), M -> ∞
    std::array<std::int64_t, 4> nodes{};
    std::array<double, 4> node_values{};  // √r at the nodes
    double deviation = 0.0;      // |closed_form - extrapolated|
    bool consistent = false;     // deviation <= kLimitFailureThreshold
};

inline constexpr double kLimitAgreementTol = 1e-6;
inline constexpr double kLimitFailureThreshold = 1e-4;

/// Extrapolates √r over M ∈ {10³, 10⁴, 10⁵, 10⁶} in powers of 1/M.
LowerBoundLimit lower_bound_limit();

struct BestFiniteBound {
    double value = 0.0;
    std::int64_t M = 0;
};

/// sup √r(M) over M in [2, max_M]. r is strictly decreasing in practice, so
/// this lands on M = 2; the scan is kept so the claim is checked, not assumed.
BestFiniteBound best_finite_sphere_bound(std::int64_t max_M);

/// Polynomials in M, recovered by exact Lagrange interpolation through the
/// exact sums at M = 2..8. Coefficients are in increasing degree.
struct ShellPolynomials {
    std::array<Rational, 5> P{};
    std::array<Rational, 7> Q{};
};

ShellPolynomials shell_polynomials();

/// Horner evaluation of a polynomial with coefficients in increasing degree.
Rational evaluate(std::span<const Rational> coefficients, std::int64_t x);

}  // namespace lt4
