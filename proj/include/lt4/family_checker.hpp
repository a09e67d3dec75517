// SPDX-License-Identifier: Apache-2.0
//
// Direct evaluation of ∫(Σ|uⱼ|²)^{3/2} / Σ‖∇uⱼ‖² on explicit orthonormal
// families, and the conversion between kinetic-energy and eigenvalue-sum
// constants.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lt4/sphere_spectrum.hpp"

namespace lt4 {

struct FamilyRatio {
    std::string family_id;
    std::int64_t members = 0;
    double lhs = 0.0;  // ∫ (Σ|uⱼ|²)^{3/2}
    double rhs = 0.0;  // Σ ∫ |∇uⱼ|²
    double ratio = 0.0;
    double upper_bound = 0.0;         // proven constant for the manifold
    bool zero_mode_included = false;  // the constant mode breaks the mean-zero hypothesis
    bool converged = true;            // quadrature refinement met its target
    int grid_points_per_axis = 0;     // finest grid on active axes (trig families)

    bool within_upper_bound() const noexcept { return ratio <= upper_bound; }
};

/// All harmonics of degree 1..M-1 on S⁴. Throws std::domain_error for M < 2.
FamilyRatio sphere_shell_family(std::int64_t M);

/// The (M+1)⁴ modes e^{im·x}/(4π²), m ∈ {0..M}⁴, optionally without m = 0.
/// Throws std::domain_error for M < 1.
FamilyRatio torus_box_family(std::int64_t M, bool include_zero_mode);

/// sup over 1 <= M <= max_M of the box-family ratio.
BestFiniteBound best_finite_torus_bound(std::int64_t max_M, bool include_zero_mode);

struct TorusBoxLimit {
    double closed_form = 0.0;  // 3/(16π²)
    double extrapolated = 0.0;
    std::array<std::int64_t, 3> nodes{100, 1000, 10000};
    std::array<double, 3> node_values{};
    double deviation = 0.0;
};

/// Extrapolates the mean-zero box ratio to M -> ∞ in powers of 1/M.
TorusBoxLimit torus_box_limit();

/// uⱼ(x) = (1/4π²) Σ_k coefficients[j][k] e^{i frequencies[k]·x} on T⁴ = [0, 2π)⁴.
struct TrigFamily {
    std::vector<std::array<int, 4>> frequencies;
    std::vector<std::vector<std::complex<double>>> coefficients;
};

inline constexpr double kGramTolerance = 1e-10;
inline constexpr int kMaxFrequencyComponent = 64;

/// max |⟨uᵢ, uⱼ⟩ - δᵢⱼ|. Does not validate shape.
double gram_deviation(const TrigFamily& family);

/// Throws std::invalid_argument unless the family is non-empty, rectangular,
/// has distinct non-zero frequencies with components up to
/// kMaxFrequencyComponent, and is orthonormal within kGramTolerance.
void validate(const TrigFamily& family);

inline constexpr double kTrigRefinementTol = 1e-8;
inline constexpr std::int64_t kMaxTrigGridPoints = std::int64_t{1} << 24;

/// Tensor trapezoid rule on grids doubled until two successive values of the
/// left side agree to kTrigRefinementTol; axes no frequency touches use one
/// point. Throws std::invalid_argument via validate and std::domain_error if
/// quad_points_per_axis < 2K + 2 for the largest component K.
FamilyRatio trig_family_ratio(const TrigFamily& family, int quad_points_per_axis);

/// Smallest admissible quad_points_per_axis for the family.
int minimal_quad_points(const TrigFamily& family);

/// Random family: up to max_frequencies distinct frequencies with components
/// in [-max_component, max_component], between 1 and F members,
/// orthonormalized by Gram-Schmidt.
TrigFamily random_trig_family(std::mt19937_64& rng, int max_frequencies = 8, int max_component = 2);

/// Real members √2 cos(k·x)/(4π²) and √2 sin(k·x)/(4π²) for each k. The
/// frequencies must be pairwise distinct up to sign.
TrigFamily cosine_sine_family(const std::vector<std::array<int, 4>>& frequencies);

/// L solving ((1 + d/2) L)^{1+2/d} ((1 + 2/d) K)^{1+d/2} = 1.
/// Throws std::domain_error for K <= 0 or d < 1.
double dual_constant(double K, int d);

/// K recovered from L under the same relation.
double dual_constant_inverse(double L, int d);

}  // namespace lt4
