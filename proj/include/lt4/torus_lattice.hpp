// SPDX-License-Identifier: Apache-2.0
//
// Lattice sums over Z⁴ \ {0} for the torus upper bound, grouped by shells
// of constant squared norm, and their comparison with the continuum
// integral ν⁴ ∫ φ.

#pragma once

#include <cstdint>
#include <vector>

#include "lt4/quadrature.hpp"
#include "lt4/series.hpp"

namespace lt4 {

/// counts[n] = r₄(n) = #{k ∈ Z⁴ : |k|² = n} for 0 <= n <= max_norm_sq.
struct LatticeShellTable {
    std::int64_t max_norm_sq = 0;
    std::vector<std::int64_t> counts;

    std::int64_t operator[](std::int64_t n) const { return counts.at(static_cast<std::size_t>(n)); }
};

inline constexpr std::int64_t kMaxEnumeratedNorm = 1 << 16;

/// Counts by enumerating the two-square representations over the bounding
/// square and convolving, then checks every entry against r4_jacobi.
/// Throws std::domain_error for max_norm_sq < 1, std::range_error above
/// kMaxEnumeratedNorm, std::logic_error on a mismatch.
LatticeShellTable r4_table(std::int64_t max_norm_sq);

/// 8 Σ_{d | n, 4 ∤ d} d, with r4_jacobi(0) = 1.
std::int64_t r4_jacobi(std::int64_t n);

inline constexpr std::int64_t kMaxSieveNorm = std::int64_t{1} << 24;

/// r₄(n) for all n <= max_norm_sq from a divisor-sum sieve.
class R4Sieve {
public:
    /// Throws std::domain_error for max_norm_sq < 1, std::range_error above kMaxSieveNorm.
    explicit R4Sieve(std::int64_t max_norm_sq);

    std::int64_t max_norm_sq() const noexcept { return static_cast<std::int64_t>(counts_.size()) - 1; }
    std::int64_t operator[](std::int64_t n) const { return counts_[static_cast<std::size_t>(n)]; }

private:
    std::vector<std::uint32_t> counts_;
};

/// φ as a function of |x|²: 1/(1 + (|x|²)³)².
double phi(double x_norm_sq);

inline constexpr double kDefaultLatticeRelTol = 1e-10;

/// Σ_{k ≠ 0} φ(k/ν) = Σ_{n>=1} r₄(n) φ(n/ν²), summed shell by shell until
/// the Abel-summation tail bound is at most rel_tol times the partial sum.
/// The sieve grows as needed up to kMaxSieveNorm; past that the estimate
/// is returned unconverged.
SeriesEstimate lattice_sum(double nu, double rel_tol = kDefaultLatticeRelTol);

/// Same, limited to the shells available in `sieve`.
SeriesEstimate lattice_sum(double nu, double rel_tol, const R4Sieve& sieve);

/// Upper bound on Σ_{n>N} r₄(n) φ(n/ν²).
double lattice_tail_bound(double nu, std::int64_t N);

/// ∫_{R⁴} φ = ω₃ B(2/3,4/3)/6.
double continuum_integral();

/// ω₃ ∫₀^∞ r³/(1+r⁶)² dr by adaptive quadrature.
QuadratureResult continuum_integral_quadrature();

struct PoissonAudit {
    double nu = 0.0;
    SeriesEstimate lattice_value;
    double continuum_value = 0.0;  // ν⁴ ∫ φ
    double gap = 0.0;              // lattice - continuum
    double relative_gap = 0.0;     // |gap| / continuum
    bool verdict = false;          // lattice + tail <= continuum
};

PoissonAudit poisson_audit(double nu, double rel_tol = kDefaultLatticeRelTol);

struct PoissonGridAudit {
    double nu_max = 0.0;
    double step = 0.0;
    std::vector<PoissonAudit> points;
    double worst_margin = 0.0;  // min of (continuum - lattice - tail)/continuum
    double worst_margin_nu = 0.0;
    bool increasing = false;    // lattice values strictly increase along the grid
    bool verdict = false;
};

/// Audits ν = step, 2·step, ... <= nu_max with one shared sieve.
PoissonGridAudit poisson_audit_grid(double nu_max, double step, double rel_tol = kDefaultLatticeRelTol);

/// 3√C̄ = √B(2/3,4/3)/9.
double torus_upper_bound();

}  // namespace lt4
