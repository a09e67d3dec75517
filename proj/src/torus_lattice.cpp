// SPDX-License-Identifier: Apache-2.0

#include "lt4/torus_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "lt4/constants.hpp"
#include "lt4/numeric.hpp"

namespace lt4 {

std::int64_t r4_jacobi(std::int64_t n) {
    if (n < 0) throw std::domain_error("r4_jacobi: n must be non-negative");
    if (n == 0) return 1;
    std::int64_t sum = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        const std::int64_t e = n / d;
        if (d % 4 != 0) sum += d;
        if (e != d && e % 4 != 0) sum += e;
    }
    return 8 * sum;
}

LatticeShellTable r4_table(std::int64_t max_norm_sq) {
    if (max_norm_sq < 1) throw std::domain_error("r4_table: max_norm_sq must be at least 1");
    if (max_norm_sq > kMaxEnumeratedNorm)
        throw std::range_error("r4_table: max_norm_sq " + std::to_string(max_norm_sq) +
                               " exceeds the enumeration budget " + std::to_string(kMaxEnumeratedNorm));
    const auto size = static_cast<std::size_t>(max_norm_sq) + 1;

    // r₂ over the bounding square [-R, R]².
    std::vector<std::int64_t> r2(size, 0);
    const auto radius = static_cast<std::int64_t>(std::sqrt(static_cast<double>(max_norm_sq))) + 1;
    for (std::int64_t a = -radius; a <= radius; ++a)
        for (std::int64_t b = -radius; b <= radius; ++b) {
            const std::int64_t n = a * a + b * b;
            if (n <= max_norm_sq) ++r2[static_cast<std::size_t>(n)];
        }

    std::vector<std::pair<std::int64_t, std::int64_t>> support;
    for (std::size_t n = 0; n < size; ++n)
        if (r2[n] != 0) support.emplace_back(static_cast<std::int64_t>(n), r2[n]);

    LatticeShellTable table;
    table.max_norm_sq = max_norm_sq;
    table.counts.assign(size, 0);
    for (const auto& [i, ri] : support)
        for (const auto& [j, rj] : support) {
            if (i + j > max_norm_sq) break;
            table.counts[static_cast<std::size_t>(i + j)] += ri * rj;
        }

    for (std::int64_t n = 0; n <= max_norm_sq; ++n)
        if (table[n] != r4_jacobi(n))
            throw std::logic_error("r4_table: enumeration disagrees with the divisor formula at n = " +
                                   std::to_string(n));
    return table;
}

R4Sieve::R4Sieve(std::int64_t max_norm_sq) {
    if (max_norm_sq < 1) throw std::domain_error("R4Sieve: max_norm_sq must be at least 1");
    if (max_norm_sq > kMaxSieveNorm)
        throw std::range_error("R4Sieve: max_norm_sq " + std::to_string(max_norm_sq) + " exceeds " +
                               std::to_string(kMaxSieveNorm));
    const auto size = static_cast<std::size_t>(max_norm_sq) + 1;
    counts_.assign(size, 0);
    for (std::size_t d = 1; d < size; ++d) {
        if (d % 4 == 0) continue;
        for (std::size_t m = d; m < size; m += d) counts_[m] += static_cast<std::uint32_t>(d);
    }
    constexpr std::uint64_t kLimit = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t n = 1; n < size; ++n) {
        const std::uint64_t r = 8 * static_cast<std::uint64_t>(counts_[n]);
        if (r > kLimit) throw std::overflow_error("R4Sieve: count does not fit in 32 bits");
        counts_[n] = static_cast<std::uint32_t>(r);
    }
    counts_[0] = 1;
}

double phi(double x_norm_sq) {
    if (x_norm_sq < 0.0) throw std::domain_error("phi: squared norm must be non-negative");
    const double d = 1.0 + x_norm_sq * x_norm_sq * x_norm_sq;
    return 1.0 / (d * d);
}

double lattice_tail_bound(double nu, std::int64_t N) {
    if (!(nu > 0.0)) throw std::domain_error("lattice_tail_bound: nu must be positive");
    if (N < 1) throw std::domain_error("lattice_tail_bound: N must be at least 1");
    // Points with |k|² <= x lie in unit cubes inside the ball of radius √x + 1,
    // so their count is at most A(x) = (π²/2)(√x + 1)⁴. Abel summation against
    // the decreasing f(x) = φ(x/ν²) <= ν¹²/x⁶ gives
    //   Σ_{n>N} r₄(n) f(n) <= A(N) f(N) + ∫_N^∞ A'(x) x⁻⁶ ν¹² dx.
    const double n = static_cast<double>(N);
    const double root = std::sqrt(n) + 1.0;
    const double count_bound = 0.5 * kPi * kPi * root * root * root * root;
    const double shrink = 1.0 + 1.0 / std::sqrt(n);
    const double nu2 = nu * nu;
    const double nu12 = nu2 * nu2 * nu2 * nu2 * nu2 * nu2;
    const double n2 = n * n;
    return count_bound * phi(n / nu2) + kPi * kPi * nu12 * shrink * shrink * shrink / (4.0 * n2 * n2);
}

SeriesEstimate lattice_sum(double nu, double rel_tol, const R4Sieve& sieve) {
    if (!(nu > 0.0)) throw std::domain_error("lattice_sum: nu must be positive");
    if (!(rel_tol > 0.0)) throw std::domain_error("lattice_sum: tolerance must be positive");
    SeriesEstimate out;
    out.parameter = nu;
    const double inv_nu2 = 1.0 / (nu * nu);
    CompensatedSum sum;
    const std::int64_t last = sieve.max_norm_sq();
    for (std::int64_t n = 1; n <= last; ++n) {
        sum.add(static_cast<long double>(sieve[n]) * phi(static_cast<double>(n) * inv_nu2));
        out.terms_used = n;
        // The bound is cheap but not free; checking every few shells is enough.
        if ((n & 7) != 0 && n != last) continue;
        out.tail_bound = lattice_tail_bound(nu, n);
        out.value = static_cast<double>(sum.value());
        out.tolerance = rel_tol * out.value;
        if (out.converged()) break;
    }
    return out;
}

SeriesEstimate lattice_sum(double nu, double rel_tol) {
    std::int64_t size = std::max<std::int64_t>(4096, static_cast<std::int64_t>(std::ceil(8.0 * nu * nu)));
    size = std::min(size, kMaxSieveNorm);
    for (;;) {
        const R4Sieve sieve(size);
        SeriesEstimate out = lattice_sum(nu, rel_tol, sieve);
        if (out.converged() || size == kMaxSieveNorm) return out;
        size = std::min(size * 4, kMaxSieveNorm);
    }
}

double continuum_integral() {
    const auto& c = constants();
    return c.omega3 * c.beta_2_3_4_3 / 6.0;
}

QuadratureResult continuum_integral_quadrature() {
    const double omega3 = constants().omega3;
    auto radial = [](double r) {
        const double r3 = r * r * r;
        const double d = 1.0 + r3 * r3;
        return r3 / (d * d);
    };
    const double target = continuum_integral() / omega3;
    const QuadratureResult head = integrate(radial, 0.0, 2.0, 1e-13 * target);
    const QuadratureResult tail = integrate(radial, 2.0, kInfinity, 1e-13 * target);
    QuadratureResult out;
    out.value = omega3 * (head.value + tail.value);
    out.error_estimate = omega3 * (head.error_estimate + tail.error_estimate);
    out.subdivisions = head.subdivisions + tail.subdivisions;
    out.converged = head.converged && tail.converged;
    return out;
}

namespace {

PoissonAudit make_audit(double nu, SeriesEstimate lattice) {
    PoissonAudit audit;
    audit.nu = nu;
    audit.lattice_value = lattice;
    const double nu2 = nu * nu;
    audit.continuum_value = nu2 * nu2 * continuum_integral();
    audit.gap = lattice.value - audit.continuum_value;
    audit.relative_gap = std::fabs(audit.gap) / audit.continuum_value;
    audit.verdict = lattice.converged() && lattice.value + lattice.tail_bound <= audit.continuum_value;
    return audit;
}

}  // namespace

PoissonAudit poisson_audit(double nu, double rel_tol) {
    if (!(nu > 0.0)) throw std::domain_error("poisson_audit: nu must be positive");
    return make_audit(nu, lattice_sum(nu, rel_tol));
}

PoissonGridAudit poisson_audit_grid(double nu_max, double step, double rel_tol) {
    if (!(step > 0.0) || !(nu_max >= step)) throw std::domain_error("poisson_audit_grid: need 0 < step <= nu_max");
    PoissonGridAudit out;
    out.nu_max = nu_max;
    out.step = step;
    const auto count = static_cast<std::int64_t>(std::floor(nu_max / step + 1e-9));

    // Size the shared sieve on the largest ν; smaller ν need fewer shells.
    const SeriesEstimate top = lattice_sum(static_cast<double>(count) * step, rel_tol);
    const R4Sieve sieve(std::max<std::int64_t>(top.terms_used, 1));

    out.verdict = true;
    out.increasing = true;
    out.worst_margin = kInfinity;
    for (std::int64_t k = 1; k <= count; ++k) {
        const double nu = static_cast<double>(k) * step;
        SeriesEstimate lattice = lattice_sum(nu, rel_tol, sieve);
        if (!lattice.converged()) lattice = lattice_sum(nu, rel_tol);
        PoissonAudit audit = make_audit(nu, lattice);
        const double margin =
            (audit.continuum_value - (lattice.value + lattice.tail_bound)) / audit.continuum_value;
        if (margin < out.worst_margin) {
            out.worst_margin = margin;
            out.worst_margin_nu = nu;
        }
        if (!out.points.empty() && !(lattice.value > out.points.back().lattice_value.value)) out.increasing = false;
        out.verdict = out.verdict && audit.verdict;
        out.points.push_back(std::move(audit));
    }
    out.verdict = out.verdict && out.increasing;
    return out;
}

double torus_upper_bound() { return 3.0 * std::sqrt(constants().cbar); }

}  // namespace lt4
