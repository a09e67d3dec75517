// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lt4/torus_lattice.hpp"
#include "oracles.hpp"

using namespace lt4;

namespace {

double box_lattice_sum(double nu, int R) {
    long double sum = 0.0L;
    for (int a = -R; a <= R; ++a)
        for (int b = -R; b <= R; ++b)
            for (int c = -R; c <= R; ++c)
                for (int d = -R; d <= R; ++d) {
                    const long double x = (a * a + b * b + c * c + d * d) / (nu * nu);
                    if (x == 0.0L) continue;
                    const long double w = 1.0L + x * x * x;
                    sum += 1.0L / (w * w);
                }
    return static_cast<double>(sum);
}

}  // namespace

TEST_SUITE("torus_lattice") {

TEST_CASE("small shell counts") {
    CHECK(r4_jacobi(0) == 1);
    CHECK(r4_jacobi(1) == 8);
    CHECK(r4_jacobi(2) == 24);
    CHECK(r4_jacobi(3) == 32);
    CHECK(r4_jacobi(4) == 24);
    CHECK(r4_jacobi(5) == 48);
    CHECK_THROWS_AS(r4_jacobi(-1), std::domain_error);
}

TEST_CASE("shell table against brute-force enumeration") {
    const std::int64_t N = 2500;
    const auto brute = oracle::r4_enumerated(N);
    const LatticeShellTable table = r4_table(N);
    REQUIRE(table.counts.size() == brute.size());
    for (std::int64_t n = 0; n <= N; ++n) CHECK(table[n] == brute[static_cast<std::size_t>(n)]);
}

TEST_CASE("shell table against the divisor formula up to 10^4") {
    const LatticeShellTable table = r4_table(10'000);
    std::int64_t ball = 0;
    for (std::int64_t n = 0; n <= 10'000; ++n) {
        CHECK(table[n] == oracle::r4_divisors(n));
        ball += table[n];
    }
    // Σ_{n<=N} r₄(n) counts the ball of radius √N, origin included.
    std::int64_t direct = 0;
    for (std::int64_t a = -100; a <= 100; ++a)
        for (std::int64_t b = -100; b <= 100; ++b)
            for (std::int64_t c = -100; c <= 100; ++c) {
                const std::int64_t rest = 10'000 - a * a - b * b - c * c;
                if (rest < 0) continue;
                direct += 2 * static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(rest)) + 1e-9)) + 1;
            }
    CHECK(ball == direct);
}

TEST_CASE("shell table limits") {
    CHECK_THROWS_AS(r4_table(0), std::domain_error);
    CHECK_THROWS_AS(r4_table(kMaxEnumeratedNorm + 1), std::range_error);
    CHECK_THROWS_AS(R4Sieve(0), std::domain_error);
    CHECK_THROWS_AS(R4Sieve(kMaxSieveNorm + 1), std::range_error);
}

TEST_CASE("sieve agrees with the enumerated table") {
    const LatticeShellTable table = r4_table(kMaxEnumeratedNorm);
    const R4Sieve sieve(kMaxEnumeratedNorm);
    for (std::int64_t n = 0; n <= kMaxEnumeratedNorm; ++n) CHECK(sieve[n] == table[n]);
}

TEST_CASE("phi") {
    CHECK(phi(0.0) == 1.0);
    CHECK(phi(1.0) == 0.25);
    CHECK(phi(4.0) == doctest::Approx(1.0 / 4225.0).epsilon(1e-15).scale(0.0));
    CHECK_THROWS_AS(phi(-1.0), std::domain_error);
}

TEST_CASE("lattice sum at nu = 1 against a box sum") {
    const SeriesEstimate s = lattice_sum(1.0);
    CHECK(s.converged());
    CHECK(s.value == doctest::Approx(box_lattice_sum(1.0, 10)).epsilon(1e-9));
    CHECK(s.value == doctest::Approx(2.349).epsilon(1e-3));
}

TEST_CASE("lattice sum for small nu scales like nu^12") {
    // Every shell contributes at order ν¹²: φ(n/ν²) ≈ ν¹²/n⁶, and
    // Σ r₄(n)/n⁶ = 8(1 - 4⁻⁵) ζ(6) ζ(5).
    const double constant = 8.0 * (1.0 - std::pow(4.0, -5.0)) * oracle::zeta(6) * oracle::zeta(5);
    for (double nu : {0.1, 0.05, 0.02}) {
        const SeriesEstimate s = lattice_sum(nu);
        CHECK(s.converged());
        CHECK(s.value / std::pow(nu, 12) == doctest::Approx(constant).epsilon(1e-4));
    }
    // The nearest shell alone is not the leading term.
    CHECK(lattice_sum(0.05).value / (8.0 * std::pow(0.05, 12)) > 1.05);
}

TEST_CASE("tail bound encloses the converged value") {
    for (double nu : {0.5, 1.0, 3.0, 10.0}) {
        const SeriesEstimate loose = lattice_sum(nu, 1e-4);
        const SeriesEstimate tight = lattice_sum(nu, 1e-13);
        CHECK(loose.value <= tight.value);
        CHECK(loose.value + loose.tail_bound >= tight.value);
    }
    CHECK_THROWS_AS(lattice_sum(0.0), std::domain_error);
    CHECK_THROWS_AS(lattice_sum(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(lattice_tail_bound(1.0, 0), std::domain_error);
}

TEST_CASE("a short sieve yields an unconverged estimate") {
    const R4Sieve sieve(16);
    const SeriesEstimate s = lattice_sum(20.0, 1e-10, sieve);
    CHECK_FALSE(s.converged());
    CHECK(s.terms_used == 16);
}

TEST_CASE("continuum integral") {
    CHECK(continuum_integral() == doctest::Approx(3.9781072).epsilon(1e-7));
    CHECK(continuum_integral() == doctest::Approx(2.0 * oracle::pi * oracle::pi * oracle::beta_2_3_4_3() / 6.0).epsilon(1e-15));
    const QuadratureResult q = continuum_integral_quadrature();
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(continuum_integral()).epsilon(1e-10));
}

TEST_CASE("Poisson audits") {
    const PoissonAudit one = poisson_audit(1.0);
    CHECK(one.verdict);
    CHECK(one.gap == doctest::Approx(-1.629).epsilon(1e-3));
    const PoissonAudit small = poisson_audit(0.1);
    CHECK(small.verdict);
    CHECK(small.gap == doctest::Approx(-3.978e-4).epsilon(1e-3).scale(0.0));
    const PoissonAudit twenty = poisson_audit(20.0);
    CHECK(twenty.verdict);
    CHECK(twenty.relative_gap <= 1e-3);
        // Only the omitted origin term survives, up to exponentially small dual terms.
    CHECK(twenty.gap == doctest::Approx(-1.0).epsilon(1e-4));
    const PoissonAudit fifty = poisson_audit(50.0, 1e-9);
    CHECK(fifty.verdict);
    CHECK(fifty.relative_gap <= 1e-6);
}

TEST_CASE("Poisson grid") {
    const PoissonGridAudit grid = poisson_audit_grid(20.0, 0.1);
    CHECK(grid.points.size() == 200);
    CHECK(grid.verdict);
    CHECK(grid.increasing);
    CHECK(grid.worst_margin > 0.0);
    CHECK(grid.points.back().nu == doctest::Approx(20.0));
    CHECK_THROWS_AS(poisson_audit_grid(0.05, 0.1), std::domain_error);
}

TEST_CASE("torus upper bound") {
    const double b = oracle::beta_2_3_4_3();
    CHECK(torus_upper_bound() == doctest::Approx(std::sqrt(b) / 9.0).epsilon(1e-12));
    CHECK(std::round(torus_upper_bound() * 1e4) / 1e4 == doctest::Approx(0.1222).epsilon(1e-12));
    CHECK(torus_upper_bound() == doctest::Approx(0.122181790087919).epsilon(1e-14));
}

}
