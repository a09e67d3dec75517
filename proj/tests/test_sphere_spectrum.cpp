// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lt4/constants.hpp"
#include "lt4/sphere_spectrum.hpp"
#include "oracles.hpp"

using namespace lt4;

namespace {

// Closed forms derived symbolically from Σ (n+1)(n+2)(2n+3)/6 and its
// eigenvalue-weighted version.
int128 p_closed(int128 M) { return (M * M * M * M + 4 * M * M * M + 5 * M * M + 2 * M - 12) / 2; }
int128 q_closed(int128 M) {
    const int128 M2 = M * M;
    return (M2 * M2 * M2 + 6 * M2 * M2 * M + 10 * M2 * M2 - 11 * M2 - 6 * M) / 3;
}

}  // namespace

TEST_SUITE("sphere_spectrum") {

TEST_CASE("first shells on S^4") {
    CHECK(shell(4, 0).eigenvalue == 0);
    CHECK(shell(4, 0).multiplicity == 1);
    CHECK(shell(4, 1).eigenvalue == 4);
    CHECK(shell(4, 1).multiplicity == 5);
    CHECK(shell(4, 2).eigenvalue == 10);
    CHECK(shell(4, 2).multiplicity == 14);
    for (std::int64_t n = 0; n < 200; ++n) {
        const int128 expected = static_cast<int128>(n + 1) * (n + 2) * (2 * n + 3) / 6;
        CHECK(shell(4, n).multiplicity == expected);
    }
}

TEST_CASE("shells in other dimensions") {
    for (std::int64_t n = 0; n < 50; ++n) {
        CHECK(shell(2, n).multiplicity == 2 * n + 1);
        CHECK(shell(2, n).eigenvalue == n * (n + 1));
        CHECK(shell(3, n).multiplicity == (n + 1) * (n + 1));
    }
    CHECK_THROWS_AS(shell(1, 3), std::domain_error);
    CHECK_THROWS_AS(shell(4, -1), std::domain_error);
}

TEST_CASE("shell sums against their closed forms") {
    CHECK(shell_sums(2).P == 30);
    CHECK(shell_sums(2).Q == 120);
    CHECK(shell_sums(3).P == 114);
    CHECK(shell_sums(3).Q == 960);
    for (std::int64_t M = 2; M <= 300; ++M) {
        const ShellSums s = shell_sums(M);
        CHECK(s.P == p_closed(M));
        CHECK(s.Q == q_closed(M));
    }
    const ShellSums big = shell_sums(1'000'000);
    CHECK(big.P == p_closed(1'000'000));
    CHECK(big.Q == q_closed(1'000'000));
}

TEST_CASE("shell sums reject out-of-range M") {
    CHECK_THROWS_AS(shell_sums(1), std::domain_error);
    CHECK_THROWS_AS(shell_sums(kMaxShellIndex + 1), std::range_error);
}

TEST_CASE("ratio at M = 2 and monotone decrease") {
    CHECK(lower_bound_ratio(2) == doctest::Approx(0.0118735762).epsilon(1e-9).scale(0.0));
    CHECK(std::sqrt(lower_bound_ratio(2)) == doctest::Approx(0.108965940587).epsilon(1e-11));
    CHECK(lower_bound_ratio(3) == doctest::Approx(0.0101801074).epsilon(1e-9).scale(0.0));
    double previous = lower_bound_ratio(2);
    for (std::int64_t M = 3; M <= 2000; ++M) {
        const double r = lower_bound_ratio(M);
        CHECK(r < previous);
        previous = r;
    }
}

TEST_CASE("limit of the shell bound") {
    const LowerBoundLimit limit = lower_bound_limit();
    const double closed = 3.0 / (8.0 * std::sqrt(2.0) * oracle::pi);
    CHECK(limit.closed_form == doctest::Approx(closed).epsilon(1e-15));
    CHECK(limit.closed_form == doctest::Approx(0.084404).epsilon(1e-5));
    CHECK(std::fabs(limit.extrapolated - closed) <= kLimitAgreementTol);
    CHECK(std::fabs(limit.node_values.back() - closed) <= kLimitFailureThreshold);
    CHECK(limit.consistent);
    // The Hölder limit 9/(128π²) is the square of the same constant.
    CHECK(closed * closed == doctest::Approx(9.0 / (128.0 * oracle::pi * oracle::pi)).epsilon(1e-14));
}

TEST_CASE("best finite bound sits at M = 2") {
    const BestFiniteBound best = best_finite_sphere_bound(100);
    CHECK(best.M == 2);
    CHECK(best.value == doctest::Approx(0.108965940587).epsilon(1e-11));
    CHECK_THROWS_AS(best_finite_sphere_bound(1), std::domain_error);
}

TEST_CASE("interpolated shell polynomials") {
    const ShellPolynomials poly = shell_polynomials();
    const std::array<Rational, 5> p{Rational(-6), Rational(1), Rational(5, 2), Rational(2), Rational(1, 2)};
    const std::array<Rational, 7> q{Rational(0),    Rational(-2), Rational(-11, 3), Rational(0),
                                    Rational(10, 3), Rational(2), Rational(1, 3)};
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(poly.P[i] == p[i]);
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(poly.Q[i] == q[i]);
    for (std::int64_t M : {9, 50, 1000, 123456}) {
        CHECK(evaluate(poly.P, M) == Rational(shell_sums(M).P));
        CHECK(evaluate(poly.Q, M) == Rational(shell_sums(M).Q));
    }
    // The cubic coefficient is 2, so ½M⁴ + 3M³ + ... does not match P.
    CHECK(evaluate(poly.P, 2) == Rational(30));
}

}
