// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lt4/family_checker.hpp"
#include "lt4/sphere_spectrum.hpp"
#include "oracles.hpp"

using namespace lt4;

namespace {

constexpr double kTorusUpper = 0.122181790087919;
constexpr double kSphereUpper = 0.172791144617357;

double constant_density_lhs(double members) { return members * std::sqrt(members) / (4.0 * oracle::pi * oracle::pi); }

}  // namespace

TEST_SUITE("family_checker") {

TEST_CASE("sphere shells at M = 2") {
    const FamilyRatio f = sphere_shell_family(2);
    const double omega4 = 8.0 * oracle::pi * oracle::pi / 3.0;
    CHECK(f.lhs == doctest::Approx(std::pow(5.0, 1.5) / std::sqrt(omega4)).epsilon(1e-14));
    CHECK(f.lhs == doctest::Approx(2.1793).epsilon(1e-4));
    CHECK(f.rhs == 20.0);
    CHECK(f.ratio == doctest::Approx(0.10897).epsilon(1e-4));
    CHECK(f.members == 5);
    CHECK(f.within_upper_bound());
    CHECK(f.upper_bound == doctest::Approx(kSphereUpper).epsilon(1e-14));
    CHECK_THROWS_AS(sphere_shell_family(1), std::domain_error);
}

TEST_CASE("sphere shells agree with the spectral ratio") {
    for (std::int64_t M = 2; M <= 100; ++M) {
        const FamilyRatio f = sphere_shell_family(M);
        CHECK(std::fabs(f.ratio * f.ratio - lower_bound_ratio(M)) / lower_bound_ratio(M) <= 1e-12);
        CHECK(f.ratio <= kSphereUpper);
    }
    CHECK(sphere_shell_family(1'000'000).ratio == doctest::Approx(0.08440).epsilon(1e-4));
}

TEST_CASE("torus boxes at M = 1") {
    const FamilyRatio with = torus_box_family(1, true);
    CHECK(with.lhs == doctest::Approx(64.0 / (4.0 * oracle::pi * oracle::pi)).epsilon(1e-14));
    CHECK(with.rhs == 32.0);
    CHECK(with.ratio == doctest::Approx(0.05066).epsilon(1e-4));
    CHECK(with.zero_mode_included);
    CHECK(with.members == 16);
    const FamilyRatio without = torus_box_family(1, false);
    CHECK(without.lhs == doctest::Approx(std::pow(15.0, 1.5) / (4.0 * oracle::pi * oracle::pi)).epsilon(1e-14));
    CHECK(without.lhs == doctest::Approx(1.4716).epsilon(1e-4));
    CHECK(without.rhs == 32.0);
    CHECK(without.ratio == doctest::Approx(0.04599).epsilon(1e-4));
    CHECK_FALSE(without.zero_mode_included);
    CHECK_THROWS_AS(torus_box_family(0, false), std::domain_error);
}

TEST_CASE("torus box gradient sums against enumeration") {
    for (int M = 1; M <= 6; ++M) {
        std::int64_t sum = 0;
        for (int a = 0; a <= M; ++a)
            for (int b = 0; b <= M; ++b)
                for (int c = 0; c <= M; ++c)
                    for (int d = 0; d <= M; ++d) sum += a * a + b * b + c * c + d * d;
        CHECK(torus_box_family(M, true).rhs == static_cast<double>(sum));
        CHECK(torus_box_family(M, false).rhs == static_cast<double>(sum));
    }
}

TEST_CASE("torus boxes stay below the upper bound and reach the limit") {
    for (std::int64_t M = 1; M <= 20; ++M) {
        CHECK(torus_box_family(M, false).within_upper_bound());
        CHECK(torus_box_family(M, true).within_upper_bound());
    }
    const TorusBoxLimit limit = torus_box_limit();
    CHECK(limit.closed_form == doctest::Approx(3.0 / (16.0 * oracle::pi * oracle::pi)).epsilon(1e-15));
    CHECK(limit.closed_form == doctest::Approx(0.0189977).epsilon(1e-5));
    CHECK(limit.deviation <= 1e-5);
    const BestFiniteBound best = best_finite_torus_bound(20, false);
    CHECK(best.M == 1);
    CHECK(best.value == doctest::Approx(0.0459862).epsilon(1e-5));
}

TEST_CASE("constant-density trig families match closed forms") {
    const TrigFamily single{{{1, 0, 0, 0}}, {{1.0}}};
    const FamilyRatio one = trig_family_ratio(single, 4);
    CHECK(one.converged);
    CHECK(one.lhs == doctest::Approx(constant_density_lhs(1)).epsilon(1e-10));
    CHECK(one.ratio == doctest::Approx(0.025330).epsilon(1e-4));

    const TrigFamily pair{{{1, 0, 0, 0}, {0, 1, 0, 0}}, {{1.0, 0.0}, {0.0, 1.0}}};
    const FamilyRatio two = trig_family_ratio(pair, 4);
    CHECK(two.lhs == doctest::Approx(constant_density_lhs(2)).epsilon(1e-10));
    CHECK(two.ratio == doctest::Approx(std::sqrt(2.0) / (4.0 * oracle::pi * oracle::pi)).epsilon(1e-10));

    const TrigFamily real = cosine_sine_family({{1, 0, 0, 0}, {0, 1, 1, 0}, {2, -1, 0, 1}});
    const FamilyRatio six = trig_family_ratio(real, minimal_quad_points(real));
    CHECK(six.members == 6);
    CHECK(six.lhs == doctest::Approx(constant_density_lhs(6)).epsilon(1e-10));
    CHECK(six.rhs == doctest::Approx(2.0 * (1 + 2 + 6)).epsilon(1e-14));
}

TEST_CASE("mixed family against its one-dimensional closed form") {
    // Density (2 + 2cos x₁)/(32π⁴); ∫₀^{2π} (2 + 2cos x)^{3/2} dx = 64/3.
    const double h = 1.0 / std::sqrt(2.0);
    const TrigFamily mixed{{{1, 0, 0, 0}, {2, 0, 0, 0}}, {{h, h}}};
    const FamilyRatio f = trig_family_ratio(mixed, 6);
    const double pi = oracle::pi;
    const double lhs = 8.0 * pi * pi * pi * (64.0 / 3.0) / std::pow(32.0 * pi * pi * pi * pi, 1.5);
    CHECK(f.converged);
    CHECK(f.rhs == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(f.lhs == doctest::Approx(lhs).epsilon(1e-8));
    CHECK(f.ratio < kTorusUpper);
}

TEST_CASE("member and frequency order do not matter") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 4; ++trial) {
        const TrigFamily family = random_trig_family(rng, 5, 2);
        TrigFamily reversed = family;
        std::reverse(reversed.coefficients.begin(), reversed.coefficients.end());
        TrigFamily permuted = family;
        std::reverse(permuted.frequencies.begin(), permuted.frequencies.end());
        for (auto& row : permuted.coefficients) std::reverse(row.begin(), row.end());
        const int q = minimal_quad_points(family);
        const FamilyRatio a = trig_family_ratio(family, q);
        const FamilyRatio b = trig_family_ratio(reversed, q);
        const FamilyRatio c = trig_family_ratio(permuted, q);
        CHECK(b.lhs == doctest::Approx(a.lhs).epsilon(1e-12));
        CHECK(c.lhs == doctest::Approx(a.lhs).epsilon(1e-12));
        CHECK(b.rhs == doctest::Approx(a.rhs).epsilon(1e-14));
        CHECK(c.ratio == doctest::Approx(a.ratio).epsilon(1e-12));
    }
}

TEST_CASE("random families are orthonormal and respect the bound") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        const TrigFamily family = random_trig_family(rng);
        CHECK(family.frequencies.size() <= 8);
        CHECK(gram_deviation(family) <= kGramTolerance);
        const FamilyRatio f = trig_family_ratio(family, std::max(8, minimal_quad_points(family)));
        CHECK(f.lhs > 0.0);
        CHECK(f.rhs > 0.0);
        CHECK(f.ratio <= kTorusUpper);
    }
}

TEST_CASE("trig family validation") {
    CHECK_THROWS_AS(validate(TrigFamily{{{0, 0, 0, 0}}, {{1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(TrigFamily{{{1, 0, 0, 0}, {1, 0, 0, 0}}, {{1.0, 0.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(TrigFamily{{{1, 0, 0, 0}}, {{2.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(TrigFamily{{{1, 0, 0, 0}, {0, 1, 0, 0}}, {{1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(TrigFamily{{{1, 0, 0, 0}}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(TrigFamily{{}, {{}}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(TrigFamily{{{kMaxFrequencyComponent + 1, 0, 0, 0}}, {{1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(TrigFamily{{{1, 0, 0, 0}, {2, 0, 0, 0}}, {{1.0, 0.0}, {1e-9, 1.0}}}),
                    std::invalid_argument);
    CHECK_NOTHROW(validate(TrigFamily{{{1, 0, 0, 0}, {2, 0, 0, 0}}, {{1.0, 0.0}, {1e-12, 1.0}}}));
    CHECK_THROWS_AS(trig_family_ratio(TrigFamily{{{3, 0, 0, 0}}, {{1.0}}}, 7), std::domain_error);
    CHECK_THROWS_AS(cosine_sine_family({{1, 0, 0, 0}, {-1, 0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("dual constants") {
    CHECK(dual_constant(2.0 / 3.0, 4) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(dual_constant(0.17279, 4) == doctest::Approx(4.962).epsilon(1e-3));
    for (double K : {0.01, 0.0844, 0.17279, 1.0, 5.0})
        CHECK(dual_constant(K, 4) == doctest::Approx(std::pow(1.5 * K, -2.0) / 3.0).epsilon(1e-14));
    for (int d = 1; d <= 8; ++d)
        for (double K : {0.02, 0.12218, 0.7, 3.0}) {
            const double L = dual_constant(K, d);
            const double p = 1.0 + 2.0 / d;
            const double q = 1.0 + d / 2.0;
            CHECK(std::pow(q * L, p) * std::pow(p * K, q) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::fabs(dual_constant_inverse(L, d) - K) / K <= 1e-12);
        }
    CHECK_THROWS_AS(dual_constant(0.0, 4), std::domain_error);
    CHECK_THROWS_AS(dual_constant(1.0, 0), std::domain_error);
    CHECK_THROWS_AS(dual_constant_inverse(-1.0, 4), std::domain_error);
}

}
