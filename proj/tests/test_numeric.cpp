// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <stdexcept>

#include "lt4/numeric.hpp"

using namespace lt4;

TEST_SUITE("numeric") {

TEST_CASE("compensated sum keeps a small term next to large cancelling ones") {
    CompensatedSum s;
    s.add(1e20L);
    s.add(1.0L);
    s.add(-1e20L);
    CHECK(s.value() == 1.0L);
}

TEST_CASE("int128 formatting covers the extremes") {
    const int128 max = ~(static_cast<int128>(1) << 127);
    CHECK(to_string(max) == "170141183460469231731687303715884105727");
    CHECK(to_string(-max - 1) == "-170141183460469231731687303715884105728");
    CHECK(to_string(0) == "0");
    CHECK(to_string(-42) == "-42");
}

TEST_CASE("rational arithmetic normalizes") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(3, 4) * Rational(8, 9) == Rational(2, 3));
    CHECK(Rational(1, 6) / Rational(1, 3) == Rational(1, 2));
    CHECK(Rational(-7, 3).str() == "-7/3");
    CHECK(Rational(10, 5).str() == "2");
    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("checked arithmetic refuses to wrap") {
    const int128 big = static_cast<int128>(1) << 100;
    CHECK_THROWS_AS(checked_mul(big, big), std::overflow_error);
    CHECK_THROWS_AS(checked_add(~(static_cast<int128>(1) << 127), 1), std::overflow_error);
    CHECK(checked_mul(-3, 7) == -21);
}

TEST_CASE("extrapolation is exact for polynomials of matching degree") {
    const std::array<double, 3> h{0.1, 0.05, 0.025};
    std::array<double, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) v[i] = 3.0 + 2.0 * h[i] + 5.0 * h[i] * h[i];
    CHECK(extrapolate_to_zero(h, v) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK_THROWS_AS(extrapolate_to_zero(std::span<const double>{}, std::span<const double>{}), std::invalid_argument);
}

}
