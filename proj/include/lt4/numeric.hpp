// SPDX-License-Identifier: Apache-2.0
//
// Exact and compensated arithmetic helpers shared by the audit modules.

#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace lt4 {

using int128 = __int128;

std::string to_string(int128 value);

/// Neumaier-compensated accumulator. Summation order is the call order,
/// so results are reproducible for a fixed sequence of terms.
class CompensatedSum {
public:
    void add(long double term) noexcept;
    long double value() const noexcept { return sum_ + carry_; }

private:
    long double sum_ = 0;
    long double carry_ = 0;
};

/// Exact rational with a normalized 128-bit representation (den > 0,
/// gcd(num, den) == 1). Arithmetic throws std::overflow_error instead of
/// wrapping.
class Rational {
public:
    Rational() = default;
    Rational(int128 num, int128 den = 1);  // NOLINT(google-explicit-constructor)

    int128 num() const noexcept { return num_; }
    int128 den() const noexcept { return den_; }

    double to_double() const noexcept;
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    int128 num_ = 0;
    int128 den_ = 1;
};

/// Richardson extrapolation to h = 0 of values sampled at step sizes h,
/// using Neville's scheme for the interpolating polynomial in h.
/// Throws std::invalid_argument on empty or mismatched input.
double extrapolate_to_zero(std::span<const double> h, std::span<const double> values);

int128 checked_add(int128 a, int128 b);
int128 checked_mul(int128 a, int128 b);

}  // namespace lt4
