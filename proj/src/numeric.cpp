// SPDX-License-Identifier: Apache-2.0

#include "lt4/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lt4 {

std::string to_string(int128 value) {
    if (value == 0) return "0";
    const bool negative = value < 0;
    // Work in the negative range so that the minimum value is representable.
    int128 v = negative ? value : -value;
    std::string digits;
    while (v != 0) {
        digits.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
        v /= 10;
    }
    if (negative) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

void CompensatedSum::add(long double term) noexcept {
    const long double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term))
        carry_ += (sum_ - t) + term;
    else
        carry_ += (term - t) + sum_;
    sum_ = t;
}

double extrapolate_to_zero(std::span<const double> h, std::span<const double> values) {
    if (h.empty() || h.size() != values.size())
        throw std::invalid_argument("extrapolate_to_zero: need matching, non-empty samples");
    std::vector<long double> table(values.begin(), values.end());
    const std::size_t n = table.size();
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const long double hi = h[i];
            const long double hj = h[i + level];
            table[i] = (hj * table[i] - hi * table[i + 1]) / (hj - hi);
        }
    }
    return static_cast<double>(table[0]);
}

int128 checked_add(int128 a, int128 b) {
    int128 out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("128-bit addition overflow");
    return out;
}

int128 checked_mul(int128 a, int128 b) {
    int128 out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("128-bit multiplication overflow");
    return out;
}

namespace {

int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const int128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

}  // namespace

Rational::Rational(int128 num, int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const int128 g = gcd128(num, den);
    num_ = g == 0 ? 0 : num / g;
    den_ = g == 0 ? 1 : den / g;
}

double Rational::to_double() const noexcept {
    return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const {
    if (den_ == 1) return to_string(num_);
    return to_string(num_) + "/" + to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    const int128 g = gcd128(a.den_, b.den_);
    const int128 da = a.den_ / g;
    const int128 db = b.den_ / g;
    return Rational(checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)),
                    checked_mul(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce first to keep intermediates small.
    const int128 g1 = gcd128(a.num_, b.den_);
    const int128 g2 = gcd128(b.num_, a.den_);
    const int128 n1 = g1 == 0 ? a.num_ : a.num_ / g1;
    const int128 d2 = g1 == 0 ? b.den_ : b.den_ / g1;
    const int128 n2 = g2 == 0 ? b.num_ : b.num_ / g2;
    const int128 d1 = g2 == 0 ? a.den_ : a.den_ / g2;
    return Rational(checked_mul(n1, n2), checked_mul(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * Rational(b.den_, b.num_);
}

}  // namespace lt4
