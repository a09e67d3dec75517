// SPDX-License-Identifier: Apache-2.0

#include "lt4/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lt4 {

double gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("gamma: argument must be positive and finite");
    return std::tgamma(x);
}

double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta: arguments must be positive");
    if (a + b < 170.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

namespace {

struct BernoulliEntry {
    std::int64_t num;
    std::int64_t den;
};

// Even indices beyond B_1; odd indices > 1 are zero.
constexpr std::array<BernoulliEntry, 17> kEvenBernoulli{{
    {1, 1},
    {1, 6},
    {-1, 30},
    {1, 42},
    {-1, 30},
    {5, 66},
    {-691, 2730},
    {7, 6},
    {-3617, 510},
    {43867, 798},
    {-174611, 330},
    {854513, 138},
    {-236364091, 2730},
    {8553103, 6},
    {-23749461029, 870},
    {8615841276005, 14322},
    {-7709321041217, 510},
}};

}  // namespace

Rational bernoulli(int j) {
    if (j < 0 || j > kMaxBernoulliIndex)
        throw std::out_of_range("bernoulli: index " + std::to_string(j) + " outside [0, 32]");
    if (j == 1) return Rational(-1, 2);
    if (j % 2 == 1) return Rational(0);
    const auto& e = kEvenBernoulli[static_cast<std::size_t>(j / 2)];
    return Rational(e.num, e.den);
}

}  // namespace lt4
