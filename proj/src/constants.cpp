// SPDX-License-Identifier: Apache-2.0

#include "lt4/constants.hpp"

#include <cmath>

#include "lt4/special_functions.hpp"

namespace lt4 {

namespace {

ModelConstants make_constants() {
    const long double pi = 3.141592653589793238462643383279502884L;
    const long double scale = 4.0L * pi / (9.0L * std::sqrt(3.0L));
    const double b = beta(2.0 / 3.0, 4.0 / 3.0);
    ModelConstants c{};
    c.rho = static_cast<double>(scale);
    c.mu = static_cast<double>(scale);
    c.omega3 = static_cast<double>(2.0L * pi * pi);
    c.omega4 = static_cast<double>(8.0L * pi * pi / 3.0L);
    c.beta_2_3_4_3 = b;
    c.c0 = 2.0 * b / 729.0;
    c.cbar = b / 729.0;
    return c;
}

}  // namespace

const ModelConstants& constants() {
    static const ModelConstants instance = make_constants();
    return instance;
}

double c0_unsimplified(const ModelConstants& c) {
    return c.beta_2_3_4_3 * c.rho * c.rho / (9.0 * c.omega4);
}

double cbar_unsimplified(const ModelConstants& c) {
    const double pi4 = kPi * kPi * kPi * kPi;
    return c.mu * c.mu * c.omega3 * c.beta_2_3_4_3 / (96.0 * pi4);
}

}  // namespace lt4
