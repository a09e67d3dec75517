// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace lt4 {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Named constants of the sphere and torus kernel estimates.
struct ModelConstants {
    double rho;           // sphere kernel scale, 4π/(9√3)
    double mu;            // torus kernel scale, 4π/(9√3)
    double omega3;        // area of the unit 3-sphere, 2π²
    double omega4;        // area of the unit 4-sphere, 8π²/3
    double beta_2_3_4_3;  // B(2/3, 4/3) = 2π/(3√3)
    double c0;            // sphere remainder constant, 2B/729
    double cbar;          // torus remainder constant, B/729
};

/// All fields are computed once; the simplified forms of c0 and cbar are used.
const ModelConstants& constants();

/// c0 = B ρ² / (9 ω₄), evaluated literally rather than simplified.
double c0_unsimplified(const ModelConstants& c);

/// cbar = μ² ω₃ B / (96 π⁴), evaluated literally rather than simplified.
double cbar_unsimplified(const ModelConstants& c);

}  // namespace lt4
