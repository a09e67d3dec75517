// SPDX-License-Identifier: Apache-2.0

#include "lt4/sphere_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lt4/constants.hpp"

namespace lt4 {

namespace {

int128 binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    int128 result = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        // result * (n - i) is divisible by (i + 1) at every step.
        result = checked_mul(result, n - i) / (i + 1);
    }
    return result;
}

// Exact sums of the d = 4 shell terms over n in [first, last).
ShellSums accumulate(std::int64_t first, std::int64_t last, ShellSums acc) {
    for (std::int64_t n = first; n < last; ++n) {
        const int128 p_term = static_cast<int128>(2 * n + 3) * (n + 2) * (n + 1);
        const int128 q_term = checked_mul(p_term, static_cast<int128>(n) * (n + 3));
        acc.P = checked_add(acc.P, p_term);
        acc.Q = checked_add(acc.Q, q_term);
    }
    acc.M = last;
    return acc;
}

std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

// Monomial coefficients of the Lagrange interpolant through (xs[i], ys[i]).
std::vector<Rational> interpolate(const std::vector<std::int64_t>& xs, const std::vector<int128>& ys) {
    std::vector<Rational> coeffs(xs.size(), Rational(0));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<Rational> basis{Rational(1)};
        Rational denom(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = multiply(basis, {Rational(-xs[j]), Rational(1)});
            denom = denom * Rational(xs[i] - xs[j]);
        }
        const Rational scale = Rational(ys[i]) / denom;
        for (std::size_t k = 0; k < basis.size(); ++k) coeffs[k] = coeffs[k] + basis[k] * scale;
    }
    return coeffs;
}

}  // namespace

SphereShell shell(int d, std::int64_t n) {
    if (d < 2) throw std::domain_error("shell: dimension must be at least 2");
    if (n < 0) throw std::domain_error("shell: degree must be non-negative");
    SphereShell s;
    s.d = d;
    s.n = n;
    s.eigenvalue = checked_mul(n, static_cast<int128>(n) + d - 1);
    s.multiplicity = binomial(d + n, n) - (n >= 2 ? binomial(d + n - 2, n - 2) : 0);
    return s;
}

ShellSums shell_sums(std::int64_t M) {
    if (M < 2) throw std::domain_error("shell_sums: M must be at least 2");
    if (M > kMaxShellIndex)
        throw std::range_error("shell_sums: M = " + std::to_string(M) + " exceeds the 128-bit range");
    // The summands are 6 α_n and 6 Λ_n α_n, so no division is needed.
    return accumulate(1, M, ShellSums{});
}

long double lower_bound_ratio(const ShellSums& sums) {
    const long double m = static_cast<long double>(sums.M);
    const long double m2 = m * m;
    const long double p = static_cast<long double>(sums.P) / (m2 * m2);
    const long double q = static_cast<long double>(sums.Q) / (m2 * m2 * m2);
    const long double omega4 = 8.0L * static_cast<long double>(kPi) * static_cast<long double>(kPi) / 3.0L;
    return p * p * p / (6.0L * omega4 * q * q);
}

double lower_bound_ratio(std::int64_t M) { return static_cast<double>(lower_bound_ratio(shell_sums(M))); }

LowerBoundLimit lower_bound_limit() {
    LowerBoundLimit out;
    out.nodes = {1'000, 10'000, 100'000, 1'000'000};
    out.closed_form = static_cast<double>(3.0L / (8.0L * std::sqrt(2.0L) * 3.141592653589793238462643383279502884L));

    // One pass over the shells, snapshotting at each node.
    std::vector<double> h;
    std::vector<double> values;
    ShellSums running{};
    std::int64_t next = 1;
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        running = accumulate(next, out.nodes[i], running);
        next = out.nodes[i];
        const double root = static_cast<double>(std::sqrt(lower_bound_ratio(running)));
        out.node_values[i] = root;
        h.push_back(1.0 / static_cast<double>(out.nodes[i]));
        values.push_back(root);
    }
    out.extrapolated = extrapolate_to_zero(h, values);
    out.deviation = std::fabs(out.closed_form - out.extrapolated);
    out.consistent = out.deviation <= kLimitFailureThreshold;
    return out;
}

BestFiniteBound best_finite_sphere_bound(std::int64_t max_M) {
    if (max_M < 2) throw std::domain_error("best_finite_sphere_bound: max_M must be at least 2");
    BestFiniteBound best;
    ShellSums running{};
    for (std::int64_t M = 2; M <= max_M; ++M) {
        running = accumulate(M - 1, M, running);
        const double value = static_cast<double>(std::sqrt(lower_bound_ratio(running)));
        if (value > best.value) best = {value, M};
    }
    return best;
}

ShellPolynomials shell_polynomials() {
    std::vector<std::int64_t> xs;
    std::vector<int128> ps;
    std::vector<int128> qs;
    for (std::int64_t M = 2; M <= 8; ++M) {
        const ShellSums s = shell_sums(M);
        xs.push_back(M);
        ps.push_back(s.P);
        qs.push_back(s.Q);
    }
    const auto p = interpolate(xs, ps);
    const auto q = interpolate(xs, qs);
    if (!(p[5] == Rational(0)) || !(p[6] == Rational(0)))
        throw std::logic_error("shell_polynomials: P interpolant is not quartic");
    ShellPolynomials out;
    std::copy_n(p.begin(), 5, out.P.begin());
    std::copy_n(q.begin(), 7, out.Q.begin());
    return out;
}

Rational evaluate(std::span<const Rational> coefficients, std::int64_t x) {
    Rational acc(0);
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * Rational(x) + *it;
    return acc;
}

}  // namespace lt4
