// SPDX-License-Identifier: Apache-2.0

#include "lt4/quadrature.hpp"

#include "lt4/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lt4 {

namespace {

// Kronrod abscissae on [-1, 1]; odd indices are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod15(const std::function<double(double)>& g, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = g(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_kronrod = std::fabs(kronrod);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<std::size_t>(j)];
        f1[j] = g(center - dx);
        f2[j] = g(center + dx);
        const double w = kWgk[static_cast<std::size_t>(j)];
        kronrod += w * (f1[j] + f2[j]);
        abs_kronrod += w * (std::fabs(f1[j]) + std::fabs(f2[j]));
        if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * (f1[j] + f2[j]);
    }
    const double mean = 0.5 * kronrod;
    double asc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        asc += kWgk[static_cast<std::size_t>(j)] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));

    const double value = kronrod * half;
    double error = std::fabs((kronrod - gauss) * half);
    const double res_asc = asc * std::fabs(half);
    // QUADPACK error scaling.
    if (res_asc != 0.0 && error != 0.0) error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
    const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_kronrod * std::fabs(half);
    error = std::max(error, round_floor);
    return {lo, hi, value, error};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                           int max_subdivisions) {
    if (!(tol > 0.0)) throw std::domain_error("integrate: tolerance must be positive");
    if (!(a < b)) throw std::domain_error("integrate: lower limit must be below upper limit");
    if (!std::isfinite(a)) throw std::domain_error("integrate: lower limit must be finite");

    std::function<double(double)> g;
    double lo = a;
    double hi = b;
    if (std::isinf(b)) {
        g = [&f, a](double s) {
            const double one_minus = 1.0 - s;
            return f(a + s / one_minus) / (one_minus * one_minus);
        };
        lo = 0.0;
        hi = 1.0;
    } else {
        g = f;
    }

    std::vector<Segment> work;
    work.push_back(gauss_kronrod15(g, lo, hi));
    double total = work.front().value;
    double total_error = work.front().error;
    int subdivisions = 0;
    while (total_error > tol && subdivisions < max_subdivisions) {
        const Segment worst = work.front();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) break;  // interval exhausted at machine precision
        std::pop_heap(work.begin(), work.end());
        work.pop_back();
        work.push_back(gauss_kronrod15(g, worst.lo, mid));
        std::push_heap(work.begin(), work.end());
        work.push_back(gauss_kronrod15(g, mid, worst.hi));
        std::push_heap(work.begin(), work.end());
        ++subdivisions;
        CompensatedSum value_sum;
        CompensatedSum error_sum;
        for (const auto& seg : work) {
            value_sum.add(seg.value);
            error_sum.add(seg.error);
        }
        total = static_cast<double>(value_sum.value());
        total_error = static_cast<double>(error_sum.value());
    }
    return {total, total_error, subdivisions, total_error <= tol};
}

}  // namespace lt4
