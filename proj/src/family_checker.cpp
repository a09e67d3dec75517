// SPDX-License-Identifier: Apache-2.0

#include "lt4/family_checker.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "lt4/constants.hpp"
#include "lt4/numeric.hpp"
#include "lt4/sphere_momentum.hpp"
#include "lt4/torus_lattice.hpp"

namespace lt4 {

namespace {

using cplx = std::complex<double>;

constexpr std::int64_t kMaxBoxIndex = 1'000'000;

long double box_ratio(std::int64_t M, bool include_zero_mode, long double* lhs_out = nullptr,
                      long double* rhs_out = nullptr) {
    const int128 side = M + 1;
    const int128 count = side * side * side * side - (include_zero_mode ? 0 : 1);
    // Σ_{m ∈ {0..M}⁴} |m|² = 4 (M+1)³ Σ_{j<=M} j².
    const int128 squares = static_cast<int128>(M) * (M + 1) * (2 * M + 1) / 6;
    const int128 gradient = 4 * side * side * side * squares;
    const long double c = static_cast<long double>(count);
    const long double lhs = c * std::sqrt(c) / (4.0L * static_cast<long double>(kPi) * static_cast<long double>(kPi));
    const long double rhs = static_cast<long double>(gradient);
    if (lhs_out) *lhs_out = lhs;
    if (rhs_out) *rhs_out = rhs;
    return lhs / rhs;
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::conj(b[k]);
    return s;
}

// Row-major tensor with four axes.
struct Tensor {
    std::array<std::size_t, 4> dims{};
    std::vector<cplx> data;
};

// Replaces the coefficient axis `axis` (difference frequencies -2B..2B) by
// n grid samples at x_i = 2π i/n.
Tensor transform_axis(const Tensor& in, std::size_t axis, int bandwidth, std::size_t n) {
    const std::size_t s = in.dims[axis];
    std::vector<cplx> w(s * n);
    for (std::size_t a = 0; a < s; ++a)
        for (std::size_t i = 0; i < n; ++i) {
            const double freq = static_cast<double>(static_cast<int>(a) - 2 * bandwidth);
            w[a * n + i] = std::polar(1.0, freq * 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
        }
    std::size_t outer = 1;
    for (std::size_t d = 0; d < axis; ++d) outer *= in.dims[d];
    std::size_t inner_size = 1;
    for (std::size_t d = axis + 1; d < 4; ++d) inner_size *= in.dims[d];

    Tensor out;
    out.dims = in.dims;
    out.dims[axis] = n;
    out.data.assign(outer * n * inner_size, cplx{});
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t a = 0; a < s; ++a) {
            const cplx* src = &in.data[(o * s + a) * inner_size];
            for (std::size_t i = 0; i < n; ++i) {
                const cplx wi = w[a * n + i];
                cplx* dst = &out.data[(o * n + i) * inner_size];
                for (std::size_t r = 0; r < inner_size; ++r) dst[r] += wi * src[r];
            }
        }
    return out;
}

struct DensitySpectrum {
    std::array<int, 4> bandwidth{};  // max |k_d| per axis
    Tensor coefficients;              // Σ_j |u_j|² · 16π⁴ in difference frequencies
};

DensitySpectrum density_spectrum(const TrigFamily& family) {
    DensitySpectrum spec;
    for (const auto& k : family.frequencies)
        for (std::size_t d = 0; d < 4; ++d) spec.bandwidth[d] = std::max(spec.bandwidth[d], std::abs(k[d]));
    Tensor& t = spec.coefficients;
    for (std::size_t d = 0; d < 4; ++d) t.dims[d] = static_cast<std::size_t>(4 * spec.bandwidth[d] + 1);
    t.data.assign(t.dims[0] * t.dims[1] * t.dims[2] * t.dims[3], cplx{});

    const std::size_t F = family.frequencies.size();
    for (std::size_t k = 0; k < F; ++k)
        for (std::size_t l = 0; l < F; ++l) {
            cplx g = 0.0;
            for (const auto& row : family.coefficients) g += row[k] * std::conj(row[l]);
            std::size_t index = 0;
            for (std::size_t d = 0; d < 4; ++d) {
                const int a = family.frequencies[k][d] - family.frequencies[l][d] + 2 * spec.bandwidth[d];
                index = index * t.dims[d] + static_cast<std::size_t>(a);
            }
            t.data[index] += g;
        }
    return spec;
}

// ∫_{T⁴} ρ^{3/2} by the trapezoid rule with n points on each active axis.
double density_power_integral(const DensitySpectrum& spec, std::size_t n) {
    std::array<std::size_t, 4> points{};
    for (std::size_t d = 0; d < 4; ++d) points[d] = spec.bandwidth[d] > 0 ? n : 1;

    Tensor t = spec.coefficients;
    for (std::size_t axis = 3; axis >= 1; --axis) t = transform_axis(t, axis, spec.bandwidth[axis], points[axis]);

    const std::size_t s1 = t.dims[0];
    const std::size_t slice = points[1] * points[2] * points[3];
    std::vector<cplx> w1(s1 * points[0]);
    for (std::size_t a = 0; a < s1; ++a)
        for (std::size_t i = 0; i < points[0]; ++i) {
            const double freq = static_cast<double>(static_cast<int>(a) - 2 * spec.bandwidth[0]);
            w1[a * points[0] + i] =
                std::polar(1.0, freq * 2.0 * kPi * static_cast<double>(i) / static_cast<double>(points[0]));
        }

    const double scale = 1.0 / (16.0 * kPi * kPi * kPi * kPi);
    std::vector<long double> partial(points[0], 0.0L);
    auto work = [&](std::size_t first, std::size_t last) {
        std::vector<cplx> values(slice);
        for (std::size_t i1 = first; i1 < last; ++i1) {
            std::fill(values.begin(), values.end(), cplx{});
            for (std::size_t a = 0; a < s1; ++a) {
                const cplx wa = w1[a * points[0] + i1];
                const cplx* src = &t.data[a * slice];
                for (std::size_t r = 0; r < slice; ++r) values[r] += wa * src[r];
            }
            CompensatedSum sum;
            for (const cplx& v : values) {
                const double rho = std::max(0.0, v.real() * scale);
                sum.add(rho * std::sqrt(rho));
            }
            partial[i1] = sum.value();
        }
    };

    // Tiles over the first axis; the per-slice partials are reduced in a
    // fixed order so the result does not depend on the thread count.
    const std::size_t threads =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(points[0], 1));
    if (threads == 1) {
        work(0, points[0]);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (points[0] + threads - 1) / threads;
        for (std::size_t first = 0; first < points[0]; first += chunk)
            pool.emplace_back(work, first, std::min(first + chunk, points[0]));
        for (auto& th : pool) th.join();
    }
    CompensatedSum total;
    for (long double p : partial) total.add(p);
    double cell = 1.0;
    for (std::size_t d = 0; d < 4; ++d) cell *= 2.0 * kPi / static_cast<double>(points[d]);
    return static_cast<double>(total.value()) * cell;
}

}  // namespace

FamilyRatio sphere_shell_family(std::int64_t M) {
    const ShellSums sums = shell_sums(M);
    const long double omega4 = constants().omega4;
    const long double density = static_cast<long double>(sums.P) / (6.0L * omega4);
    FamilyRatio out;
    out.family_id = "sphere-shells M=" + std::to_string(M);
    out.members = static_cast<std::int64_t>(sums.P / 6);
    out.lhs = static_cast<double>(omega4 * density * std::sqrt(density));
    out.rhs = static_cast<double>(static_cast<long double>(sums.Q) / 6.0L);
    out.ratio = static_cast<double>(omega4 * density * std::sqrt(density) / (static_cast<long double>(sums.Q) / 6.0L));
    out.upper_bound = sphere_upper_bound();
    return out;
}

FamilyRatio torus_box_family(std::int64_t M, bool include_zero_mode) {
    if (M < 1) throw std::domain_error("torus_box_family: M must be at least 1");
    if (M > kMaxBoxIndex) throw std::range_error("torus_box_family: M too large");
    long double lhs = 0.0L;
    long double rhs = 0.0L;
    FamilyRatio out;
    out.ratio = static_cast<double>(box_ratio(M, include_zero_mode, &lhs, &rhs));
    out.lhs = static_cast<double>(lhs);
    out.rhs = static_cast<double>(rhs);
    out.family_id = "torus-box M=" + std::to_string(M) + (include_zero_mode ? " with zero mode" : "");
    const std::int64_t side = M + 1;
    out.members = side * side * side * side - (include_zero_mode ? 0 : 1);
    out.zero_mode_included = include_zero_mode;
    out.upper_bound = torus_upper_bound();
    return out;
}

BestFiniteBound best_finite_torus_bound(std::int64_t max_M, bool include_zero_mode) {
    if (max_M < 1) throw std::domain_error("best_finite_torus_bound: max_M must be at least 1");
    BestFiniteBound best;
    for (std::int64_t M = 1; M <= max_M; ++M) {
        const double r = static_cast<double>(box_ratio(M, include_zero_mode));
        if (r > best.value) best = {r, M};
    }
    return best;
}

TorusBoxLimit torus_box_limit() {
    TorusBoxLimit out;
    out.closed_form = 3.0 / (16.0 * kPi * kPi);
    std::array<double, 3> h{};
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        out.node_values[i] = static_cast<double>(box_ratio(out.nodes[i], false));
        h[i] = 1.0 / static_cast<double>(out.nodes[i]);
    }
    out.extrapolated = extrapolate_to_zero(h, out.node_values);
    out.deviation = std::fabs(out.extrapolated - out.closed_form);
    return out;
}

double gram_deviation(const TrigFamily& family) {
    double worst = 0.0;
    const auto& rows = family.coefficients;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) {
            const cplx g = inner(rows[i], rows[j]) - (i == j ? 1.0 : 0.0);
            worst = std::max(worst, std::abs(g));
        }
    return worst;
}

void validate(const TrigFamily& family) {
    if (family.frequencies.empty()) throw std::invalid_argument("trig family has no frequencies");
    if (family.coefficients.empty()) throw std::invalid_argument("trig family has no members");
    std::set<std::array<int, 4>> seen;
    for (const auto& k : family.frequencies) {
        if (k == std::array<int, 4>{0, 0, 0, 0})
            throw std::invalid_argument("trig family contains the zero frequency");
        for (int c : k)
            if (std::abs(c) > kMaxFrequencyComponent)
                throw std::invalid_argument("trig family frequency component exceeds " +
                                            std::to_string(kMaxFrequencyComponent));
        if (!seen.insert(k).second) throw std::invalid_argument("trig family has repeated frequencies");
    }
    for (const auto& row : family.coefficients)
        if (row.size() != family.frequencies.size())
            throw std::invalid_argument("trig family coefficient row has the wrong length");
    const double dev = gram_deviation(family);
    if (!(dev <= kGramTolerance))
        throw std::invalid_argument("trig family is not orthonormal (Gram deviation " + std::to_string(dev) + ")");
}

int minimal_quad_points(const TrigFamily& family) {
    int k_max = 0;
    for (const auto& k : family.frequencies)
        for (int c : k) k_max = std::max(k_max, std::abs(c));
    return 2 * k_max + 2;
}

FamilyRatio trig_family_ratio(const TrigFamily& family, int quad_points_per_axis) {
    validate(family);
    if (quad_points_per_axis < minimal_quad_points(family))
        throw std::domain_error("trig_family_ratio: need at least " + std::to_string(minimal_quad_points(family)) +
                                " points per axis");
    FamilyRatio out;
    out.family_id = "trig F=" + std::to_string(family.frequencies.size()) +
                    " N=" + std::to_string(family.coefficients.size());
    out.members = static_cast<std::int64_t>(family.coefficients.size());
    out.upper_bound = torus_upper_bound();

    CompensatedSum gradient;
    for (const auto& row : family.coefficients)
        for (std::size_t k = 0; k < row.size(); ++k) {
            const auto& f = family.frequencies[k];
            const long double k2 = static_cast<long double>(f[0] * f[0] + f[1] * f[1] + f[2] * f[2] + f[3] * f[3]);
            gradient.add(k2 * std::norm(row[k]));
        }
    out.rhs = static_cast<double>(gradient.value());

    const DensitySpectrum spec = density_spectrum(family);
    int active = 0;
    for (int b : spec.bandwidth) active += b > 0 ? 1 : 0;
    auto grid_size = [active](std::size_t n) {
        long double total = 1.0L;
        for (int d = 0; d < active; ++d) total *= static_cast<long double>(n);
        return total;
    };

    auto n = static_cast<std::size_t>(quad_points_per_axis);
    double previous = density_power_integral(spec, n);
    out.converged = false;
    for (;;) {
        const std::size_t next = 2 * n;
        if (grid_size(next) > static_cast<long double>(kMaxTrigGridPoints)) break;
        const double current = density_power_integral(spec, next);
        n = next;
        const bool agree = std::fabs(current - previous) <= kTrigRefinementTol * std::fabs(current);
        previous = current;
        if (agree) {
            out.converged = true;
            break;
        }
    }
    out.grid_points_per_axis = static_cast<int>(n);
    out.lhs = previous;
    out.ratio = out.lhs / out.rhs;
    return out;
}

TrigFamily random_trig_family(std::mt19937_64& rng, int max_frequencies, int max_component) {
    if (max_frequencies < 1 || max_component < 1)
        throw std::domain_error("random_trig_family: need at least one frequency and component range 1");
    std::uniform_int_distribution<int> count_dist(1, max_frequencies);
    std::uniform_int_distribution<int> component(-max_component, max_component);
    std::normal_distribution<double> normal(0.0, 1.0);

    const int F = count_dist(rng);
    std::set<std::array<int, 4>> chosen;
    TrigFamily family;
    while (static_cast<int>(family.frequencies.size()) < F) {
        std::array<int, 4> k{component(rng), component(rng), component(rng), component(rng)};
        if (k == std::array<int, 4>{0, 0, 0, 0} || !chosen.insert(k).second) continue;
        family.frequencies.push_back(k);
    }
    const int N = std::uniform_int_distribution<int>(1, F)(rng);
    for (int j = 0; j < N; ++j) {
        std::vector<cplx> row(static_cast<std::size_t>(F));
        for (auto& c : row) c = {normal(rng), normal(rng)};
        // Two Gram-Schmidt sweeps keep the rows orthonormal to rounding.
        for (int sweep = 0; sweep < 2; ++sweep)
            for (const auto& prev : family.coefficients) {
                const cplx p = inner(row, prev);
                for (std::size_t k = 0; k < row.size(); ++k) row[k] -= p * prev[k];
            }
        const double norm = std::sqrt(std::real(inner(row, row)));
        for (auto& c : row) c /= norm;
        family.coefficients.push_back(std::move(row));
    }
    return family;
}

TrigFamily cosine_sine_family(const std::vector<std::array<int, 4>>& frequencies) {
    TrigFamily family;
    for (const auto& k : frequencies) {
        family.frequencies.push_back(k);
        family.frequencies.push_back({-k[0], -k[1], -k[2], -k[3]});
    }
    const std::size_t F = family.frequencies.size();
    const double h = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        std::vector<cplx> cosine(F);
        std::vector<cplx> sine(F);
        cosine[2 * i] = h;
        cosine[2 * i + 1] = h;
        sine[2 * i] = cplx(0.0, -h);
        sine[2 * i + 1] = cplx(0.0, h);
        family.coefficients.push_back(std::move(cosine));
        family.coefficients.push_back(std::move(sine));
    }
    validate(family);
    return family;
}

double dual_constant(double K, int d) {
    if (!(K > 0.0)) throw std::domain_error("dual_constant: K must be positive");
    if (d < 1) throw std::domain_error("dual_constant: d must be at least 1");
    const double p = 1.0 + 2.0 / d;
    const double q = 1.0 + d / 2.0;
    return std::pow(p * K, -q / p) / q;
}

double dual_constant_inverse(double L, int d) {
    if (!(L > 0.0)) throw std::domain_error("dual_constant_inverse: L must be positive");
    if (d < 1) throw std::domain_error("dual_constant_inverse: d must be at least 1");
    const double p = 1.0 + 2.0 / d;
    const double q = 1.0 + d / 2.0;
    return std::pow(q * L, -p / q) / p;
}

}  // namespace lt4
