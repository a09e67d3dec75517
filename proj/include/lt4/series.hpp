// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace lt4 {

inline constexpr double kDefaultSeriesRelTol = 1e-10;

/// Partial sum of a positive-term series together with a rigorous bound on
/// the dropped tail: the true value lies in [value, value + tail_bound].
struct SeriesEstimate {
    double value = 0.0;
    std::int64_t terms_used = 0;
    double tail_bound = 0.0;
    double parameter = 0.0;  // E or ν at which the series was evaluated
    double tolerance = 0.0;  // absolute tail target requested

    bool converged() const noexcept { return tail_bound <= tolerance; }
};

}  // namespace lt4
