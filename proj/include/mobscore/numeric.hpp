// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>

namespace mobscore {

// Default tolerances for identity checks: relative 1e-9 with an absolute
// floor of 1e-12 near zero. All lattice arithmetic is plain double.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

inline bool nearly_equal(double a, double b, double rel = kRelTol, double abs = kAbsTol) {
    const double diff = std::fabs(a - b);
    if (diff <= abs) return true;
    return diff <= rel * std::max(std::fabs(a), std::fabs(b));
}

/// Exact for the small n used on the subset lattice (n <= 26).
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

} // namespace mobscore
