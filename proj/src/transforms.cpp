// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mobscore/transforms.hpp"

#include <bit>
#include <string>

namespace mobscore {

namespace {

void check_naive_dim(int d) {
    if (d > kNaiveTransformMaxDim) {
        throw ValidationError("naive transform is restricted to d <= " +
                              std::to_string(kNaiveTransformMaxDim) + ", got " + std::to_string(d));
    }
}

} // namespace

SetFunction zeta_transform(const SetFunction& f) {
    std::vector<double> v = f.values();
    const std::size_t n = v.size();
    for (int bit = 0; bit < f.dimension(); ++bit) {
        const std::size_t step = std::size_t{1} << bit;
        for (std::size_t mask = 0; mask < n; ++mask) {
            if (mask & step) v[mask] += v[mask ^ step];
        }
    }
    return SetFunction(f.dimension(), std::move(v), true);
}

SetFunction mobius_transform(const SetFunction& f) {
    std::vector<double> v = f.values();
    const std::size_t n = v.size();
    for (int bit = 0; bit < f.dimension(); ++bit) {
        const std::size_t step = std::size_t{1} << bit;
        for (std::size_t mask = 0; mask < n; ++mask) {
            if (mask & step) v[mask] -= v[mask ^ step];
        }
    }
    return SetFunction(f.dimension(), std::move(v), true);
}

SetFunction zeta_transform_naive(const SetFunction& f) {
    check_naive_dim(f.dimension());
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        double acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            if ((t & s) == t) acc += f.at_mask(static_cast<std::uint32_t>(t));
        }
        out[s] = acc;
    }
    return SetFunction(f.dimension(), std::move(out), true);
}

SetFunction mobius_transform_naive(const SetFunction& f) {
    check_naive_dim(f.dimension());
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        const int cs = std::popcount(s);
        double acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            if ((t & s) == t) {
                const double sign = ((cs - std::popcount(t)) % 2 == 0) ? 1.0 : -1.0;
                acc += sign * f.at_mask(static_cast<std::uint32_t>(t));
            }
        }
        out[s] = acc;
    }
    return SetFunction(f.dimension(), std::move(out), true);
}

} // namespace mobscore
