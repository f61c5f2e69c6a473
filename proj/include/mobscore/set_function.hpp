// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mobscore/feature_set.hpp"

namespace mobscore {

/// A dense real-valued function on all 2^d subsets of a d-feature universe.
/// Index b of the value table is the subset whose bitmask is b. One
/// SetFunction is one element of the attribution vector space; addition and
/// scaling are entrywise.
class SetFunction {
public:
    /// All-zero function.
    explicit SetFunction(int d, bool allow_large = false);

    /// Takes ownership of a dense table; values.size() must be exactly 2^d
    /// and every entry finite.
    SetFunction(int d, std::vector<double> values, bool allow_large = false);

    static SetFunction constant(int d, double value, bool allow_large = false);

    int dimension() const noexcept { return d_; }
    std::size_t size() const noexcept { return values_.size(); }
    FeatureSet full_set() const { return FeatureSet::full_set(d_); }

    double at(const FeatureSet& s) const;
    double at_mask(std::uint32_t mask) const { return values_[mask]; }
    double operator[](const FeatureSet& s) const { return at(s); }

    void set(const FeatureSet& s, double value);
    void set_mask(std::uint32_t mask, double value) { values_[mask] = value; }

    const std::vector<double>& values() const noexcept { return values_; }

    SetFunction& operator+=(const SetFunction& other);
    SetFunction& operator-=(const SetFunction& other);
    SetFunction& operator*=(double scalar);

    friend SetFunction operator+(SetFunction a, const SetFunction& b) { return a += b; }
    friend SetFunction operator-(SetFunction a, const SetFunction& b) { return a -= b; }
    friend SetFunction operator*(double c, SetFunction f) { return f *= c; }

    friend bool operator==(const SetFunction&, const SetFunction&) = default;

private:
    int d_ = 0;
    std::vector<double> values_;
};

/// Validated construction from an explicit subset->value mapping. Every
/// subset must be present unless a default fill value is supplied; duplicate
/// keys and non-finite values are rejected.
SetFunction make_set_function(int d,
                              const std::vector<std::pair<FeatureSet, double>>& entries,
                              std::optional<double> default_value = std::nullopt,
                              bool allow_large = false);

} // namespace mobscore
