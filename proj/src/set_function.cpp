// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mobscore/set_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mobscore {

namespace {

void check_finite(double value, std::uint32_t mask, int d) {
    if (!std::isfinite(value)) {
        throw ValidationError("non-finite value at subset " +
                              FeatureSet::from_mask(mask, d).to_string());
    }
}

} // namespace

SetFunction::SetFunction(int d, bool allow_large) : d_(d) {
    check_table_dimension(d, allow_large);
    values_.assign(std::size_t{1} << d, 0.0);
}

SetFunction::SetFunction(int d, std::vector<double> values, bool allow_large)
    : d_(d), values_(std::move(values)) {
    check_table_dimension(d, allow_large);
    if (values_.size() != (std::size_t{1} << d)) {
        throw ValidationError("value table for d=" + std::to_string(d) + " must have " +
                              std::to_string(std::size_t{1} << d) + " entries, got " +
                              std::to_string(values_.size()));
    }
    for (std::size_t m = 0; m < values_.size(); ++m) {
        check_finite(values_[m], static_cast<std::uint32_t>(m), d_);
    }
}

SetFunction SetFunction::constant(int d, double value, bool allow_large) {
    check_table_dimension(d, allow_large);
    check_finite(value, 0, d);
    SetFunction f(d, allow_large);
    f.values_.assign(std::size_t{1} << d, value);
    return f;
}

double SetFunction::at(const FeatureSet& s) const {
    if (s.width() != d_) {
        throw ValidationError("subset width " + std::to_string(s.width()) +
                              " does not match set-function dimension " + std::to_string(d_));
    }
    return values_[s.bits()];
}

void SetFunction::set(const FeatureSet& s, double value) {
    if (s.width() != d_) {
        throw ValidationError("subset width " + std::to_string(s.width()) +
                              " does not match set-function dimension " + std::to_string(d_));
    }
    values_[s.bits()] = value;
}

SetFunction& SetFunction::operator+=(const SetFunction& other) {
    if (other.d_ != d_) throw ValidationError("set-function dimension mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

SetFunction& SetFunction::operator-=(const SetFunction& other) {
    if (other.d_ != d_) throw ValidationError("set-function dimension mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

SetFunction& SetFunction::operator*=(double scalar) {
    for (double& v : values_) v *= scalar;
    return *this;
}

SetFunction make_set_function(int d,
                              const std::vector<std::pair<FeatureSet, double>>& entries,
                              std::optional<double> default_value,
                              bool allow_large) {
    check_table_dimension(d, allow_large);
    const std::size_t n = std::size_t{1} << d;
    std::vector<double> values(n, default_value.value_or(0.0));
    std::vector<bool> seen(n, false);
    if (default_value && !std::isfinite(*default_value)) {
        throw ValidationError("non-finite default value");
    }
    for (const auto& [subset, value] : entries) {
        if (subset.width() != d) {
            throw ValidationError("subset width " + std::to_string(subset.width()) +
                                  " does not match declared dimension " + std::to_string(d));
        }
        if (seen[subset.bits()]) {
            throw ValidationError("duplicate subset key " + subset.to_string());
        }
        check_finite(value, subset.bits(), d);
        seen[subset.bits()] = true;
        values[subset.bits()] = value;
    }
    if (!default_value) {
        for (std::size_t m = 0; m < n; ++m) {
            if (!seen[m]) {
                throw ValidationError("missing subset " +
                                      FeatureSet::from_mask(static_cast<std::uint32_t>(m), d).to_string() +
                                      " and no default value supplied");
            }
        }
    }
    return SetFunction(d, std::move(values), allow_large);
}

std::vector<FeatureSet> all_subsets(int d) {
    check_table_dimension(d, true);
    std::vector<FeatureSet> out;
    out.reserve(std::size_t{1} << d);
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << d); ++m) {
        out.push_back(FeatureSet::from_mask(m, d));
    }
    return out;
}

std::vector<FeatureSet> canonical_subsets(int d) {
    std::vector<FeatureSet> out = all_subsets(d);
    std::stable_sort(out.begin(), out.end(), canonical_less);
    return out;
}

} // namespace mobscore
