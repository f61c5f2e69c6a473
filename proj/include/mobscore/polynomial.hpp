// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mobscore/set_function.hpp"

namespace mobscore {

/// One monomial: coefficient * prod_i x_i^exponents[i]. exponents has one
/// entry per feature, all >= 0; the constant term has all-zero exponents.
struct PolynomialTerm {
    std::vector<int> exponents;
    double coefficient = 0.0;
};

/// A polynomial model with an evaluation point and a baseline. Removed
/// features are replaced by their baseline coordinate. Duplicate
/// multi-indices are merged by summing coefficients.
class PolynomialModel {
public:
    PolynomialModel(int d, std::vector<PolynomialTerm> terms, std::vector<double> input,
                    std::vector<double> baseline = {});

    int dimension() const noexcept { return d_; }
    const std::vector<PolynomialTerm>& terms() const noexcept { return terms_; }
    const std::vector<double>& input() const noexcept { return input_; }
    const std::vector<double>& baseline() const noexcept { return baseline_; }
    bool zero_baseline() const noexcept;

    double evaluate_point(std::span<const double> x) const;

    /// Model output when only the features in `keep` take their input value;
    /// all others are set to the baseline.
    double evaluate_keep(const FeatureSet& keep) const;

    /// Closed-form Moebius score table: entry(S) is the sum of terms whose
    /// multi-index support is exactly S, evaluated at the input point. The
    /// constant term maps to the empty set and is dropped, so entry({}) = 0.
    /// Requires an all-zero baseline.
    SetFunction ground_truth_mobius() const;

    /// Seeded random model with zero baseline: term_count monomials of total
    /// degree <= max_degree, coefficients and input coordinates in (-2, 2).
    static PolynomialModel random(int d, int max_degree, int term_count, std::uint64_t seed);

private:
    int d_;
    std::vector<PolynomialTerm> terms_;
    std::vector<double> input_;
    std::vector<double> baseline_;
};

} // namespace mobscore
