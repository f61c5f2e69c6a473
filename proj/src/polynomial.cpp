// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mobscore/polynomial.hpp"

#include <cmath>
#include <map>
#include <random>
#include <string>

namespace mobscore {

namespace {

double int_pow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::uint32_t support_mask(const std::vector<int>& exponents) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] > 0) mask |= std::uint32_t{1} << i;
    }
    return mask;
}

} // namespace

PolynomialModel::PolynomialModel(int d, std::vector<PolynomialTerm> terms,
                                 std::vector<double> input, std::vector<double> baseline)
    : d_(d), input_(std::move(input)), baseline_(std::move(baseline)) {
    check_table_dimension(d, true);
    if (baseline_.empty()) baseline_.assign(static_cast<std::size_t>(d), 0.0);
    if (input_.size() != static_cast<std::size_t>(d)) {
        throw ValidationError("input point must have d=" + std::to_string(d) + " coordinates");
    }
    if (baseline_.size() != static_cast<std::size_t>(d)) {
        throw ValidationError("baseline point must have d=" + std::to_string(d) + " coordinates");
    }
    for (double c : input_) {
        if (!std::isfinite(c)) throw ValidationError("non-finite input coordinate");
    }
    for (double c : baseline_) {
        if (!std::isfinite(c)) throw ValidationError("non-finite baseline coordinate");
    }

    // Merge duplicate multi-indices by summing coefficients.
    std::map<std::vector<int>, double> merged;
    for (auto& term : terms) {
        if (term.exponents.size() != static_cast<std::size_t>(d)) {
            throw ValidationError("term multi-index must have d=" + std::to_string(d) + " entries");
        }
        for (int e : term.exponents) {
            if (e < 0) throw ValidationError("multi-index exponents must be >= 0");
        }
        if (!std::isfinite(term.coefficient)) throw ValidationError("non-finite coefficient");
        merged[term.exponents] += term.coefficient;
    }
    terms_.reserve(merged.size());
    for (auto& [exponents, coefficient] : merged) {
        terms_.push_back(PolynomialTerm{exponents, coefficient});
    }
}

bool PolynomialModel::zero_baseline() const noexcept {
    for (double c : baseline_) {
        if (c != 0.0) return false;
    }
    return true;
}

double PolynomialModel::evaluate_point(std::span<const double> x) const {
    double acc = 0.0;
    for (const auto& term : terms_) {
        double prod = term.coefficient;
        for (int i = 0; i < d_; ++i) {
            const int e = term.exponents[static_cast<std::size_t>(i)];
            if (e > 0) prod *= int_pow(x[static_cast<std::size_t>(i)], e);
        }
        acc += prod;
    }
    return acc;
}

double PolynomialModel::evaluate_keep(const FeatureSet& keep) const {
    if (keep.width() != d_) {
        throw ValidationError("subset width does not match polynomial dimension");
    }
    std::vector<double> x(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) {
        x[static_cast<std::size_t>(i)] = keep.contains(i) ? input_[static_cast<std::size_t>(i)]
                                                          : baseline_[static_cast<std::size_t>(i)];
    }
    return evaluate_point(x);
}

SetFunction PolynomialModel::ground_truth_mobius() const {
    if (!zero_baseline()) {
        throw ValidationError(
            "closed-form Moebius scores require an all-zero baseline; use the transform path");
    }
    SetFunction out(d_, true);
    for (const auto& term : terms_) {
        const std::uint32_t support = support_mask(term.exponents);
        if (support == 0) continue; // constant term is unattributed
        double prod = term.coefficient;
        for (int i = 0; i < d_; ++i) {
            const int e = term.exponents[static_cast<std::size_t>(i)];
            if (e > 0) prod *= int_pow(input_[static_cast<std::size_t>(i)], e);
        }
        out.set_mask(support, out.at_mask(support) + prod);
    }
    return out;
}

PolynomialModel PolynomialModel::random(int d, int max_degree, int term_count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<int> degree(0, max_degree);
    std::uniform_int_distribution<int> feature(0, d > 0 ? d - 1 : 0);

    std::vector<PolynomialTerm> terms;
    terms.reserve(static_cast<std::size_t>(term_count));
    for (int t = 0; t < term_count; ++t) {
        PolynomialTerm term;
        term.exponents.assign(static_cast<std::size_t>(d), 0);
        if (d > 0) {
            const int total = degree(rng);
            for (int i = 0; i < total; ++i) {
                term.exponents[static_cast<std::size_t>(feature(rng))] += 1;
            }
        }
        term.coefficient = coeff(rng);
        terms.push_back(std::move(term));
    }
    std::vector<double> input(static_cast<std::size_t>(d));
    for (double& c : input) c = coeff(rng);
    return PolynomialModel(d, std::move(terms), std::move(input));
}

} // namespace mobscore
