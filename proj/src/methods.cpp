// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mobscore/methods.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace mobscore {

std::optional<double> AttributionResult::score_for(const FeatureSet& target) const {
    for (const auto& [subset, score] : scores) {
        if (subset == target) return score;
    }
    return std::nullopt;
}

namespace {

void check_empty_entry(const SetFunction& isolation) {
    if (isolation.at_mask(0) != 0.0) {
        throw ValidationError("isolation score at the empty set must be 0, got " +
                              std::to_string(isolation.at_mask(0)));
    }
}

void check_pair(int i, int j, int d, double h_i, double h_j) {
    if (i == j) throw ValidationError("interaction detection needs two distinct features");
    if (i < 0 || i >= d || j < 0 || j >= d) {
        throw ValidationError("feature index out of range for d=" + std::to_string(d));
    }
    if (h_i <= 0.0 || h_j <= 0.0) {
        throw ValidationError("h values must be positive");
    }
}

} // namespace

SetFunction mobius_score(const SetFunction& isolation) {
    check_empty_entry(isolation);
    return mobius_transform(isolation);
}

SetFunction mobius_score_recursive(const SetFunction& isolation) {
    check_empty_entry(isolation);
    const int d = isolation.dimension();
    if (d > kNaiveTransformMaxDim) {
        throw ValidationError("recursive Moebius scores are restricted to d <= " +
                              std::to_string(kNaiveTransformMaxDim));
    }
    const std::size_t n = isolation.size();
    std::vector<double> out(n, 0.0);
    // Every proper subset has a smaller bitmask, so ascending order memoizes
    // the recursion bottom-up.
    for (std::size_t s = 1; s < n; ++s) {
        double lower = 0.0;
        for (std::size_t t = (s - 1) & s;; t = (t - 1) & s) {
            lower += out[t];
            if (t == 0) break;
        }
        out[s] = isolation.at_mask(static_cast<std::uint32_t>(s)) - lower;
    }
    return SetFunction(d, std::move(out), true);
}

AttributionResult weighted_score(const SetFunction& mobius, const WeightKernel& kernel,
                                 std::span<const FeatureSet> targets, bool enforce_family) {
    const int d = mobius.dimension();
    AttributionResult result;
    result.method = kernel.id;
    result.order = kernel.order;
    result.d = d;
    result.scores.reserve(targets.size());

    for (const FeatureSet& target : targets) {
        if (target.width() != d) {
            throw ValidationError("target " + target.to_string() + " does not match dimension " +
                                  std::to_string(d));
        }
        if (enforce_family && !kernel.in_family(target)) {
            throw ValidationError("target " + target.to_string() + " is outside the " + kernel.id +
                                  " family (" + kernel.family_description() + ")");
        }
        double acc = 0.0;
        switch (kernel.support) {
            case SupportPattern::kEqual:
                acc = kernel.weight(target, target) * mobius.at(target);
                break;
            case SupportPattern::kSupersets:
                for (const FeatureSet& t : supersets(target, d)) {
                    acc += kernel.weight(target, t) * mobius.at(t);
                }
                break;
            case SupportPattern::kSubsets:
                for (const FeatureSet& t : subsets(target)) {
                    acc += kernel.weight(target, t) * mobius.at(t);
                }
                break;
            case SupportPattern::kFull:
                for (std::uint32_t m = 0; m < mobius.size(); ++m) {
                    acc += kernel.weight(target, FeatureSet::from_mask(m, d)) * mobius.at_mask(m);
                }
                break;
        }
        result.scores.emplace_back(target, acc);
    }

    std::stable_sort(result.scores.begin(), result.scores.end(),
                     [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    result.scores.erase(std::unique(result.scores.begin(), result.scores.end(),
                                    [](const auto& a, const auto& b) { return a.first == b.first; }),
                        result.scores.end());
    return result;
}

double arch_detect(const SetFunction& mobius, int i, int j, double h_i, double h_j) {
    const int d = mobius.dimension();
    check_pair(i, j, d, h_i, h_j);
    const FeatureSet pair = FeatureSet::singleton(i, d) | FeatureSet::singleton(j, d);
    double superset_sum = 0.0;
    for (const FeatureSet& t : supersets(pair, d)) superset_sum += mobius.at(t);
    const double pair_term = mobius.at(pair);
    return superset_sum * superset_sum / (2.0 * h_i * h_i * h_j * h_j) + pair_term * pair_term;
}

double arch_detect_four_point(const SetFunction& isolation, int i, int j, double h_i, double h_j) {
    const int d = isolation.dimension();
    check_pair(i, j, d, h_i, h_j);
    const FeatureSet full = isolation.full_set();
    const FeatureSet si = FeatureSet::singleton(i, d);
    const FeatureSet sj = FeatureSet::singleton(j, d);
    const FeatureSet pair = si | sj;

    const double top = isolation.at(full) - isolation.at(full.without(i)) -
                       isolation.at(full.without(j)) + isolation.at(full.without(i).without(j));
    const double bottom = isolation.at(pair) - isolation.at(si) - isolation.at(sj);
    return top * top / (2.0 * h_i * h_i * h_j * h_j) + bottom * bottom;
}

FaithfulnessReport check_faithful(const WeightKernel& kernel, int d) {
    if (d < 0 || d > 10) {
        throw ValidationError("faithfulness scan is exhaustive; d must be <= 10");
    }
    const std::size_t n = std::size_t{1} << d;
    for (std::uint32_t s = 1; s < n; ++s) {
        const FeatureSet target = FeatureSet::from_mask(s, d);
        for (std::uint32_t t = 1; t < n; ++t) {
            if ((s & t) != 0) continue;
            const FeatureSet coalition = FeatureSet::from_mask(t, d);
            if (kernel.weight(target, coalition) != 0.0) {
                return FaithfulnessReport{false, std::make_pair(target, coalition)};
            }
        }
    }
    return FaithfulnessReport{true, std::nullopt};
}

bool efficiency_check(const SetFunction& mobius, const SetFunction& isolation, double rel_tol,
                      double abs_tol) {
    if (mobius.dimension() != isolation.dimension()) {
        throw ValidationError("efficiency check needs matching dimensions");
    }
    double total = 0.0;
    for (double v : mobius.values()) total += v;
    return nearly_equal(total, isolation.at_mask(static_cast<std::uint32_t>(isolation.size() - 1)),
                        rel_tol, abs_tol);
}

} // namespace mobscore
