// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mobscore/kernels.hpp"
#include "mobscore/numeric.hpp"
#include "mobscore/set_function.hpp"
#include "mobscore/transforms.hpp"

namespace mobscore {

/// One method's output: target subsets in canonical order (ascending
/// cardinality, then ascending bitmask) with their scores, plus provenance.
struct AttributionResult {
    std::string method;
    int order = 0;
    int d = 0;
    std::vector<std::pair<FeatureSet, double>> scores;
    std::uint64_t oracle_evaluations = 0;

    std::optional<double> score_for(const FeatureSet& target) const;
};

/// Moebius scores of an isolation table: mu(isolation). Requires
/// isolation({}) == 0; the result also has entry({}) == 0.
SetFunction mobius_score(const SetFunction& isolation);

/// Same contract computed by the memoized recursion
/// score(S) = isolation(S) - sum over proper subsets T of score(T);
/// an independent cross-check path, restricted to d <= 14.
SetFunction mobius_score_recursive(const SetFunction& isolation);

/// score(S) = sum over T of weight(S, T) * mobius(T) for each target S.
/// Iteration is restricted to the kernel's declared support pattern; the
/// result is identical to the full double sum. Targets outside the kernel's
/// family are rejected unless enforce_family is false (used for whole-table
/// comparisons, where out-of-family rows legitimately score 0).
AttributionResult weighted_score(const SetFunction& mobius, const WeightKernel& kernel,
                                 std::span<const FeatureSet> targets,
                                 bool enforce_family = true);

/// Pairwise interaction detector on the Moebius table:
///   (1 / (2 h_i^2 h_j^2)) * (sum over T containing {i,j} of mobius(T))^2
///   + mobius({i,j})^2.
/// h_i and h_j cannot be derived from a subset-value table (they are raw
/// input-coordinate deltas); callers supply them, defaulting to 1.
double arch_detect(const SetFunction& mobius, int i, int j, double h_i = 1.0, double h_j = 1.0);

/// The same quantity from isolation scores via two four-point differences:
///   (1 / (2 h_i^2 h_j^2)) * (A(D) - A(D\{i}) - A(D\{j}) + A(D\{i,j}))^2
///   + (A({i,j}) - A({i}) - A({j}))^2.
/// Independent cross-check route for arch_detect.
double arch_detect_four_point(const SetFunction& isolation, int i, int j, double h_i = 1.0,
                              double h_j = 1.0);

struct FaithfulnessReport {
    bool faithful = false;
    // First violating (S, T) pair in scan order, when not faithful.
    std::optional<std::pair<FeatureSet, FeatureSet>> violation;
};

/// Exhaustively verifies weight(S, T) == 0 for all disjoint nonempty S, T
/// within dimension d (d <= 10). T = {} is excluded: several published
/// weight tables put nonzero weight there, and mobius({}) = 0 makes it
/// unobservable in any score.
FaithfulnessReport check_faithful(const WeightKernel& kernel, int d);

/// Efficiency: sum over S of mobius(S) equals isolation(D).
bool efficiency_check(const SetFunction& mobius, const SetFunction& isolation,
                      double rel_tol = kRelTol, double abs_tol = kAbsTol);

} // namespace mobscore
