// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mobscore/methods.hpp"

namespace mobscore {

/// One column of a comparison table: a registered kernel, or the pairwise
/// interaction detector (nonlinear, computed per pair, defined only on
/// two-feature rows).
struct MethodColumn {
    std::string label;
    std::optional<WeightKernel> kernel;
    bool arch_detect = false;
    std::vector<double> h; // per-feature deltas for arch_detect; empty = all 1
    std::vector<FeatureSet> targets; // empty = the method's defaults

    static MethodColumn for_kernel(WeightKernel k, std::vector<FeatureSet> targets = {});
    static MethodColumn for_arch_detect(std::vector<double> h = {},
                                        std::vector<FeatureSet> targets = {});
};

/// Rows are the union of the columns' targets in canonical order; every
/// kernel cell comes from one shared Moebius table. Kernel columns evaluate
/// every row (out-of-family rows get the kernel's total weight, i.e. 0);
/// arch_detect cells exist only on pair rows.
struct ComparisonTable {
    int d = 0;
    std::vector<FeatureSet> rows;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> cells; // [row][column]
    double isolation_full = 0.0;    // A(D)
    double mobius_sum = 0.0;        // sum of all Moebius scores
    double efficiency_residual = 0.0; // mobius_sum - isolation_full

    std::optional<double> cell(const FeatureSet& row, const std::string& column) const;
};

ComparisonTable compare_methods(const SetFunction& isolation,
                                const std::vector<MethodColumn>& methods);

/// One labelled group of scores inside an instance (e.g. all order-1 scores
/// vs all order-2 scores).
struct ScoreClass {
    std::string label;
    std::vector<double> scores;
};
using EffectInstance = std::vector<ScoreClass>;

/// Per-class share of total attribution magnitude surviving each threshold,
/// averaged over instances. An instance's cutoff at threshold t is
/// t * max |score| across all of its classes; scores with |score| > cutoff
/// are kept. Instances with no surviving score at a threshold are excluded
/// from that threshold's average; all-zero instances are excluded everywhere
/// and counted separately.
struct EffectSummary {
    std::vector<std::string> class_labels;
    std::vector<double> thresholds;
    std::vector<std::vector<double>> mean_proportion; // [threshold][class]
    std::vector<std::vector<double>> ci_halfwidth;    // 95% normal approximation
    std::vector<std::size_t> defined_instances;       // per threshold
    std::size_t total_instances = 0;
    std::size_t all_zero_instances = 0;
};

EffectSummary normalized_effect(const std::vector<EffectInstance>& instances,
                                std::vector<double> thresholds);

/// Splits a result into classes by subset cardinality ("order-1",
/// "order-2", ...), the default class partition.
EffectInstance partition_by_cardinality(const AttributionResult& result);

/// Features i with isolation(T + i) = isolation(T) for every T, within
/// tolerance: the model never depends on them.
std::vector<int> dummy_feature_report(const SetFunction& isolation, double rel_tol = kRelTol,
                                      double abs_tol = kAbsTol);

} // namespace mobscore
