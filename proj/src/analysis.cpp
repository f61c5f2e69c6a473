// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mobscore/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace mobscore {

MethodColumn MethodColumn::for_kernel(WeightKernel k, std::vector<FeatureSet> targets) {
    MethodColumn col;
    col.label = k.id;
    col.kernel = std::move(k);
    col.targets = std::move(targets);
    return col;
}

MethodColumn MethodColumn::for_arch_detect(std::vector<double> h, std::vector<FeatureSet> targets) {
    MethodColumn col;
    col.label = "arch_detect";
    col.arch_detect = true;
    col.h = std::move(h);
    col.targets = std::move(targets);
    return col;
}

std::optional<double> ComparisonTable::cell(const FeatureSet& row, const std::string& column) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] == row) {
            for (std::size_t c = 0; c < columns.size(); ++c) {
                if (columns[c] == column) return cells[r][c];
            }
        }
    }
    return std::nullopt;
}

ComparisonTable compare_methods(const SetFunction& isolation,
                                const std::vector<MethodColumn>& methods) {
    const int d = isolation.dimension();
    const SetFunction mobius = mobius_score(isolation);

    // Row set: union of the columns' targets, canonical order.
    std::vector<FeatureSet> rows;
    {
        std::set<std::uint32_t> row_masks;
        for (const auto& column : methods) {
            std::vector<FeatureSet> defaults;
            if (column.targets.empty()) {
                if (column.arch_detect) {
                    for (const FeatureSet& s : canonical_subsets(d)) {
                        if (s.cardinality() == 2) defaults.push_back(s);
                    }
                } else {
                    defaults = default_targets(*column.kernel, d);
                }
            }
            const std::vector<FeatureSet>& targets =
                column.targets.empty() ? defaults : column.targets;
            for (const FeatureSet& t : targets) {
                if (t.width() != d) {
                    throw ValidationError("target " + t.to_string() +
                                          " does not match dimension " + std::to_string(d));
                }
                row_masks.insert(t.bits());
            }
        }
        for (std::uint32_t m : row_masks) rows.push_back(FeatureSet::from_mask(m, d));
        std::stable_sort(rows.begin(), rows.end(), canonical_less);
    }

    ComparisonTable table;
    table.d = d;
    table.rows = rows;
    table.isolation_full = isolation.at_mask(static_cast<std::uint32_t>(isolation.size() - 1));
    table.mobius_sum = 0.0;
    for (double v : mobius.values()) table.mobius_sum += v;
    table.efficiency_residual = table.mobius_sum - table.isolation_full;
    table.cells.assign(rows.size(), std::vector<std::optional<double>>(methods.size()));

    for (std::size_t c = 0; c < methods.size(); ++c) {
        const MethodColumn& column = methods[c];
        table.columns.push_back(column.label);
        if (column.arch_detect) {
            std::vector<double> h = column.h;
            if (h.empty()) h.assign(static_cast<std::size_t>(d), 1.0);
            if (h.size() != static_cast<std::size_t>(d)) {
                throw ValidationError("arch_detect needs one h value per feature");
            }
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r].cardinality() != 2) continue;
                const auto idx = rows[r].indices();
                table.cells[r][c] = arch_detect(mobius, idx[0], idx[1],
                                                h[static_cast<std::size_t>(idx[0])],
                                                h[static_cast<std::size_t>(idx[1])]);
            }
        } else {
            // Whole-table evaluation: rows outside the method's family take
            // the kernel's total weight, which is zero there.
            const AttributionResult scores =
                weighted_score(mobius, *column.kernel, rows, /*enforce_family=*/false);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                table.cells[r][c] = scores.score_for(rows[r]);
            }
        }
    }
    return table;
}

EffectSummary normalized_effect(const std::vector<EffectInstance>& instances,
                                std::vector<double> thresholds) {
    if (instances.empty()) throw ValidationError("normalized effect needs at least one instance");
    if (thresholds.empty()) thresholds.push_back(0.0);
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw ValidationError("thresholds must be sorted ascending");
    }
    for (double t : thresholds) {
        if (t < 0.0 || t > 1.0) throw ValidationError("thresholds must lie in [0, 1]");
    }

    std::vector<std::string> labels;
    for (const ScoreClass& cls : instances.front()) labels.push_back(cls.label);
    if (labels.empty()) throw ValidationError("empty class partition");
    for (const EffectInstance& instance : instances) {
        if (instance.size() != labels.size()) {
            throw ValidationError("instances disagree on the class partition");
        }
        for (std::size_t c = 0; c < labels.size(); ++c) {
            if (instance[c].label != labels[c]) {
                throw ValidationError("instances disagree on the class partition");
            }
        }
    }

    EffectSummary summary;
    summary.class_labels = labels;
    summary.thresholds = thresholds;
    summary.total_instances = instances.size();
    summary.mean_proportion.assign(thresholds.size(), std::vector<double>(labels.size(), 0.0));
    summary.ci_halfwidth.assign(thresholds.size(), std::vector<double>(labels.size(), 0.0));
    summary.defined_instances.assign(thresholds.size(), 0);

    std::vector<double> instance_max(instances.size(), 0.0);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        double peak = 0.0;
        for (const ScoreClass& cls : instances[i]) {
            for (double s : cls.scores) peak = std::max(peak, std::fabs(s));
        }
        instance_max[i] = peak;
        if (peak == 0.0) ++summary.all_zero_instances;
    }

    for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
        const double t = thresholds[ti];
        // Per-class proportions of each defined instance, for mean and CI.
        std::vector<std::vector<double>> samples(labels.size());
        for (std::size_t i = 0; i < instances.size(); ++i) {
            if (instance_max[i] == 0.0) continue; // undefined, reported separately
            const double cutoff = t * instance_max[i];
            std::vector<double> kept(labels.size(), 0.0);
            double total = 0.0;
            for (std::size_t c = 0; c < labels.size(); ++c) {
                for (double s : instances[i][c].scores) {
                    const double mag = std::fabs(s);
                    if (mag > cutoff) {
                        kept[c] += mag;
                        total += mag;
                    }
                }
            }
            if (total == 0.0) continue; // nothing survives this threshold
            for (std::size_t c = 0; c < labels.size(); ++c) {
                samples[c].push_back(kept[c] / total);
            }
        }
        const std::size_t n = samples.empty() ? 0 : samples.front().size();
        summary.defined_instances[ti] = n;
        if (n == 0) continue;
        for (std::size_t c = 0; c < labels.size(); ++c) {
            double mean = 0.0;
            for (double p : samples[c]) mean += p;
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (double p : samples[c]) var += (p - mean) * (p - mean);
            var = n > 1 ? var / static_cast<double>(n - 1) : 0.0;
            summary.mean_proportion[ti][c] = mean;
            summary.ci_halfwidth[ti][c] = 1.96 * std::sqrt(var / static_cast<double>(n));
        }
    }
    return summary;
}

EffectInstance partition_by_cardinality(const AttributionResult& result) {
    std::map<int, std::vector<double>> by_order;
    for (const auto& [subset, score] : result.scores) {
        by_order[subset.cardinality()].push_back(score);
    }
    EffectInstance instance;
    for (auto& [order, scores] : by_order) {
        instance.push_back(ScoreClass{"order-" + std::to_string(order), std::move(scores)});
    }
    return instance;
}

std::vector<int> dummy_feature_report(const SetFunction& isolation, double rel_tol,
                                      double abs_tol) {
    const int d = isolation.dimension();
    std::vector<int> out;
    for (int i = 0; i < d; ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        bool dummy = true;
        for (std::uint32_t t = 0; t < isolation.size(); ++t) {
            if (t & bit) continue;
            if (!nearly_equal(isolation.at_mask(t | bit), isolation.at_mask(t), rel_tol, abs_tol)) {
                dummy = false;
                break;
            }
        }
        if (dummy) out.push_back(i);
    }
    return out;
}

} // namespace mobscore
