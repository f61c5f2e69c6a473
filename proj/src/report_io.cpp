// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mobscore/report_io.hpp"

#include <sstream>

namespace mobscore {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double value) {
    // nlohmann's number serializer emits the shortest representation that
    // round-trips; reuse it so JSON and CSV agree byte for byte.
    return json(value).dump();
}

std::string set_to_plus_string(const FeatureSet& s) {
    std::string out;
    for (int i : s.indices()) {
        if (!out.empty()) out += "+";
        out += std::to_string(i);
    }
    return out;
}

namespace {

ordered_json set_to_array(const FeatureSet& s) {
    ordered_json arr = ordered_json::array();
    for (int i : s.indices()) arr.push_back(i);
    return arr;
}

} // namespace

ordered_json result_to_json(const AttributionResult& result, ordered_json meta) {
    ordered_json doc;
    doc["method"] = result.method;
    if (result.order > 0) {
        doc["k"] = result.order;
    } else {
        doc["k"] = nullptr;
    }
    doc["d"] = result.d;
    ordered_json scores = ordered_json::array();
    for (const auto& [subset, score] : result.scores) {
        ordered_json row;
        row["set"] = set_to_array(subset);
        row["score"] = score;
        scores.push_back(std::move(row));
    }
    doc["scores"] = std::move(scores);
    doc["meta"] = std::move(meta);
    return doc;
}

AttributionResult result_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("method") || !doc.contains("d") ||
        !doc.contains("scores")) {
        throw ValidationError("score document needs \"method\", \"d\" and \"scores\"");
    }
    AttributionResult result;
    result.method = doc["method"].get<std::string>();
    result.d = doc["d"].get<int>();
    if (doc.contains("k") && doc["k"].is_number_integer()) result.order = doc["k"].get<int>();
    for (const auto& row : doc["scores"]) {
        if (!row.is_object() || !row.contains("set") || !row.contains("score") ||
            !row["score"].is_number()) {
            throw ValidationError("score rows must be {\"set\": [...], \"score\": number}");
        }
        std::vector<int> indices;
        for (const auto& i : row["set"]) indices.push_back(i.get<int>());
        result.scores.emplace_back(FeatureSet::from_indices(indices, result.d),
                                   row["score"].get<double>());
    }
    return result;
}

std::string result_to_csv(const AttributionResult& result) {
    std::ostringstream out;
    out << "set;score\n";
    for (const auto& [subset, score] : result.scores) {
        out << set_to_plus_string(subset) << ";" << format_double(score) << "\n";
    }
    return out.str();
}

ordered_json comparison_to_json(const ComparisonTable& table, ordered_json meta) {
    ordered_json doc;
    doc["d"] = table.d;
    doc["columns"] = table.columns;
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        ordered_json row;
        row["set"] = set_to_array(table.rows[r]);
        ordered_json scores;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (table.cells[r][c]) {
                scores[table.columns[c]] = *table.cells[r][c];
            } else {
                scores[table.columns[c]] = nullptr;
            }
        }
        row["scores"] = std::move(scores);
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    ordered_json footer;
    footer["isolation_full"] = table.isolation_full;
    footer["mobius_sum"] = table.mobius_sum;
    footer["efficiency_residual"] = table.efficiency_residual;
    doc["footer"] = std::move(footer);
    doc["meta"] = std::move(meta);
    return doc;
}

std::string comparison_to_csv(const ComparisonTable& table) {
    std::ostringstream out;
    out << "set";
    for (const auto& column : table.columns) out << ";" << column;
    out << "\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << set_to_plus_string(table.rows[r]);
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << ";";
            if (table.cells[r][c]) out << format_double(*table.cells[r][c]);
        }
        out << "\n";
    }
    out << "# isolation_full;" << format_double(table.isolation_full) << "\n";
    out << "# mobius_sum;" << format_double(table.mobius_sum) << "\n";
    out << "# efficiency_residual;" << format_double(table.efficiency_residual) << "\n";
    return out.str();
}

ordered_json effect_summary_to_json(const EffectSummary& summary, ordered_json meta) {
    ordered_json doc;
    doc["classes"] = summary.class_labels;
    doc["total_instances"] = summary.total_instances;
    doc["all_zero_instances"] = summary.all_zero_instances;
    ordered_json thresholds = ordered_json::array();
    for (std::size_t ti = 0; ti < summary.thresholds.size(); ++ti) {
        ordered_json entry;
        entry["threshold"] = summary.thresholds[ti];
        entry["defined_instances"] = summary.defined_instances[ti];
        ordered_json per_class;
        for (std::size_t c = 0; c < summary.class_labels.size(); ++c) {
            ordered_json cls;
            if (summary.defined_instances[ti] > 0) {
                cls["mean"] = summary.mean_proportion[ti][c];
                cls["ci95"] = summary.ci_halfwidth[ti][c];
            } else {
                cls["mean"] = nullptr;
                cls["ci95"] = nullptr;
            }
            per_class[summary.class_labels[c]] = std::move(cls);
        }
        entry["proportions"] = std::move(per_class);
        thresholds.push_back(std::move(entry));
    }
    doc["thresholds"] = std::move(thresholds);
    doc["meta"] = std::move(meta);
    return doc;
}

} // namespace mobscore
