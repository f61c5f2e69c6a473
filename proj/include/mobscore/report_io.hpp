// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "mobscore/analysis.hpp"
#include "mobscore/methods.hpp"

namespace mobscore {

// Output documents are deterministic byte-for-byte for a given config and
// oracle: fixed key order, shortest round-trip float rendering, subsets
// ordered by ascending cardinality then ascending bitmask.

/// Shortest decimal rendering that parses back to the same double.
std::string format_double(double value);

/// "+"-joined ascending feature indices; the empty set renders empty.
std::string set_to_plus_string(const FeatureSet& s);

// Score document:
//   {"method": ..., "k": ..., "d": ..., "scores": [{"set": [...],
//    "score": ...}, ...], "meta": {...}}
// "k" is null for methods without an order parameter.
nlohmann::ordered_json result_to_json(const AttributionResult& result,
                                      nlohmann::ordered_json meta = {});
AttributionResult result_from_json(const nlohmann::json& doc);

// CSV: "set;score" header, one row per subset.
std::string result_to_csv(const AttributionResult& result);

// Comparison document:
//   {"d": ..., "columns": [...], "rows": [{"set": [...], "scores":
//    {col: score|null, ...}}, ...], "footer": {"isolation_full": ...,
//    "mobius_sum": ..., "efficiency_residual": ...}, "meta": {...}}
nlohmann::ordered_json comparison_to_json(const ComparisonTable& table,
                                          nlohmann::ordered_json meta = {});

// CSV: "set;<col>;<col>..." plus "#"-prefixed footer lines.
std::string comparison_to_csv(const ComparisonTable& table);

nlohmann::ordered_json effect_summary_to_json(const EffectSummary& summary,
                                              nlohmann::ordered_json meta = {});

} // namespace mobscore
