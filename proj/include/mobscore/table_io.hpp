// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "mobscore/polynomial.hpp"
#include "mobscore/set_function.hpp"

namespace mobscore {

// Value-table file format (JSON, UTF-8):
//   {"d": 2, "entries": [{"keep": [0, 1], "value": 4.0}, ...], "default": 0.0}
// "keep" lists the present feature indices, ascending, origin 0. A
// bitmask-dense encoding is accepted as an alternative:
//   {"d": 2, "values": [v({}), v({0}), v({1}), v({0,1})]}
// "default" fills unlisted subsets; without it the entries must be dense.
// Unknown keys are ignored.

SetFunction parse_value_table(const nlohmann::json& doc, bool allow_large = false);
SetFunction load_value_table(const std::string& path, bool allow_large = false);

/// Canonical (byte-deterministic) encoding: dense "values" array.
nlohmann::ordered_json value_table_to_json(const SetFunction& table);
void write_value_table(const std::string& path, const SetFunction& table);

/// Sparse read for cache files: same schema, but missing subsets are fine.
std::map<std::uint32_t, double> load_partial_value_table(const std::string& path, int expected_d);

/// Sparse write for cache files: only the given subsets, ascending bitmask.
void write_partial_value_table(const std::string& path, int d,
                               const std::map<std::uint32_t, double>& values);

// Polynomial model file format:
//   {"d": 2, "terms": [{"exponents": [1, 1], "coefficient": 5.0}, ...],
//    "input": [1.0, 1.0], "baseline": [0.0, 0.0]}
PolynomialModel polynomial_from_json(const nlohmann::json& doc);
nlohmann::ordered_json polynomial_to_json(const PolynomialModel& model);
PolynomialModel load_polynomial(const std::string& path);

/// Parses a JSON document from a file with a readable error message.
nlohmann::json load_json_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);

} // namespace mobscore
