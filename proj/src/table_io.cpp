// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mobscore/table_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace mobscore {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

int parse_dimension(const json& doc) {
    if (!doc.is_object()) throw ValidationError("value table must be a JSON object");
    if (!doc.contains("d") || !doc["d"].is_number_integer()) {
        throw ValidationError("value table is missing the integer field \"d\"");
    }
    return doc["d"].get<int>();
}

double number_or_throw(const json& v, const std::string& where) {
    if (!v.is_number()) throw ValidationError(where + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(where + " must be finite");
    return x;
}

FeatureSet parse_keep_array(const json& keep, int d) {
    if (!keep.is_array()) throw ValidationError("\"keep\" must be an array of feature indices");
    std::vector<int> indices;
    indices.reserve(keep.size());
    int prev = -1;
    for (const auto& v : keep) {
        if (!v.is_number_integer()) throw ValidationError("\"keep\" entries must be integers");
        const int i = v.get<int>();
        if (i <= prev) throw ValidationError("\"keep\" indices must be strictly ascending");
        prev = i;
        indices.push_back(i);
    }
    return FeatureSet::from_indices(indices, d);
}

ordered_json keep_array(std::uint32_t mask, int d) {
    ordered_json arr = ordered_json::array();
    for (int i : FeatureSet::from_mask(mask, d).indices()) arr.push_back(i);
    return arr;
}

} // namespace

SetFunction parse_value_table(const json& doc, bool allow_large) {
    const int d = parse_dimension(doc);
    check_table_dimension(d, allow_large);

    if (doc.contains("values")) {
        const auto& values = doc["values"];
        if (!values.is_array()) throw ValidationError("\"values\" must be an array");
        std::vector<double> table;
        table.reserve(values.size());
        for (const auto& v : values) table.push_back(number_or_throw(v, "\"values\" entry"));
        return SetFunction(d, std::move(table), allow_large);
    }

    if (!doc.contains("entries")) {
        throw ValidationError("value table needs either \"values\" or \"entries\"");
    }
    const auto& entries = doc["entries"];
    if (!entries.is_array()) throw ValidationError("\"entries\" must be an array");

    std::vector<std::pair<FeatureSet, double>> parsed;
    parsed.reserve(entries.size());
    for (const auto& entry : entries) {
        if (!entry.is_object() || !entry.contains("keep") || !entry.contains("value")) {
            throw ValidationError("each entry must be an object with \"keep\" and \"value\"");
        }
        parsed.emplace_back(parse_keep_array(entry["keep"], d),
                            number_or_throw(entry["value"], "entry value"));
    }
    std::optional<double> fill;
    if (doc.contains("default")) fill = number_or_throw(doc["default"], "\"default\"");
    return make_set_function(d, parsed, fill, allow_large);
}

SetFunction load_value_table(const std::string& path, bool allow_large) {
    return parse_value_table(load_json_file(path), allow_large);
}

ordered_json value_table_to_json(const SetFunction& table) {
    ordered_json doc;
    doc["d"] = table.dimension();
    doc["values"] = table.values();
    return doc;
}

void write_value_table(const std::string& path, const SetFunction& table) {
    write_text_file(path, value_table_to_json(table).dump() + "\n");
}

std::map<std::uint32_t, double> load_partial_value_table(const std::string& path, int expected_d) {
    const json doc = load_json_file(path);
    const int d = parse_dimension(doc);
    if (expected_d >= 0 && d != expected_d) {
        throw ValidationError("cache file " + path + " declares d=" + std::to_string(d) +
                              " but the oracle has d=" + std::to_string(expected_d));
    }
    std::map<std::uint32_t, double> out;
    if (doc.contains("values")) {
        const SetFunction full = parse_value_table(doc, true);
        for (std::uint32_t m = 0; m < full.size(); ++m) out[m] = full.at_mask(m);
        return out;
    }
    if (!doc.contains("entries")) return out;
    for (const auto& entry : doc["entries"]) {
        if (!entry.is_object() || !entry.contains("keep") || !entry.contains("value")) {
            throw ValidationError("each cache entry must be an object with \"keep\" and \"value\"");
        }
        const FeatureSet s = parse_keep_array(entry["keep"], d);
        if (out.count(s.bits()) != 0) {
            throw ValidationError("duplicate subset key " + s.to_string() + " in " + path);
        }
        out[s.bits()] = number_or_throw(entry["value"], "cache entry value");
    }
    return out;
}

void write_partial_value_table(const std::string& path, int d,
                               const std::map<std::uint32_t, double>& values) {
    ordered_json doc;
    doc["d"] = d;
    ordered_json entries = ordered_json::array();
    for (const auto& [mask, value] : values) {
        ordered_json e;
        e["keep"] = keep_array(mask, d);
        e["value"] = value;
        entries.push_back(std::move(e));
    }
    doc["entries"] = std::move(entries);
    write_text_file(path, doc.dump() + "\n");
}

PolynomialModel polynomial_from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("polynomial model must be a JSON object");
    const int d = parse_dimension(doc);
    if (!doc.contains("terms") || !doc["terms"].is_array()) {
        throw ValidationError("polynomial model needs a \"terms\" array");
    }
    std::vector<PolynomialTerm> terms;
    for (const auto& t : doc["terms"]) {
        if (!t.is_object() || !t.contains("exponents") || !t.contains("coefficient")) {
            throw ValidationError("each term needs \"exponents\" and \"coefficient\"");
        }
        PolynomialTerm term;
        for (const auto& e : t["exponents"]) {
            if (!e.is_number_integer()) throw ValidationError("exponents must be integers");
            term.exponents.push_back(e.get<int>());
        }
        term.coefficient = number_or_throw(t["coefficient"], "term coefficient");
        terms.push_back(std::move(term));
    }
    std::vector<double> input;
    if (!doc.contains("input") || !doc["input"].is_array()) {
        throw ValidationError("polynomial model needs an \"input\" point");
    }
    for (const auto& c : doc["input"]) input.push_back(number_or_throw(c, "input coordinate"));
    std::vector<double> baseline;
    if (doc.contains("baseline")) {
        for (const auto& c : doc["baseline"]) {
            baseline.push_back(number_or_throw(c, "baseline coordinate"));
        }
    }
    return PolynomialModel(d, std::move(terms), std::move(input), std::move(baseline));
}

ordered_json polynomial_to_json(const PolynomialModel& model) {
    ordered_json doc;
    doc["d"] = model.dimension();
    ordered_json terms = ordered_json::array();
    for (const auto& term : model.terms()) {
        ordered_json t;
        t["exponents"] = term.exponents;
        t["coefficient"] = term.coefficient;
        terms.push_back(std::move(t));
    }
    doc["terms"] = std::move(terms);
    doc["input"] = model.input();
    doc["baseline"] = model.baseline();
    return doc;
}

PolynomialModel load_polynomial(const std::string& path) {
    return polynomial_from_json(load_json_file(path));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
    return doc;
}

void write_text_file(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ValidationError("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw ValidationError("failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw ValidationError("failed to move " + tmp.string() + " into place: " + ec.message());
}

} // namespace mobscore
