// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Reference backend for the subprocess oracle protocol: one JSON request
// line {"keep": [...]} on stdin, one reply line {"value": number} on stdout,
// flushed per line. Serves a value table, a polynomial model, or a constant.
// The failure flags exist to exercise error paths in tests.

#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mobscore/polynomial.hpp"
#include "mobscore/table_io.hpp"

using nlohmann::json;

int main(int argc, char** argv) {
    CLI::App app{"line-protocol oracle backend"};
    std::string table_path;
    std::string poly_path;
    std::optional<double> constant;
    double sleep_seconds = 0.0;
    long fail_after = -1;
    bool drift = false;
    bool garbage = false;
    app.add_option("--table", table_path, "serve v(S) from a value-table file");
    app.add_option("--poly", poly_path, "serve a polynomial model file");
    app.add_option("--constant", constant, "reply with a fixed value");
    app.add_option("--sleep", sleep_seconds, "delay each reply (seconds)");
    app.add_option("--fail-after", fail_after, "exit abruptly after N replies");
    app.add_flag("--drift", drift, "answer with a running counter (nondeterministic backend)");
    app.add_flag("--garbage", garbage, "reply with a non-protocol line");
    CLI11_PARSE(app, argc, argv);

    std::optional<mobscore::SetFunction> table;
    std::optional<mobscore::PolynomialModel> poly;
    try {
        if (!table_path.empty()) table = mobscore::load_value_table(table_path, true);
        if (!poly_path.empty()) poly = mobscore::load_polynomial(poly_path);
    } catch (const std::exception& e) {
        std::cerr << "oracle-stub: " << e.what() << "\n";
        return 1;
    }
    if (!table && !poly && !constant && !drift && !garbage) {
        std::cerr << "oracle-stub: need --table, --poly, --constant, --drift or --garbage\n";
        return 1;
    }

    long replies = 0;
    double counter = 0.0;
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        json request;
        try {
            request = json::parse(line);
        } catch (const json::parse_error&) {
            std::cerr << "oracle-stub: bad request line: " << line << "\n";
            return 1;
        }
        if (!request.is_object() || !request.contains("keep") || !request["keep"].is_array()) {
            std::cerr << "oracle-stub: request must be {\"keep\": [...]}\n";
            return 1;
        }
        if (sleep_seconds > 0.0) {
            std::this_thread::sleep_for(std::chrono::duration<double>(sleep_seconds));
        }
        if (fail_after >= 0 && replies >= fail_after) return 3;
        if (garbage) {
            std::cout << "not json at all" << std::endl;
            ++replies;
            continue;
        }

        double value = 0.0;
        if (drift) {
            value = counter++;
        } else if (constant) {
            value = *constant;
        } else {
            std::vector<int> indices;
            for (const auto& i : request["keep"]) indices.push_back(i.get<int>());
            const int d = table ? table->dimension() : poly->dimension();
            const auto keep = mobscore::FeatureSet::from_indices(indices, d);
            value = table ? table->at(keep) : poly->evaluate_keep(keep);
        }
        json reply;
        reply["value"] = value;
        std::cout << reply.dump() << std::endl; // endl flushes per protocol
        ++replies;
    }
    return 0;
}
