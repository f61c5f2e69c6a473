// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: attribute, transform, compare, synth, detect, effect.
// Exit codes: 0 success, 1 configuration error, 2 oracle failure, 3 budget
// exhausted.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mobscore/analysis.hpp"
#include "mobscore/methods.hpp"
#include "mobscore/oracle.hpp"
#include "mobscore/report_io.hpp"
#include "mobscore/table_io.hpp"

using namespace mobscore;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

extern "C" void on_signal(int sig) { interrupt_flag().store(128 + sig); }

// ---------------------------------------------------------------------------
// option bundles
// ---------------------------------------------------------------------------

struct OracleCliOptions {
    std::string input;
    std::string oracle_cmd;
    std::string oracle_url;
    std::string poly;
    int d = -1;
    std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
    double timeout = 60.0;
    int fan_out = 1;
    std::string cache;
    bool audit = false;
    bool allow_large = false;
};

void add_oracle_options(CLI::App* cmd, OracleCliOptions& o) {
    cmd->add_option("--input", o.input, "value-table file serving v(S)");
    cmd->add_option("--oracle-cmd", o.oracle_cmd,
                    "subprocess oracle command (line protocol on stdin/stdout)");
    cmd->add_option("--oracle-url", o.oracle_url, "http:// oracle endpoint");
    cmd->add_option("--poly", o.poly, "polynomial model file");
    cmd->add_option("--d", o.d, "feature count (required for --oracle-cmd/--oracle-url)");
    cmd->add_option("--budget", o.budget, "fresh-evaluation budget (default unlimited)");
    cmd->add_option("--timeout", o.timeout, "per-evaluation timeout in seconds (default 60)");
    cmd->add_option("--fan-out", o.fan_out, "parallel oracle fan-out (default 1)");
    cmd->add_option("--cache", o.cache,
                    "write-through cache file (MOBSCORE_CACHE_DIR resolves relative paths)");
    cmd->add_flag("--audit", o.audit,
                  "re-query every cached subset after the run and warn on disagreement");
    cmd->add_flag("--allow-large-d", o.allow_large, "permit d above the default cap of 20");
}

std::string resolve_cache_path(const std::string& cache) {
    if (cache.empty()) return cache;
    std::filesystem::path p(cache);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("MOBSCORE_CACHE_DIR"); dir != nullptr && *dir != '\0') {
            return (std::filesystem::path(dir) / p).string();
        }
    }
    return cache;
}

std::unique_ptr<ModelOracle> build_oracle(const OracleCliOptions& o) {
    int sources = 0;
    for (const std::string* s : {&o.input, &o.oracle_cmd, &o.oracle_url, &o.poly}) {
        if (!s->empty()) ++sources;
    }
    if (sources != 1) {
        throw ValidationError(
            "exactly one oracle source is required: --input, --oracle-cmd, --oracle-url or --poly");
    }

    std::unique_ptr<OracleBackend> backend;
    if (!o.input.empty()) {
        backend = load_table_oracle(o.input, o.d, o.allow_large);
    } else if (!o.poly.empty()) {
        PolynomialModel model = load_polynomial(o.poly);
        if (o.d >= 0 && model.dimension() != o.d) {
            throw ValidationError("model declares d=" + std::to_string(model.dimension()) +
                                  " but --d " + std::to_string(o.d) + " was given");
        }
        backend = make_polynomial_backend(std::move(model));
    } else {
        if (o.d < 0) {
            throw ValidationError("--d is required with --oracle-cmd/--oracle-url");
        }
        check_table_dimension(o.d, o.allow_large);
        if (!o.oracle_cmd.empty()) {
            backend = spawn_subprocess_oracle(o.oracle_cmd, o.d, o.timeout);
        } else {
            backend = connect_http_oracle(o.oracle_url, o.d, o.timeout);
        }
    }
    check_table_dimension(backend->dimension(), o.allow_large);

    OracleOptions options;
    options.timeout_seconds = o.timeout;
    options.max_evaluations = o.budget;
    options.fan_out = o.fan_out;
    options.cache_path = resolve_cache_path(o.cache);
    return std::make_unique<ModelOracle>(std::move(backend), options);
}

json oracle_config_json(const OracleCliOptions& o) {
    json cfg;
    cfg["input"] = o.input;
    cfg["oracle_cmd"] = o.oracle_cmd;
    cfg["oracle_url"] = o.oracle_url;
    cfg["poly"] = o.poly;
    cfg["d"] = o.d;
    cfg["budget"] = o.budget;
    cfg["timeout"] = o.timeout;
    cfg["fan_out"] = o.fan_out;
    cfg["cache"] = resolve_cache_path(o.cache);
    cfg["audit"] = o.audit;
    cfg["allow_large_d"] = o.allow_large;
    return cfg;
}

ordered_json make_meta(const std::string& command, json config, const ModelOracle* oracle) {
    ordered_json meta;
    meta["command"] = command;
    meta["config"] = std::move(config); // plain json => keys sorted
    if (oracle != nullptr) {
        ordered_json about;
        about["kind"] = oracle->backend_kind();
        about["d"] = oracle->dimension();
        about["fresh_evaluations"] = oracle->fresh_evaluations();
        meta["oracle"] = std::move(about);
    } else {
        meta["oracle"] = nullptr;
    }
    return meta;
}

// ---------------------------------------------------------------------------
// small parsers
// ---------------------------------------------------------------------------

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!text.empty() && text.back() == sep) out.push_back("");
    return out;
}

// "sii:3" -> {"sii", 3}; "shapley" -> {"shapley", nullopt}
std::pair<std::string, std::optional<int>> parse_method_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return {spec, std::nullopt};
    const std::string id = spec.substr(0, colon);
    try {
        return {id, std::stoi(spec.substr(colon + 1))};
    } catch (const std::exception&) {
        throw ValidationError("bad method order in '" + spec + "'; expected name or name:k");
    }
}

// "0;1;0+2" -> [{0}, {1}, {0,2}]
std::vector<FeatureSet> parse_targets(const std::string& text, int d) {
    std::vector<FeatureSet> out;
    for (const std::string& part : split(text, ';')) {
        if (part.empty()) continue;
        std::vector<int> indices;
        for (const std::string& idx : split(part, '+')) {
            try {
                indices.push_back(std::stoi(idx));
            } catch (const std::exception&) {
                throw ValidationError("bad feature index '" + idx + "' in targets");
            }
        }
        out.push_back(FeatureSet::from_indices(indices, d));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const std::string& part : split(text, ',')) {
        if (part.empty()) continue;
        try {
            out.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw ValidationError("bad number '" + part + "' in " + what);
        }
    }
    return out;
}

std::vector<FeatureSet> targets_up_to_order(int d, int order) {
    if (order < 1 || order > d) {
        throw ValidationError("--order must be in [1, d]");
    }
    std::vector<FeatureSet> out;
    for (const FeatureSet& s : canonical_subsets(d)) {
        const int c = s.cardinality();
        if (c >= 1 && c <= order) out.push_back(s);
    }
    return out;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    write_text_file(out_path, payload);
}

void emit_document(const ordered_json& doc, const std::string& out_path) {
    emit(doc.dump(2) + "\n", out_path);
}

void run_audit(ModelOracle& oracle) {
    std::size_t checked = 0;
    std::size_t drifted = 0;
    for (const auto& [mask, record] : oracle.log_snapshot().records()) {
        (void)record;
        ++checked;
        if (!oracle.audit_cached(FeatureSet::from_mask(mask, oracle.dimension()))) ++drifted;
    }
    if (drifted > 0) {
        std::cerr << "warning: backend disagreed with the cache on " << drifted << " of "
                  << checked << " audited subsets\n";
    }
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

struct AttributeArgs {
    OracleCliOptions oracle;
    std::vector<std::string> methods;
    std::string targets;
    int order = 0;
    std::string format = "json";
    std::string out;
};

int cmd_attribute(const AttributeArgs& args) {
    auto oracle = build_oracle(args.oracle);
    const int d = oracle->dimension();
    const SetFunction isolation = oracle->isolation_table();
    const SetFunction mobius = mobius_score(isolation);
    if (args.oracle.audit) run_audit(*oracle);

    std::vector<AttributionResult> results;
    for (const std::string& spec : args.methods) {
        const auto [id, k] = parse_method_spec(spec);
        const WeightKernel kernel = make_kernel(id, k);
        std::vector<FeatureSet> targets;
        if (!args.targets.empty()) {
            targets = parse_targets(args.targets, d);
        } else if (args.order > 0) {
            for (const FeatureSet& s : targets_up_to_order(d, args.order)) {
                if (kernel.in_family(s)) targets.push_back(s);
            }
        } else {
            targets = default_targets(kernel, d);
        }
        AttributionResult result = weighted_score(mobius, kernel, targets);
        result.oracle_evaluations = oracle->fresh_evaluations();
        results.push_back(std::move(result));
    }

    json config;
    config["oracle"] = oracle_config_json(args.oracle);
    config["methods"] = args.methods;
    config["targets"] = args.targets;
    config["order"] = args.order;
    config["format"] = args.format;
    const ordered_json meta = make_meta("attribute", config, oracle.get());

    if (args.format == "csv") {
        if (results.size() != 1) {
            throw ValidationError("csv output supports exactly one method; use json");
        }
        emit(result_to_csv(results.front()), args.out);
    } else if (results.size() == 1) {
        emit_document(result_to_json(results.front(), meta), args.out);
    } else {
        ordered_json doc;
        doc["d"] = d;
        ordered_json list = ordered_json::array();
        for (const AttributionResult& r : results) list.push_back(result_to_json(r));
        doc["results"] = std::move(list);
        doc["meta"] = meta;
        emit_document(doc, args.out);
    }
    oracle->flush_cache();
    return 0;
}

struct TransformArgs {
    std::string input;
    std::string op = "zeta";
    bool naive = false;
    bool allow_large = false;
    std::string out;
};

int cmd_transform(const TransformArgs& args) {
    if (args.input.empty()) throw ValidationError("--input is required");
    const SetFunction table = load_value_table(args.input, args.allow_large);
    SetFunction result = [&] {
        if (args.op == "zeta") return args.naive ? zeta_transform_naive(table) : zeta_transform(table);
        if (args.op == "mobius") {
            return args.naive ? mobius_transform_naive(table) : mobius_transform(table);
        }
        throw ValidationError("--op must be zeta or mobius");
    }();

    json config;
    config["input"] = args.input;
    config["op"] = args.op;
    config["naive"] = args.naive;
    config["allow_large_d"] = args.allow_large;
    ordered_json doc = value_table_to_json(result);
    doc["meta"] = make_meta("transform", config, nullptr);
    emit_document(doc, args.out);
    return 0;
}

struct CompareArgs {
    OracleCliOptions oracle;
    std::vector<std::string> methods;
    std::string targets;
    int order = 0;
    std::string h_values;
    std::string format = "json";
    std::string out;
};

int cmd_compare(const CompareArgs& args) {
    auto oracle = build_oracle(args.oracle);
    const int d = oracle->dimension();
    const SetFunction isolation = oracle->isolation_table();
    if (args.oracle.audit) run_audit(*oracle);

    std::vector<FeatureSet> shared_targets;
    if (!args.targets.empty()) {
        shared_targets = parse_targets(args.targets, d);
    } else if (args.order > 0) {
        shared_targets = targets_up_to_order(d, args.order);
    }

    std::vector<double> h;
    if (!args.h_values.empty()) {
        h = parse_double_list(args.h_values, "--h-values");
        if (h.size() != static_cast<std::size_t>(d)) {
            throw ValidationError("--h-values needs one value per feature");
        }
    }

    std::vector<MethodColumn> columns;
    for (const std::string& spec : args.methods) {
        const auto [id, k] = parse_method_spec(spec);
        if (id == "arch_detect") {
            columns.push_back(MethodColumn::for_arch_detect(h, shared_targets));
        } else {
            columns.push_back(MethodColumn::for_kernel(make_kernel(id, k), shared_targets));
        }
    }
    if (columns.empty()) throw ValidationError("--method is required at least once");

    const ComparisonTable table = compare_methods(isolation, columns);

    json config;
    config["oracle"] = oracle_config_json(args.oracle);
    config["methods"] = args.methods;
    config["targets"] = args.targets;
    config["order"] = args.order;
    config["h_values"] = args.h_values;
    config["format"] = args.format;
    const ordered_json meta = make_meta("compare", config, oracle.get());

    if (args.format == "csv") {
        emit(comparison_to_csv(table), args.out);
    } else {
        emit_document(comparison_to_json(table, meta), args.out);
    }
    oracle->flush_cache();
    return 0;
}

struct SynthArgs {
    int d = -1;
    std::vector<std::string> terms;
    std::optional<double> constant;
    int random_terms = 0;
    int max_degree = 3;
    std::uint64_t seed = 0;
    std::string x;
    std::string out_table = "synth-table.json";
    std::string out_truth = "synth-truth.json";
    std::string emit_model;
    bool allow_large = false;
};

// "-1.5:2,0,1" -> coefficient -1.5, exponents (2, 0, 1)
PolynomialTerm parse_term(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw ValidationError("--term expects coeff:e0,e1,... got '" + spec + "'");
    }
    PolynomialTerm term;
    try {
        term.coefficient = std::stod(spec.substr(0, colon));
    } catch (const std::exception&) {
        throw ValidationError("bad coefficient in --term '" + spec + "'");
    }
    for (const std::string& e : split(spec.substr(colon + 1), ',')) {
        if (e.empty()) continue;
        try {
            term.exponents.push_back(std::stoi(e));
        } catch (const std::exception&) {
            throw ValidationError("bad exponent in --term '" + spec + "'");
        }
    }
    return term;
}

int cmd_synth(const SynthArgs& args) {
    std::vector<PolynomialTerm> terms;
    int d = args.d;
    for (const std::string& spec : args.terms) {
        PolynomialTerm term = parse_term(spec);
        if (d < 0) {
            d = static_cast<int>(term.exponents.size());
        } else if (term.exponents.size() != static_cast<std::size_t>(d)) {
            throw ValidationError("--term '" + spec + "' has " +
                                  std::to_string(term.exponents.size()) + " exponents but d=" +
                                  std::to_string(d));
        }
        terms.push_back(std::move(term));
    }
    if (d < 0) throw ValidationError("--d is required when no explicit --term fixes it");
    check_table_dimension(d, args.allow_large);
    if (args.constant) {
        terms.push_back(PolynomialTerm{std::vector<int>(static_cast<std::size_t>(d), 0),
                                       *args.constant});
    }
    if (args.random_terms > 0) {
        const PolynomialModel sampled =
            PolynomialModel::random(d, args.max_degree, args.random_terms, args.seed);
        for (const auto& term : sampled.terms()) terms.push_back(term);
    }
    if (terms.empty()) {
        throw ValidationError("nothing to synthesize: give --term, --constant or --random-terms");
    }

    std::vector<double> input;
    if (!args.x.empty()) {
        input = parse_double_list(args.x, "--x");
        if (input.size() != static_cast<std::size_t>(d)) {
            throw ValidationError("--x needs one coordinate per feature");
        }
    } else if (args.random_terms > 0) {
        // Reproduce the sampled model's own input point.
        input = PolynomialModel::random(d, args.max_degree, args.random_terms, args.seed).input();
    } else {
        input.assign(static_cast<std::size_t>(d), 1.0);
    }

    const PolynomialModel model(d, std::move(terms), std::move(input));

    // v(S) over the whole lattice plus the closed-form Moebius table.
    std::vector<double> values(std::size_t{1} << d);
    for (std::uint32_t m = 0; m < values.size(); ++m) {
        values[m] = model.evaluate_keep(FeatureSet::from_mask(m, d));
    }
    const SetFunction table(d, std::move(values), args.allow_large);
    const SetFunction truth = model.ground_truth_mobius();

    json config;
    config["d"] = d;
    config["terms"] = args.terms;
    config["constant"] = args.constant ? json(*args.constant) : json(nullptr);
    config["random_terms"] = args.random_terms;
    config["max_degree"] = args.max_degree;
    config["seed"] = args.seed;
    config["x"] = args.x;
    config["out_table"] = args.out_table;
    config["out_truth"] = args.out_truth;
    config["emit_model"] = args.emit_model;
    const ordered_json meta = make_meta("synth", config, nullptr);

    ordered_json table_doc = value_table_to_json(table);
    table_doc["meta"] = meta;
    emit_document(table_doc, args.out_table);

    ordered_json truth_doc = value_table_to_json(truth);
    truth_doc["meta"] = meta;
    emit_document(truth_doc, args.out_truth);

    if (!args.emit_model.empty()) {
        ordered_json model_doc = polynomial_to_json(model);
        model_doc["meta"] = meta;
        emit_document(model_doc, args.emit_model);
    }
    return 0;
}

struct DetectArgs {
    OracleCliOptions oracle;
    std::string pairs;
    std::string h_values;
    std::string format = "json";
    std::string out;
};

int cmd_detect(const DetectArgs& args) {
    auto oracle = build_oracle(args.oracle);
    const int d = oracle->dimension();
    if (d < 2) throw ValidationError("interaction detection needs d >= 2");
    const SetFunction isolation = oracle->isolation_table();
    const SetFunction mobius = mobius_score(isolation);
    if (args.oracle.audit) run_audit(*oracle);

    std::vector<double> h(static_cast<std::size_t>(d), 1.0);
    if (!args.h_values.empty()) {
        h = parse_double_list(args.h_values, "--h-values");
        if (h.size() != static_cast<std::size_t>(d)) {
            throw ValidationError("--h-values needs one value per feature");
        }
    }

    std::vector<FeatureSet> pairs;
    if (args.pairs.empty()) {
        for (const FeatureSet& s : canonical_subsets(d)) {
            if (s.cardinality() == 2) pairs.push_back(s);
        }
    } else {
        pairs = parse_targets(args.pairs, d);
        for (const FeatureSet& p : pairs) {
            if (p.cardinality() != 2) {
                throw ValidationError("--pairs entries must name exactly two features, got " +
                                      p.to_string());
            }
        }
    }

    AttributionResult result;
    result.method = "arch_detect";
    result.d = d;
    result.oracle_evaluations = oracle->fresh_evaluations();
    for (const FeatureSet& p : pairs) {
        const auto idx = p.indices();
        result.scores.emplace_back(
            p, arch_detect(mobius, idx[0], idx[1], h[static_cast<std::size_t>(idx[0])],
                           h[static_cast<std::size_t>(idx[1])]));
    }

    json config;
    config["oracle"] = oracle_config_json(args.oracle);
    config["pairs"] = args.pairs;
    config["h_values"] = args.h_values;
    config["format"] = args.format;
    const ordered_json meta = make_meta("detect", config, oracle.get());

    if (args.format == "csv") {
        emit(result_to_csv(result), args.out);
    } else {
        emit_document(result_to_json(result, meta), args.out);
    }
    oracle->flush_cache();
    return 0;
}

struct EffectArgs {
    std::vector<std::string> score_files;
    std::string thresholds = "0,0.2,0.4,0.6,0.8,1";
    std::string out;
};

int cmd_effect(const EffectArgs& args) {
    if (args.score_files.empty()) throw ValidationError("--scores is required at least once");
    std::vector<EffectInstance> instances;
    for (const std::string& path : args.score_files) {
        instances.push_back(partition_by_cardinality(result_from_json(load_json_file(path))));
    }
    const EffectSummary summary =
        normalized_effect(instances, parse_double_list(args.thresholds, "--thresholds"));

    json config;
    config["scores"] = args.score_files;
    config["thresholds"] = args.thresholds;
    emit_document(effect_summary_to_json(summary, make_meta("effect", config, nullptr)), args.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);

    CLI::App app{"Moebius-score feature attribution over black-box value functions"};
    app.require_subcommand(1);

    AttributeArgs attribute;
    CLI::App* att = app.add_subcommand("attribute", "compute attribution scores for one oracle");
    add_oracle_options(att, attribute.oracle);
    att->add_option("--method", attribute.methods, "method id, optionally with order (e.g. sii:3)")
        ->required();
    att->add_option("--targets", attribute.targets, "explicit targets, e.g. \"0;1;0+2\"");
    att->add_option("--order", attribute.order, "score all subsets up to this cardinality");
    att->add_option("--format", attribute.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    att->add_option("--out", attribute.out, "output path (default stdout)");

    TransformArgs transform;
    CLI::App* tra = app.add_subcommand("transform", "apply the zeta or mobius transform to a table");
    tra->add_option("--input", transform.input, "value-table file")->required();
    tra->add_option("--op", transform.op, "zeta or mobius")
        ->check(CLI::IsMember({"zeta", "mobius"}));
    tra->add_flag("--naive", transform.naive, "use the literal double-sum form");
    tra->add_flag("--allow-large-d", transform.allow_large, "permit d above the default cap");
    tra->add_option("--out", transform.out, "output path (default stdout)");

    CompareArgs compare;
    CLI::App* cmp = app.add_subcommand("compare", "side-by-side method comparison table");
    add_oracle_options(cmp, compare.oracle);
    cmp->add_option("--method", compare.methods,
                    "method id (kernels or arch_detect); repeat per column")
        ->required();
    cmp->add_option("--targets", compare.targets, "explicit rows, e.g. \"0;1;0+1\"");
    cmp->add_option("--order", compare.order, "rows = all subsets up to this cardinality");
    cmp->add_option("--h-values", compare.h_values, "per-feature h deltas for arch_detect");
    cmp->add_option("--format", compare.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmp->add_option("--out", compare.out, "output path (default stdout)");

    SynthArgs synth;
    CLI::App* syn = app.add_subcommand("synth", "generate a polynomial oracle and its ground truth");
    syn->add_option("--d", synth.d, "feature count");
    syn->add_option("--term", synth.terms, "explicit monomial coeff:e0,e1,... (repeatable)");
    syn->add_option("--constant", synth.constant, "constant term");
    syn->add_option("--random-terms", synth.random_terms, "number of random monomials");
    syn->add_option("--max-degree", synth.max_degree, "max total degree of random monomials");
    syn->add_option("--seed", synth.seed, "random seed (outputs are reproducible byte-for-byte)");
    syn->add_option("--x", synth.x, "input point, comma-separated (default all 1)");
    syn->add_option("--out-table", synth.out_table, "value-table output path");
    syn->add_option("--out-truth", synth.out_truth, "ground-truth Moebius table output path");
    syn->add_option("--emit-model", synth.emit_model, "also write the model file");
    syn->add_flag("--allow-large-d", synth.allow_large, "permit d above the default cap");

    DetectArgs detect;
    CLI::App* det = app.add_subcommand("detect", "pairwise interaction detection scores");
    add_oracle_options(det, detect.oracle);
    det->add_option("--pairs", detect.pairs, "pairs to score, e.g. \"0+1;1+2\" (default all)");
    det->add_option("--h-values", detect.h_values, "per-feature h deltas (default 1)");
    det->add_option("--format", detect.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    det->add_option("--out", detect.out, "output path (default stdout)");

    EffectArgs effect;
    CLI::App* eff = app.add_subcommand("effect", "normalized effect shares across score classes");
    eff->add_option("--scores", effect.score_files, "score documents, one per instance")
        ->required();
    eff->add_option("--thresholds", effect.thresholds, "comma-separated thresholds in [0, 1]");
    eff->add_option("--out", effect.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (att->parsed()) return cmd_attribute(attribute);
        if (tra->parsed()) return cmd_transform(transform);
        if (cmp->parsed()) return cmd_compare(compare);
        if (syn->parsed()) return cmd_synth(synth);
        if (det->parsed()) return cmd_detect(detect);
        if (eff->parsed()) return cmd_effect(effect);
        return 1;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const OracleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        const int sig = interrupt_flag().load();
        return sig != 0 ? sig : 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
