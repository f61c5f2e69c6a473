// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests through the command-line binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

#include "mobscore/numeric.hpp"
#include "mobscore/table_io.hpp"

using namespace mobscore;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int status = -1;
    std::string output; // stdout + stderr
};

RunResult run(const std::string& args) {
    const std::string command = std::string(MOBSCORE_BIN) + " " + args + " 2>&1";
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> chunk{};
    std::size_t n = 0;
    while ((n = ::fread(chunk.data(), 1, chunk.size(), pipe)) > 0) {
        result.output.append(chunk.data(), n);
    }
    const int rc = ::pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("mobscore-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Sentence-level reference table as a value-table file (v = isolation here
// because v({}) = 0).
std::string write_sentence_table(const TempDir& dir) {
    const auto path = dir.file("sentences.json");
    write_value_table(path,
                      SetFunction(3, {0.0, 1.000, 0.987, 1.000, 0.571, 1.000, 1.000, 1.000}));
    return path;
}

bool golden_close(double actual, double expected) {
    return std::fabs(actual - expected) <= 0.005;
}

} // namespace

TEST_CASE("attribute: shapley on the sentence table") {
    TempDir dir;
    const auto table = write_sentence_table(dir);
    const auto result = run("attribute --method shapley --input " + table);
    REQUIRE(result.status == 0);
    const json doc = json::parse(result.output);
    CHECK(doc["method"] == "shapley");
    CHECK(doc["d"] == 3);
    REQUIRE(doc["scores"].size() == 3);
    CHECK(golden_close(doc["scores"][0]["score"].get<double>(), 0.407));
    CHECK(golden_close(doc["scores"][1]["score"].get<double>(), 0.400));
    CHECK(golden_close(doc["scores"][2]["score"].get<double>(), 0.193));
    CHECK(doc["meta"]["oracle"]["fresh_evaluations"] == 8);
    CHECK(doc["meta"]["command"] == "attribute");
}

TEST_CASE("attribute: constant subprocess backend yields all-zero scores") {
    const auto result = run("attribute --method mobius --oracle-cmd \"" ORACLE_STUB_BIN
                            " --constant 0.5\" --d 2");
    REQUIRE(result.status == 0);
    const json doc = json::parse(result.output);
    for (const auto& row : doc["scores"]) {
        CHECK(row["score"].get<double>() == 0.0);
    }
    CHECK(doc["meta"]["oracle"]["kind"] == "subprocess");
}

TEST_CASE("attribute: unknown method exits 1 and lists the registry") {
    TempDir dir;
    const auto table = write_sentence_table(dir);
    const auto result = run("attribute --method nonsense --input " + table);
    CHECK(result.status == 1);
    CHECK(result.output.find("shapley") != std::string::npos);
    CHECK(result.output.find("arch_attribute") != std::string::npos);
}

TEST_CASE("attribute: csv output") {
    TempDir dir;
    const auto table = write_sentence_table(dir);
    const auto result = run("attribute --method pie --format csv --input " + table);
    REQUIRE(result.status == 0);
    CHECK(result.output.rfind("set;score\n", 0) == 0);
    CHECK(result.output.find("\n0;1.0\n") != std::string::npos);
}

TEST_CASE("attribute: explicit targets must fit the method family") {
    TempDir dir;
    const auto table = write_sentence_table(dir);
    const auto result = run("attribute --method shapley --targets \"0+1\" --input " + table);
    CHECK(result.status == 1);
    CHECK(result.output.find("family") != std::string::npos);
}

TEST_CASE("transform: worked example, naive flag and round trip") {
    TempDir dir;
    const auto input = dir.file("f.json");
    write_value_table(input, SetFunction(2, {0.0, 1.0, 2.0, 0.0}));

    const auto zeta = run("transform --op zeta --input " + input + " --out " + dir.file("z.json"));
    REQUIRE(zeta.status == 0);
    const json zdoc = json::parse(read_file(dir.file("z.json")));
    CHECK(zdoc["values"] == json::array({0.0, 1.0, 2.0, 3.0}));

    const auto naive =
        run("transform --op zeta --naive --input " + input + " --out " + dir.file("zn.json"));
    REQUIRE(naive.status == 0);
    CHECK(json::parse(read_file(dir.file("zn.json")))["values"] == zdoc["values"]);

    const auto back =
        run("transform --op mobius --input " + dir.file("z.json") + " --out " + dir.file("m.json"));
    REQUIRE(back.status == 0);
    const json mdoc = json::parse(read_file(dir.file("m.json")));
    // canonical table part survives the zeta/mobius round trip byte for byte
    const SetFunction original = load_value_table(input);
    const SetFunction returned = parse_value_table(mdoc);
    CHECK(value_table_to_json(returned).dump() == value_table_to_json(original).dump());
}

TEST_CASE("transform: fast and naive agree on a random file") {
    TempDir dir;
    const auto input = dir.file("random.json");
    // fixed irregular values, including negatives and tiny magnitudes
    write_value_table(input, SetFunction(3, {0.125, -3.75, 2.0 / 3.0, 9.5, -1e-7, 42.0, 0.0, -8.125}));
    const auto fast = run("transform --op mobius --input " + input);
    const auto naive = run("transform --op mobius --naive --input " + input);
    REQUIRE(fast.status == 0);
    REQUIRE(naive.status == 0);
    const json fast_doc = json::parse(fast.output);
    const json naive_doc = json::parse(naive.output);
    CHECK(fast_doc["values"].dump() == naive_doc["values"].dump());
}

TEST_CASE("compare: sentence-level reference table through the CLI") {
    TempDir dir;
    const auto table = write_sentence_table(dir);
    const auto result = run(
        "compare --method mobius --method shapley --method sii:3 --method tie "
        "--method arch_attribute --input " +
        table);
    REQUIRE(result.status == 0);
    const json doc = json::parse(result.output);
    REQUIRE(doc["rows"].size() == 7);
    // spot-check one row per column against the printed reference values
    const auto& pair01 = doc["rows"][3]; // rows are canonical: {0,1} is fourth
    CHECK(pair01["set"] == json::array({0, 1}));
    CHECK(golden_close(pair01["scores"]["mobius"].get<double>(), -0.987));
    CHECK(golden_close(pair01["scores"]["shapley"].get<double>(), 0.000));
    CHECK(golden_close(pair01["scores"]["sii"].get<double>(), -0.708));
    CHECK(golden_close(pair01["scores"]["tie"].get<double>(), 0.000));
    CHECK(golden_close(pair01["scores"]["arch_attribute"].get<double>(), 1.000));
    CHECK(golden_close(doc["footer"]["efficiency_residual"].get<double>(), 0.0));

    const auto csv = run("compare --method mobius --format csv --input " + table);
    REQUIRE(csv.status == 0);
    CHECK(csv.output.rfind("set;mobius\n", 0) == 0);
    CHECK(csv.output.find("# isolation_full;1.0\n") != std::string::npos);
}

TEST_CASE("synth: explicit quadratic, constant model, seeded reproducibility") {
    TempDir dir;
    SUBCASE("quadratic with the worked coefficient set") {
        const auto result = run(
            "synth --term 1:1,0 --term 2:0,1 --term 3:2,0 --term 4:0,2 --term 5:1,1 "
            "--constant 0 --x 1,1 --out-table " +
            dir.file("t.json") + " --out-truth " + dir.file("g.json") + " --emit-model " +
            dir.file("model.json"));
        REQUIRE(result.status == 0);
        const json truth = json::parse(read_file(dir.file("g.json")));
        CHECK(truth["values"] == json::array({0.0, 4.0, 6.0, 5.0}));
        const json table = json::parse(read_file(dir.file("t.json")));
        CHECK(table["values"] == json::array({0.0, 4.0, 6.0, 15.0}));
        CHECK(fs::exists(dir.file("model.json")));
    }
    SUBCASE("constant model attributes nothing") {
        const auto result = run("synth --d 2 --constant 7 --out-table " + dir.file("ct.json") +
                                " --out-truth " + dir.file("cg.json"));
        REQUIRE(result.status == 0);
        CHECK(json::parse(read_file(dir.file("cg.json")))["values"] ==
              json::array({0.0, 0.0, 0.0, 0.0}));
        CHECK(json::parse(read_file(dir.file("ct.json")))["values"] ==
              json::array({7.0, 7.0, 7.0, 7.0}));
    }
    SUBCASE("same seed and config, same bytes") {
        const std::string args = "synth --d 3 --random-terms 6 --max-degree 3 --seed 20260810 "
                                 "--out-table " +
                                 dir.file("a.json") + " --out-truth " + dir.file("ag.json");
        REQUIRE(run(args).status == 0);
        const std::string table_first = read_file(dir.file("a.json"));
        const std::string truth_first = read_file(dir.file("ag.json"));
        REQUIRE(run(args).status == 0);
        CHECK(read_file(dir.file("a.json")) == table_first);
        CHECK(read_file(dir.file("ag.json")) == truth_first);
        CHECK(table_first != truth_first);
    }
}

TEST_CASE("synth output feeds attribute: transform path matches the truth file") {
    TempDir dir;
    REQUIRE(run("synth --d 3 --random-terms 5 --seed 99 --out-table " + dir.file("t.json") +
                " --out-truth " + dir.file("g.json"))
                .status == 0);
    const auto result = run("attribute --method mobius --input " + dir.file("t.json"));
    REQUIRE(result.status == 0);
    const json doc = json::parse(result.output);
    const SetFunction truth = load_value_table(dir.file("g.json"));
    for (const auto& row : doc["scores"]) {
        std::vector<int> indices;
        for (const auto& i : row["set"]) indices.push_back(i.get<int>());
        const auto subset = FeatureSet::from_indices(indices, 3);
        CHECK(nearly_equal(row["score"].get<double>(), truth.at(subset), 1e-9, 1e-9));
    }
}

TEST_CASE("detect: interaction scores through the CLI") {
    TempDir dir;
    REQUIRE(run("synth --term 1:1,1 --x 1,1 --out-table " + dir.file("xy.json") +
                " --out-truth " + dir.file("xyg.json"))
                .status == 0);
    SUBCASE("pure interaction pair scores 1.5 at h=1") {
        const auto result = run("detect --input " + dir.file("xy.json"));
        REQUIRE(result.status == 0);
        const json doc = json::parse(result.output);
        REQUIRE(doc["scores"].size() == 1);
        CHECK(doc["scores"][0]["set"] == json::array({0, 1}));
        CHECK(doc["scores"][0]["score"].get<double>() == doctest::Approx(1.5));
    }
    SUBCASE("h override rescales the quadratic addend") {
        const auto result = run("detect --h-values 2,1 --input " + dir.file("xy.json"));
        REQUIRE(result.status == 0);
        const json doc = json::parse(result.output);
        CHECK(doc["scores"][0]["score"].get<double>() == doctest::Approx(1.0 / 8.0 + 1.0));
    }
    SUBCASE("additive model detects nothing") {
        REQUIRE(run("synth --term 2:1,0 --term 3:0,1 --x 1,1 --out-table " + dir.file("add.json") +
                    " --out-truth " + dir.file("addg.json"))
                    .status == 0);
        const auto result = run("detect --input " + dir.file("add.json"));
        REQUIRE(result.status == 0);
        const json doc = json::parse(result.output);
        CHECK(doc["scores"][0]["score"].get<double>() == 0.0);
    }
}

TEST_CASE("exit codes: budget exhaustion and oracle failure") {
    TempDir dir;
    const auto table = write_sentence_table(dir);
    CHECK(run("attribute --method mobius --budget 3 --input " + table).status == 3);
    CHECK(run("attribute --method mobius --oracle-cmd false --d 2").status == 2);
    CHECK(run("attribute --method mobius --input " + table + " --oracle-cmd false").status == 1);
}

TEST_CASE("cache: second run needs no fresh evaluations") {
    TempDir dir;
    const auto table = write_sentence_table(dir);
    const auto cache = dir.file("cache.json");
    const auto first =
        run("attribute --method shapley --cache " + cache + " --input " + table);
    REQUIRE(first.status == 0);
    CHECK(json::parse(first.output)["meta"]["oracle"]["fresh_evaluations"] == 8);
    const auto second =
        run("attribute --method shapley --cache " + cache + " --input " + table);
    REQUIRE(second.status == 0);
    CHECK(json::parse(second.output)["meta"]["oracle"]["fresh_evaluations"] == 0);
}

TEST_CASE("cache: MOBSCORE_CACHE_DIR resolves relative paths") {
    TempDir dir;
    const auto table = write_sentence_table(dir);
    const std::string command = "MOBSCORE_CACHE_DIR=" + dir.path.string() + " " +
                                std::string(MOBSCORE_BIN) +
                                " attribute --method pie --cache rel-cache.json --input " + table +
                                " --out /dev/null 2>&1";
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    ::pclose(pipe);
    CHECK(fs::exists(dir.path / "rel-cache.json"));
}

TEST_CASE("effect: two-instance summary from score documents") {
    TempDir dir;
    const auto table = write_sentence_table(dir);
    REQUIRE(run("attribute --method mobius --input " + table + " --out " + dir.file("s1.json"))
                .status == 0);
    REQUIRE(run("attribute --method mobius --input " + table + " --out " + dir.file("s2.json"))
                .status == 0);
    const auto result = run("effect --scores " + dir.file("s1.json") + " --scores " +
                            dir.file("s2.json") + " --thresholds 0,0.5,1");
    REQUIRE(result.status == 0);
    const json doc = json::parse(result.output);
    CHECK(doc["total_instances"] == 2);
    CHECK(doc["all_zero_instances"] == 0);
    REQUIRE(doc["thresholds"].size() == 3);
    double sum = 0.0;
    for (const auto& [label, cls] : doc["thresholds"][0]["proportions"].items()) {
        (void)label;
        sum += cls["mean"].get<double>();
    }
    CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("http oracle through the CLI") {
    // No server: connection failure is an oracle error (exit 2).
    CHECK(run("attribute --method mobius --oracle-url http://127.0.0.1:1/eval --d 2").status == 2);
    CHECK(run("attribute --method mobius --oracle-url ftp://bad --d 2").status == 1);
}
