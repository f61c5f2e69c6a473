// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mobscore/analysis.hpp"
#include "mobscore/oracle.hpp"
#include "test_util.hpp"

using namespace mobscore;
using mobscore::testing::random_isolation;

namespace {

FeatureSet fsm(std::uint32_t bits, int d) { return FeatureSet::from_mask(bits, d); }

bool golden_close(double actual, double expected) {
    return std::fabs(actual - expected) <= 0.005;
}

// Sentence-level reference table (three demonstration sentences).
SetFunction sentence_isolation() {
    return SetFunction(3, {0.0, 1.000, 0.987, 1.000, 0.571, 1.000, 1.000, 1.000});
}

// Phrase-level reference table (NP, PP, VP).
SetFunction phrase_isolation() {
    return SetFunction(3, {0.0, 0.605, 0.855, 0.895, 1.000, 0.987, 0.987, 0.987});
}

std::vector<MethodColumn> reference_columns() {
    return {
        MethodColumn::for_kernel(mobius_kernel()),
        MethodColumn::for_kernel(shapley_kernel()),
        MethodColumn::for_kernel(sii_kernel(3)),
        MethodColumn::for_kernel(tie_kernel()),
        MethodColumn::for_kernel(arch_attribute_kernel()),
    };
}

struct GoldenRow {
    std::uint32_t mask;
    double mobius, shapley, sii, tie, arch;
};

void check_table(const ComparisonTable& table, const std::vector<GoldenRow>& golden) {
    REQUIRE(table.rows.size() == golden.size());
    for (const GoldenRow& row : golden) {
        const FeatureSet s = fsm(row.mask, 3);
        CAPTURE(row.mask);
        CHECK(golden_close(table.cell(s, "mobius").value(), row.mobius));
        CHECK(golden_close(table.cell(s, "shapley").value(), row.shapley));
        CHECK(golden_close(table.cell(s, "sii").value(), row.sii));
        CHECK(golden_close(table.cell(s, "tie").value(), row.tie));
        CHECK(golden_close(table.cell(s, "arch_attribute").value(), row.arch));
    }
}

} // namespace

TEST_CASE("comparison reproduces the sentence-level reference table") {
    const ComparisonTable table = compare_methods(sentence_isolation(), reference_columns());
    check_table(table, {
        {0b001, 1.000, 0.407, 0.407, 0.000, 1.000},
        {0b010, 0.987, 0.400, 0.400, 0.000, 0.987},
        {0b100, 0.571, 0.193, 0.193, 0.000, 0.571},
        {0b011, -0.987, 0.000, -0.708, 0.000, 1.000},
        {0b101, -0.571, 0.000, -0.292, 0.000, 1.000},
        {0b110, -0.558, 0.000, -0.279, 0.000, 1.000},
        {0b111, 0.558, 0.000, 0.558, 0.000, 1.000},
    });
    CHECK(table.isolation_full == doctest::Approx(1.000));
    CHECK(table.efficiency_residual == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("comparison reproduces the phrase-level reference table") {
    // One published TIE cell (VP row) is inconsistent with the table's own
    // isolation column: isolation(D) - isolation({NP,PP}) = 0.987 - 0.895.
    // The engine reports that identity value, checked last.
    const ComparisonTable table = compare_methods(phrase_isolation(), reference_columns());
    check_table(table, {
        {0b001, 0.605, 0.206, 0.206, 0.000, 0.605},
        {0b010, 0.855, 0.331, 0.331, 0.000, 0.855},
        {0b100, 1.000, 0.450, 0.450, 0.092, 1.000},
        {0b011, -0.566, 0.000, -0.276, 0.000, 0.895},
        {0b101, -0.618, 0.000, -0.329, 0.000, 0.987},
        {0b110, -0.868, 0.000, -0.579, 0.000, 0.987},
        {0b111, 0.579, 0.000, 0.579, 0.000, 0.987},
    });
    const double tie_vp = table.cell(fsm(0b100, 3), "tie").value();
    CHECK(golden_close(tie_vp, phrase_isolation().at_mask(0b111) -
                                   phrase_isolation().at_mask(0b011)));
}

TEST_CASE("single-method comparison degenerates to that result") {
    const SetFunction isolation = sentence_isolation();
    const ComparisonTable table =
        compare_methods(isolation, {MethodColumn::for_kernel(shapley_kernel())});
    REQUIRE(table.columns == std::vector<std::string>{"shapley"});
    const SetFunction mobius = mobius_score(isolation);
    const auto direct = weighted_score(mobius, shapley_kernel(),
                                       default_targets(shapley_kernel(), 3));
    REQUIRE(table.rows.size() == direct.scores.size());
    for (const auto& [subset, score] : direct.scores) {
        CHECK(table.cell(subset, "shapley").value() == score);
    }
}

TEST_CASE("shapley and sii columns agree on singleton rows") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 6);
        const SetFunction isolation = random_isolation(d, rng);
        const ComparisonTable table = compare_methods(
            isolation, {MethodColumn::for_kernel(shapley_kernel()),
                        MethodColumn::for_kernel(sii_kernel(2)),
                        MethodColumn::for_kernel(arch_attribute_kernel())});
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const FeatureSet& row = table.rows[r];
            if (row.cardinality() == 1) {
                CHECK(nearly_equal(table.cell(row, "shapley").value(),
                                   table.cell(row, "sii").value()));
            }
            // the zeta-transform column reproduces isolation on every row
            CHECK(nearly_equal(table.cell(row, "arch_attribute").value(), isolation.at(row)));
        }
    }
}

TEST_CASE("arch_detect columns exist only on pair rows") {
    PolynomialModel xy(2, {{{1, 1}, 1.0}}, {1.0, 1.0});
    ModelOracle oracle(make_polynomial_backend(xy));
    const ComparisonTable table = compare_methods(
        oracle.isolation_table(),
        {MethodColumn::for_kernel(mobius_kernel()), MethodColumn::for_arch_detect()});
    CHECK(table.cell(fsm(0b11, 2), "arch_detect").value() == doctest::Approx(1.5));
    CHECK(!table.cell(fsm(0b01, 2), "arch_detect").has_value());
    CHECK(table.cell(fsm(0b01, 2), "mobius").has_value());
}

TEST_CASE("normalized effect worked examples") {
    const EffectInstance instance = {
        {"order-1", {2.0, -2.0}},
        {"order-2", {1.0}},
    };
    SUBCASE("no threshold") {
        const EffectSummary summary = normalized_effect({instance}, {0.0});
        CHECK(summary.mean_proportion[0][0] == doctest::Approx(0.8));
        CHECK(summary.mean_proportion[0][1] == doctest::Approx(0.2));
        CHECK(summary.defined_instances[0] == 1);
        CHECK(summary.all_zero_instances == 0);
    }
    SUBCASE("threshold 0.6 keeps only the |2| scores") {
        const EffectSummary summary = normalized_effect({instance}, {0.6});
        CHECK(summary.mean_proportion[0][0] == doctest::Approx(1.0));
        CHECK(summary.mean_proportion[0][1] == doctest::Approx(0.0));
    }
    SUBCASE("all-zero instances are excluded and counted") {
        const EffectInstance zero = {
            {"order-1", {0.0}},
            {"order-2", {0.0, 0.0}},
        };
        const EffectSummary summary = normalized_effect({instance, zero}, {0.0});
        CHECK(summary.all_zero_instances == 1);
        CHECK(summary.defined_instances[0] == 1);
        CHECK(summary.mean_proportion[0][0] == doctest::Approx(0.8));
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS((void)normalized_effect({}, {0.0}), ValidationError);
        CHECK_THROWS_AS((void)normalized_effect({EffectInstance{}}, {0.0}), ValidationError);
        CHECK_THROWS_AS((void)normalized_effect({instance}, {0.5, 0.1}), ValidationError);
        CHECK_THROWS_AS((void)normalized_effect({instance}, {-0.1}), ValidationError);
    }
}

TEST_CASE("normalized effect properties on random two-class sets") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> score(-3.0, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<EffectInstance> instances;
        const int n = 3 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) {
            EffectInstance instance = {{"a", {}}, {"b", {}}};
            const int na = 1 + static_cast<int>(rng() % 5);
            const int nb = 1 + static_cast<int>(rng() % 5);
            for (int k = 0; k < na; ++k) instance[0].scores.push_back(score(rng));
            for (int k = 0; k < nb; ++k) instance[1].scores.push_back(score(rng));
            instances.push_back(std::move(instance));
        }
        const std::vector<double> thresholds = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
        const EffectSummary summary = normalized_effect(instances, thresholds);
        std::size_t prev_defined = instances.size();
        for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
            // survivors can only shrink as the threshold grows
            CHECK(summary.defined_instances[ti] <= prev_defined);
            prev_defined = summary.defined_instances[ti];
            if (summary.defined_instances[ti] == 0) continue;
            double total = 0.0;
            for (std::size_t c = 0; c < 2; ++c) {
                const double p = summary.mean_proportion[ti][c];
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
                total += p;
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("partition by cardinality") {
    const SetFunction mobius = mobius_score(sentence_isolation());
    AttributionResult result = weighted_score(mobius, mobius_kernel(),
                                              default_targets(mobius_kernel(), 3));
    const EffectInstance instance = partition_by_cardinality(result);
    REQUIRE(instance.size() == 3);
    CHECK(instance[0].label == "order-1");
    CHECK(instance[0].scores.size() == 3);
    CHECK(instance[1].scores.size() == 3);
    CHECK(instance[2].scores.size() == 1);
}

TEST_CASE("dummy feature report") {
    SUBCASE("additive model in x1 only") {
        PolynomialModel model(2, {{{2, 0}, 1.0}}, {3.0, 1.0});
        ModelOracle oracle(make_polynomial_backend(model));
        CHECK(dummy_feature_report(oracle.isolation_table()) == std::vector<int>{1});
    }
    SUBCASE("reference table has none") {
        CHECK(dummy_feature_report(sentence_isolation()).empty());
    }
    SUBCASE("all-zero table reports every feature") {
        CHECK(dummy_feature_report(SetFunction(3)) == std::vector<int>{0, 1, 2});
    }
}
