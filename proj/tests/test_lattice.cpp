// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "mobscore/set_function.hpp"
#include "mobscore/transforms.hpp"
#include "test_util.hpp"

using namespace mobscore;
using mobscore::testing::random_set_function;
using mobscore::testing::tables_close;

namespace {

FeatureSet fs(std::uint32_t bits, int d) { return FeatureSet::from_mask(bits, d); }

} // namespace

TEST_CASE("feature set basics") {
    const FeatureSet s = FeatureSet::from_indices(std::vector<int>{0, 2}, 3);
    CHECK(s.bits() == 0b101);
    CHECK(s.cardinality() == 2);
    CHECK(s.contains(0));
    CHECK(!s.contains(1));
    CHECK(s.complement().bits() == 0b010);
    CHECK(s.to_string() == "{0,2}");
    CHECK(FeatureSet::full_set(3).bits() == 0b111);
    CHECK(FeatureSet::empty_set(3).cardinality() == 0);
    CHECK(s.is_subset_of(FeatureSet::full_set(3)));

    CHECK_THROWS_AS(FeatureSet::from_mask(0b100, 2), ValidationError);
    CHECK_THROWS_AS(FeatureSet::from_indices(std::vector<int>{0, 0}, 2), ValidationError);
    CHECK_THROWS_AS(FeatureSet::from_indices(std::vector<int>{3}, 2), ValidationError);
    CHECK_THROWS_AS(FeatureSet::empty_set(27), ValidationError);
}

TEST_CASE("make_set_function") {
    SUBCASE("dense construction") {
        const SetFunction f =
            make_set_function(1, {{fs(0, 1), 0.0}, {fs(1, 1), 5.0}});
        CHECK(f.values() == std::vector<double>{0.0, 5.0});
    }
    SUBCASE("constant fill") {
        const SetFunction f = make_set_function(2, {{fs(0, 2), 0.0}}, 0.0);
        CHECK(f.values() == std::vector<double>{0.0, 0.0, 0.0, 0.0});
    }
    SUBCASE("missing subset without default") {
        CHECK_THROWS_WITH_AS(
            make_set_function(2, {{fs(0, 2), 1.0}, {fs(1, 2), 1.0}, {fs(2, 2), 1.0}}),
            doctest::Contains("missing subset"), ValidationError);
    }
    SUBCASE("duplicate key") {
        CHECK_THROWS_WITH_AS(make_set_function(1, {{fs(0, 1), 1.0}, {fs(0, 1), 2.0}}),
                             doctest::Contains("duplicate"), ValidationError);
    }
    SUBCASE("dimension out of range") {
        CHECK_THROWS_AS(make_set_function(27, {}, 0.0), ValidationError);
        CHECK_THROWS_AS(SetFunction(21, std::vector<double>{}), ValidationError);
        CHECK_NOTHROW(SetFunction(0, std::vector<double>{1.0}));
    }
    SUBCASE("non-finite value") {
        CHECK_THROWS_WITH_AS(
            make_set_function(1, {{fs(0, 1), 0.0}, {fs(1, 1), std::nan("")}}),
            doctest::Contains("non-finite"), ValidationError);
    }
}

TEST_CASE("zeta transform worked example") {
    const SetFunction f(2, {0.0, 1.0, 2.0, 0.0});
    CHECK(zeta_transform(f).values() == std::vector<double>{0.0, 1.0, 2.0, 3.0});
    CHECK(zeta_transform(SetFunction(3)).values() == std::vector<double>(8, 0.0));
}

TEST_CASE("mobius transform worked example and inverse pair") {
    const SetFunction f(2, {0.0, 1.0, 2.0, 3.0});
    CHECK(mobius_transform(f).values() == std::vector<double>{0.0, 1.0, 2.0, 0.0});

    std::mt19937_64 rng(7);
    const SetFunction g = random_set_function(6, rng);
    CHECK(tables_close(mobius_transform(zeta_transform(g)), g));
    CHECK(tables_close(zeta_transform(mobius_transform(g)), g));
}

TEST_CASE("naive transforms: base cases and agreement") {
    const SetFunction single(0, std::vector<double>{4.5});
    CHECK(zeta_transform_naive(single).values() == std::vector<double>{4.5});
    CHECK(mobius_transform_naive(single).values() == std::vector<double>{4.5});

    const SetFunction f(2, {0.0, 1.0, 2.0, 0.0});
    CHECK(zeta_transform_naive(f).values() == std::vector<double>{0.0, 1.0, 2.0, 3.0});

    std::mt19937_64 rng(11);
    for (int d : {3, 10}) {
        const SetFunction g = random_set_function(d, rng);
        CHECK(tables_close(zeta_transform(g), zeta_transform_naive(g)));
        CHECK(tables_close(mobius_transform(g), mobius_transform_naive(g)));
    }

    CHECK_THROWS_AS(zeta_transform_naive(SetFunction(15)), ValidationError);
    CHECK_THROWS_AS(mobius_transform_naive(SetFunction(15)), ValidationError);
}

TEST_CASE("subset and superset iteration") {
    SUBCASE("subsets of {0,1}") {
        std::vector<std::uint32_t> seen;
        for (const FeatureSet& t : subsets(fs(0b11, 2))) seen.push_back(t.bits());
        CHECK(seen == std::vector<std::uint32_t>{0b00, 0b01, 0b10, 0b11});
    }
    SUBCASE("supersets of {0} in d=2") {
        std::vector<std::uint32_t> seen;
        for (const FeatureSet& t : supersets(fs(0b01, 2))) seen.push_back(t.bits());
        CHECK(seen == std::vector<std::uint32_t>{0b01, 0b11});
    }
    SUBCASE("subset count is 2^|S| and all distinct") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            const int d = static_cast<int>(rng() % 9);
            const std::uint32_t mask =
                d == 0 ? 0u : static_cast<std::uint32_t>(rng()) & ((1u << d) - 1u);
            const FeatureSet s = fs(mask, d);
            std::set<std::uint32_t> distinct;
            std::uint32_t prev = 0;
            bool first = true;
            for (const FeatureSet& t : subsets(s)) {
                CHECK(t.is_subset_of(s));
                if (!first) CHECK(t.bits() > prev); // ascending
                prev = t.bits();
                first = false;
                distinct.insert(t.bits());
            }
            CHECK(distinct.size() == (std::size_t{1} << s.cardinality()));
        }
    }
    SUBCASE("iterating all subsets of the full set") {
        std::set<std::uint32_t> distinct;
        for (const FeatureSet& t : subsets(FeatureSet::full_set(5))) distinct.insert(t.bits());
        CHECK(distinct.size() == 32);
    }
    SUBCASE("supersets complete within width") {
        for (const FeatureSet& t : supersets(fs(0, 3))) {
            CHECK(t.width() == 3);
        }
        std::size_t count = 0;
        for ([[maybe_unused]] const FeatureSet& t : supersets(fs(0b010, 3))) ++count;
        CHECK(count == 4);
    }
}

TEST_CASE("canonical order") {
    const auto order = canonical_subsets(3);
    REQUIRE(order.size() == 8);
    CHECK(order[0].bits() == 0b000);
    CHECK(order[1].bits() == 0b001);
    CHECK(order[2].bits() == 0b010);
    CHECK(order[3].bits() == 0b100);
    CHECK(order[4].bits() == 0b011);
    CHECK(order[5].bits() == 0b101);
    CHECK(order[6].bits() == 0b110);
    CHECK(order[7].bits() == 0b111);
}

TEST_CASE("transform properties on random instances") {
    std::mt19937_64 rng(2026);
    SUBCASE("round trip up to d=14") {
        for (int trial = 0; trial < 40; ++trial) {
            const int d = static_cast<int>(rng() % 15);
            const SetFunction f = random_set_function(d, rng);
            CHECK(tables_close(mobius_transform(zeta_transform(f)), f));
            CHECK(tables_close(zeta_transform(mobius_transform(f)), f));
        }
    }
    SUBCASE("linearity") {
        for (int trial = 0; trial < 20; ++trial) {
            const int d = 1 + static_cast<int>(rng() % 8);
            const SetFunction f = random_set_function(d, rng);
            const SetFunction g = random_set_function(d, rng);
            std::uniform_real_distribution<double> coeff(-3.0, 3.0);
            const double a = coeff(rng);
            const double b = coeff(rng);
            const SetFunction combo = a * SetFunction(f) + b * SetFunction(g);
            CHECK(tables_close(zeta_transform(combo),
                               a * zeta_transform(f) + b * zeta_transform(g)));
            CHECK(tables_close(mobius_transform(combo),
                               a * mobius_transform(f) + b * mobius_transform(g)));
        }
    }
    SUBCASE("fast equals naive up to d=12") {
        for (int d = 0; d <= 12; ++d) {
            const SetFunction f = random_set_function(d, rng);
            CHECK(tables_close(zeta_transform(f), zeta_transform_naive(f)));
            CHECK(tables_close(mobius_transform(f), mobius_transform_naive(f)));
        }
    }
}
