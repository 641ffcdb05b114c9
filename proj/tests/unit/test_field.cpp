#include "faclkit/error.hpp"
#include "faclkit/field.hpp"
#include "faclkit/parallel.hpp"
#include "faclkit/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

using namespace faclkit;

TEST_CASE("construction and indexing") {
    Field f(2, 3, 0.5);
    CHECK(f.rows() == 2);
    CHECK(f.cols() == 3);
    CHECK(f.sum() == doctest::Approx(3.0));
    f(1, 2) = 4.0;
    CHECK(f.values()[5] == 4.0);
    CHECK(f.max() == 4.0);
    CHECK(f.min() == 0.5);

    const Field g = Field::from_rows({{1, 2}, {3, 4}});
    CHECK(g(1, 0) == 3.0);
    CHECK(g.sum_squares() == 30.0);
}

TEST_CASE("invalid fields are rejected") {
    CHECK_THROWS_AS(Field(0, 3), DimensionError);
    CHECK_THROWS_AS(Field(2, 2, std::vector<double>{1, 2, 3}), DimensionError);
    CHECK_THROWS_AS(Field(1, 1, std::vector<double>{INFINITY}), DimensionError);
    CHECK_THROWS_AS(Field::from_rows({{1, 2}, {3}}), DimensionError);
}

TEST_CASE("shape checks") {
    CHECK_THROWS_AS(require_same_shape(Field(2, 3), Field(3, 2), "t"), DimensionError);
    CHECK_NOTHROW(require_same_shape(Field(2, 3), Field(2, 3), "t"));
    CHECK(shape_string(Field(4, 5)) == "4x5");
}

TEST_CASE("sequences are non-empty and homogeneous") {
    CHECK_THROWS_AS(Sequence(std::vector<Field>{}), DimensionError);
    CHECK_THROWS_AS(Sequence({Field(2, 2), Field(2, 3)}), DimensionError);
    const Sequence s({Field(2, 2), Field(2, 2, 1.0)});
    CHECK(s.length() == 2);
    CHECK(s[1](0, 0) == 1.0);
}

TEST_CASE("arithmetic helpers") {
    const Field a = Field::from_rows({{1, -2}});
    const Field b = Field::from_rows({{0.5, 3}});
    CHECK((a + b) == Field::from_rows({{1.5, 1}}));
    CHECK((a - b) == Field::from_rows({{0.5, -5}}));
    CHECK((2.0 * a) == Field::from_rows({{2, -4}}));
    CHECK(add_scalar(a, 1.0) == Field::from_rows({{2, -1}}));
    CHECK(clip(a, 0.0, 0.5) == Field::from_rows({{0.5, 0}}));
    CHECK_THROWS_AS(a + Field(2, 1), DimensionError);
}

TEST_CASE("circular shift moves content and wraps") {
    const Field f = Field::from_rows({{1, 2, 3}, {4, 5, 6}});
    const Field s = circular_shift(f, 1, 1);
    CHECK(s == Field::from_rows({{6, 4, 5}, {3, 1, 2}}));
    CHECK(circular_shift(f, -1, -2) == s);
    CHECK(circular_shift(f, 2, 3) == f);
}

TEST_CASE("stream seeds are stable and distinct") {
    static_assert(derive_seed(1, "a", 0) == derive_seed(1, "a", 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t m : {0ULL, 1ULL, 7ULL}) {
        for (const char* name : {"init", "motion", "glyph"}) {
            for (std::uint64_t i = 0; i < 50; ++i) seen.insert(derive_seed(m, name, i));
        }
    }
    CHECK(seen.size() == 3 * 3 * 50);
    // FNV-1a of the empty string and SplitMix64 of 0 are published constants.
    CHECK(name_tag("") == 0xCBF29CE484222325ULL);
    CHECK(mix64(0) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("uniform01 stays in [0, 1)") {
    Engine e(3);
    for (int i = 0; i < 100000; ++i) {
        const double u = uniform01(e);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("parallel_for covers every index once and rethrows") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 7, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                     if (i == 5) throw std::runtime_error("x");
                                 }),
                    std::runtime_error);
}
