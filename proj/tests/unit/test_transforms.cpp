#include "faclkit/error.hpp"
#include "faclkit/transforms.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace faclkit;

TEST_CASE("names") {
    CHECK(transform_name(Identity{}) == "identity");
    CHECK(transform_name(GaussianBlur{27, 15}) == "blur(k=27,s=15)");
    CHECK(transform_name(Translate{4, 4}) == "translate(4,4)");
    CHECK(transform_name(Rotate{5}) == "rotate(5)");
    CHECK(transform_name(Brighten{}) == "brighten(x2,>0.5)");
    CHECK(transform_name(Darken{}) == "darken(/2,<0.5)");
}

TEST_CASE("identity-like parameters leave the field unchanged") {
    const Field x = oracle::random_field(12, 10, 1);
    CHECK(apply_transform(x, Identity{}) == x);
    CHECK(apply_transform(x, Translate{0, 0}) == x);
    CHECK(apply_transform(x, GaussianBlur{1, 3.0}) == x);
    CHECK(oracle::max_abs_diff(apply_transform(x, Rotate{0.0}), x) <= 1e-12);
    CHECK(oracle::max_abs_diff(apply_transform(x, GaussianBlur{3, 1e-3}), x) <= 1e-12);
}

TEST_CASE("gaussian taps") {
    const auto k = gaussian_kernel(5, 1.0);
    CHECK(std::accumulate(k.begin(), k.end(), 0.0) == doctest::Approx(1.0));
    CHECK(k[0] == doctest::Approx(k[4]));
    CHECK(k[1] / k[2] == doctest::Approx(std::exp(-0.5)));
    CHECK(kernel_for_sigma(15.0) == 91);
    CHECK(kernel_for_sigma(0.5) == 5);
    CHECK(kernel_for_sigma(0.0) == 1);
}

TEST_CASE("blur keeps constants and mean mass with reflect padding") {
    CHECK(oracle::max_abs_diff(apply_transform(Field(9, 9, 0.3), GaussianBlur{7, 2.0}), Field(9, 9, 0.3)) <=
          1e-15);
    // Reflect-101 at the first column: taps fold onto columns 1, 2, ...
    Field impulse(1, 5);
    impulse(0, 1) = 1.0;
    const auto k = gaussian_kernel(3, 1.0);
    const Field b = apply_transform(impulse, GaussianBlur{3, 1.0});
    CHECK(b(0, 0) == doctest::Approx(2.0 * k[0]));
    CHECK(b(0, 1) == doctest::Approx(k[1]));
    CHECK(b(0, 2) == doctest::Approx(k[2]));
}

TEST_CASE("translate moves right and down with zero fill") {
    const Field x = Field::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    const Field y = apply_transform(Field::from_rows({{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}, {0.7, 0.8, 0.9}}),
                                    Translate{1, 2});
    CHECK(y(2, 1) == doctest::Approx(0.1));
    CHECK(y(2, 2) == doctest::Approx(0.2));
    CHECK(y(0, 0) == 0.0);
    CHECK(y.sum() == doctest::Approx(0.3));
    CHECK(apply_transform(0.1 * x, Translate{-1, 0})(0, 0) == doctest::Approx(0.2));
}

TEST_CASE("rotation is clockwise") {
    Field x(21, 21);
    x(10, 15) = 1.0;  // right of centre
    const Field y = apply_transform(x, Rotate{90.0});
    // a quarter turn clockwise takes "right" to "below"
    CHECK(y(15, 10) == doctest::Approx(1.0));
    CHECK(y.sum() == doctest::Approx(1.0));
    const Field z = apply_transform(x, Rotate{-90.0});
    CHECK(z(5, 10) == doctest::Approx(1.0));
}

TEST_CASE("brighten and darken act on their side of the cut") {
    const Field x = Field::from_rows({{0.4, 0.5, 0.6, 0.2}});
    const Field b = apply_transform(x, Brighten{});
    CHECK(b == Field::from_rows({{0.4, 0.5, 1.0, 0.2}}));
    const Field d = apply_transform(x, Darken{});
    CHECK(d == Field::from_rows({{0.2, 0.5, 0.6, 0.1}}));
}

TEST_CASE("output is clipped to the unit interval") {
    const Field x = oracle::random_field(16, 16, 3);
    for (const auto& t : standard_distortions()) {
        const Field y = apply_transform(x, t);
        CHECK(y.min() >= 0.0);
        CHECK(y.max() <= 1.0);
    }
    CHECK(standard_distortions().size() == 5);
}

TEST_CASE("invalid parameters") {
    const Field x(8, 8);
    CHECK_THROWS_AS(apply_transform(x, GaussianBlur{4, 1.0}), ValidationError);
    CHECK_THROWS_AS(apply_transform(x, GaussianBlur{3, -1.0}), ValidationError);
    CHECK_THROWS_AS(apply_transform(x, GaussianBlur{0, 1.0}), ValidationError);
    CHECK_THROWS_AS(validate_transform(Translate{8, 0}, 8, 8), ValidationError);
    CHECK_THROWS_AS(validate_transform(Brighten{-1.0, 0.5}, 8, 8), ValidationError);
    CHECK_THROWS_AS(validate_transform(Darken{0.0, 0.5}, 8, 8), ValidationError);
    CHECK_THROWS_AS(validate_transform(Rotate{std::nan("")}, 8, 8), ValidationError);
}
