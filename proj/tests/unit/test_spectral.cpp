#include "faclkit/error.hpp"
#include "faclkit/spectral.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>

using namespace faclkit;

TEST_CASE("dft2 of a scalar is the scalar") {
    const auto f = dft2(Field(1, 1, 3.25));
    CHECK(f(0, 0).real() == doctest::Approx(3.25).epsilon(1e-15));
    CHECK(std::abs(f(0, 0).imag()) < 1e-15);
}

TEST_CASE("dft2 of zeros is zeros") {
    const auto f = dft2(Field(6, 5));
    for (auto v : f.values()) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("dft2 of a 2x2 impulse") {
    const auto f = dft2(Field::from_rows({{1, 0}, {0, 0}}));
    const auto ref = oracle::dft2(Field::from_rows({{1, 0}, {0, 0}}));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(f.values()[i] - 0.5) < 1e-15);
        CHECK(std::abs(ref[i] - 0.5) < 1e-15);
    }
}

TEST_CASE("dft2 matches the direct double sum, including odd sizes") {
    const std::size_t shapes[][2] = {{4, 4}, {5, 7}, {12, 9}, {3, 16}, {1, 6}};
    std::uint64_t seed = 1;
    for (auto [m, n] : shapes) {
        const Field x = oracle::random_field(m, n, seed++, -1.0, 1.0);
        const auto fast = dft2(x);
        const auto ref = oracle::dft2(x);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(std::abs(fast.values()[i] - ref[i]) < 1e-12);
        }
    }
}

TEST_CASE("idft2 matches the direct inverse sum") {
    const Field x = oracle::random_field(6, 10, 3);
    SpectralField f = dft2(x);
    f(1, 2) += Complex(0.3, -0.7);
    const auto ref = oracle::idft2({f.values().begin(), f.values().end()}, 6, 10);
    const auto inv = idft2_complex(f);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(inv.values()[i] - ref[i]) < 1e-12);
}

TEST_CASE("round trip reproduces the field") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const std::size_t m = 3 + s % 13, n = 2 + (s * 7) % 17;
        const Field x = oracle::random_field(m, n, s);
        const Field back = idft2(dft2(x));
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(std::abs(back.values()[i] - x.values()[i]) <= 1e-10 * std::abs(x.values()[i]) + 1e-15);
        }
        const auto full = idft2_complex(dft2(x));
        for (auto v : full.values()) CHECK(std::abs(v.imag()) <= 1e-9);
    }
}

TEST_CASE("idft2 of zeros and of a DC-only spectrum") {
    const Field z = idft2(SpectralField(4, 6));
    for (double v : z.values()) CHECK(v == 0.0);
    SpectralField dc(4, 6);
    dc(0, 0) = 2.0;
    const Field c = idft2(dc);
    for (double v : c.values()) CHECK(v == doctest::Approx(2.0 / std::sqrt(24.0)).epsilon(1e-14));
}

TEST_CASE("amplitude") {
    SpectralField f(1, 2);
    f(0, 0) = Complex(3, 4);
    const Field a = amplitude(f);
    CHECK(a(0, 0) == doctest::Approx(5.0));
    CHECK(a(0, 1) == 0.0);
}

TEST_CASE("amplitude is unchanged by every circular shift of an 8x8 field") {
    const Field x = oracle::random_field(8, 8, 11);
    const auto ref = oracle::dft2(x);
    for (long dr = 0; dr < 8; ++dr) {
        for (long dc = 0; dc < 8; ++dc) {
            const Field a = amplitude(dft2(circular_shift(x, dr, dc)));
            for (std::size_t i = 0; i < ref.size(); ++i) {
                CHECK(std::abs(a.values()[i] - std::abs(ref[i])) <= 1e-9);
            }
        }
    }
}

TEST_CASE("phase convention") {
    SpectralField f(1, 5);
    f(0, 0) = Complex(1, 0);
    f(0, 1) = Complex(0, 1);
    f(0, 2) = Complex(-1, 0);
    f(0, 3) = Complex(-1, -0.0);
    f(0, 4) = Complex(0, -2);
    const Field p = phase(f);
    CHECK(p(0, 0) == 0.0);
    CHECK(p(0, 1) == doctest::Approx(std::numbers::pi / 2));
    CHECK(p(0, 2) == doctest::Approx(std::numbers::pi));
    CHECK(p(0, 3) == doctest::Approx(std::numbers::pi));
    CHECK(p(0, 4) == doctest::Approx(-std::numbers::pi / 2));
}

TEST_CASE("Parseval on 200 random fields from 4x4 to 64x64") {
    std::mt19937 gen(5);
    std::uniform_int_distribution<std::size_t> side(4, 64);
    for (std::uint64_t s = 0; s < 200; ++s) {
        const Field x = oracle::random_field(side(gen), side(gen), 100 + s, -1.0, 1.0);
        const double e = x.sum_squares();
        CHECK(std::abs(dft2(x).energy() - e) <= 1e-9 * e);
    }
}

TEST_CASE("linearity") {
    const Field x = oracle::random_field(9, 7, 1), y = oracle::random_field(9, 7, 2);
    const double a = 1.7, b = -0.4;
    const auto lhs = dft2(a * x + b * y);
    const auto fx = dft2(x), fy = dft2(y);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        CHECK(std::abs(lhs.values()[i] - (a * fx.values()[i] + b * fy.values()[i])) <= 1e-9);
    }
}

TEST_CASE("empty and non-finite input") {
    CHECK_THROWS_AS(dft2(Field()), DimensionError);
    CHECK_THROWS_AS(idft2(SpectralField()), DimensionError);
    CHECK_THROWS_AS(Field(1, 2, std::vector<double>{1.0, NAN}), DimensionError);
}

TEST_CASE("concurrent transforms agree with sequential ones") {
    std::vector<Field> inputs;
    for (std::uint64_t s = 0; s < 16; ++s) inputs.push_back(oracle::random_field(10 + s, 12, s));
    std::vector<SpectralField> seq, par(inputs.size());
    for (const auto& x : inputs) seq.push_back(dft2(x));
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            pool.emplace_back([&, i] { par[i] = dft2(inputs[i]); });
        }
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        for (std::size_t k = 0; k < seq[i].size(); ++k) CHECK(seq[i].values()[k] == par[i].values()[k]);
    }
}
