#include "faclkit/error.hpp"
#include "faclkit/losses.hpp"
#include "faclkit/spectral.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace faclkit;

namespace {

const LossKind kAll[] = {LossKind::FAL, LossKind::FCL, LossKind::MSE, LossKind::MAE,
                         LossKind::FourierL2};

// Relative error per element where the analytic gradient is not tiny.
double worst_relative(const Field& analytic, const Field& numeric, double floor = 1e-6) {
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double a = analytic.values()[i], n = numeric.values()[i];
        if (std::abs(a) <= floor) continue;
        worst = std::max(worst, std::abs(a - n) / std::max(std::abs(a), std::abs(n)));
    }
    return worst;
}

} // namespace

TEST_CASE("fal: zero at equality and under circular shifts") {
    const Field x = oracle::random_field(8, 8, 4);
    CHECK(fal(x, x).value == 0.0);
    for (long dr = 0; dr < 8; ++dr) {
        for (long dc = 0; dc < 8; ++dc) {
            const Field s = circular_shift(x, dr, dc);
            CHECK(fal(x, s).value <= 1e-9);
            CHECK(oracle::fal(x, s) <= 1e-9);
        }
    }
}

TEST_CASE("fal: 2x2 impulse against zeros") {
    const Field x = Field::from_rows({{1, 0}, {0, 0}});
    const Field z(2, 2);
    CHECK(fal(x, z).value == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(oracle::fal(x, z) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("fal and fcl values match direct summation") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Field x = oracle::random_field(7, 9, s), y = oracle::random_field(7, 9, s + 50);
        CHECK(fal(x, y).value == doctest::Approx(oracle::fal(x, y)).epsilon(1e-12));
        CHECK(fcl(x, y).value == doctest::Approx(oracle::fcl(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("fal decomposition identity") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Field x = oracle::random_field(12, 10, s), y = oracle::random_field(12, 10, s + 7);
        const auto d = fal_decomposition(x, y);
        CHECK(std::abs(d.reconstructed() - fal(x, y).value) <= 1e-9);
        double l2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            l2 += std::pow(x.values()[i] - y.values()[i], 2);
        }
        CHECK(d.l2 == doctest::Approx(l2 / x.size()).epsilon(1e-12));
    }
}

TEST_CASE("fal decomposition at equality: cross terms equal, not zero") {
    const Field x = oracle::random_field(6, 6, 3);
    const auto d = fal_decomposition(x, x);
    const double expected = 2.0 * x.sum_squares() / 36.0;
    CHECK(d.l2 == 0.0);
    CHECK(d.cross_spatial == doctest::Approx(expected).epsilon(1e-12));
    CHECK(d.cross_spectral == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("fcl: fixed points and range") {
    const Field x = oracle::random_field(8, 8, 9);
    CHECK(std::abs(fcl(x, x).value) <= 1e-12);
    for (double beta : {0.1, 0.5, 2.0, 10.0}) CHECK(std::abs(fcl(x, beta * x).value) <= 1e-12);
    CHECK(fcl(x, -1.0 * x).value == doctest::Approx(2.0).epsilon(1e-12));
    const Field y = oracle::random_field(8, 8, 10, -1.0, 1.0);
    CHECK(fcl(x, y).value == doctest::Approx(fcl(y, x).value).epsilon(1e-12));
}

TEST_CASE("fcl stays in [0, 2] on 10^4 random pairs") {
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const Field a = oracle::random_field(4, 4, 2 * s, -1.0, 1.0);
        const Field b = oracle::random_field(4, 4, 2 * s + 1, -1.0, 1.0);
        const double v = fcl(a, b).value;
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 2.0);
    }
}

TEST_CASE("fcl rejects all-zero input") {
    const Field x = oracle::random_field(4, 4, 1);
    CHECK_THROWS_AS(fcl(Field(4, 4), x), DegenerateInputError);
    CHECK_THROWS_AS(fcl(x, Field(4, 4)), DegenerateInputError);
}

TEST_CASE("fcl gradient vanishes at xhat = beta x") {
    const Field x = oracle::random_field(16, 16, 21);
    for (double beta : {0.1, 0.5, 2.0, 10.0}) {
        const Field xh = beta * x;
        CHECK(oracle::max_abs(fcl(x, xh).gradient) <= 1e-9);
        const Field num = oracle::central_difference([&](const Field& p) { return fcl(x, p).value; }, xh);
        CHECK(oracle::max_abs(num) <= 1e-9);
    }
}

TEST_CASE("fourier_l2 equals mse in value and gradient") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const Field x = oracle::random_field(5 + s % 11, 4 + s % 7, s);
        const Field y = oracle::random_field(x.rows(), x.cols(), s + 1000);
        const auto f = fourier_l2(x, y), m = mse(x, y);
        CHECK(std::abs(f.value - m.value) <= 1e-9 * m.value);
        CHECK(oracle::max_abs_diff(f.gradient, m.gradient) <= 1e-9);
    }
    const Field x = oracle::random_field(6, 6, 2);
    CHECK(fourier_l2(x, x).value == 0.0);
    CHECK(fourier_l2(x, add_scalar(x, 0.3)).value == doctest::Approx(0.09).epsilon(1e-12));
}

TEST_CASE("mse and mae on small fields") {
    const Field a = Field::from_rows({{0, 0}});
    const Field b = Field::from_rows({{1, 1}});
    CHECK(mse(a, a).value == 0.0);
    CHECK(mse(a, b).value == 1.0);
    CHECK(mae(a, b).value == 1.0);
    CHECK(mae(a, b).gradient == Field::from_rows({{0.5, 0.5}}));
    CHECK(mse(a, b).gradient == Field::from_rows({{1.0, 1.0}}));
}

TEST_CASE("shape mismatch is a dimension error for every loss") {
    for (LossKind k : kAll) {
        CHECK_THROWS_AS(evaluate_loss(k, Field(3, 3, 1.0), Field(3, 4, 1.0)), DimensionError);
    }
}

TEST_CASE("every gradient is zero at equality") {
    const Field x = oracle::random_field(8, 8, 77);
    for (LossKind k : kAll) {
        CAPTURE(to_string(k));
        const auto e = evaluate_loss(k, x, x);
        CHECK(e.which == k);
        CHECK(oracle::max_abs(e.gradient) <= 1e-9);
    }
}

TEST_CASE("analytic gradients match central differences on 50 pairs at 8x8 and 16x16") {
    for (LossKind k : kAll) {
        CAPTURE(to_string(k));
        double worst = 0.0;
        for (std::size_t size : {8u, 16u}) {
            for (std::uint64_t s = 0; s < 50; ++s) {
                const Field x = oracle::random_field(size, size, 3 * s + 1, 0.05, 0.95);
                Field y = oracle::random_field(size, size, 3 * s + 2, 0.05, 0.95);
                // keep MAE away from its kink
                for (std::size_t i = 0; i < y.size(); ++i) {
                    if (std::abs(y.values()[i] - x.values()[i]) < 1e-3) y.values()[i] += 2e-3;
                }
                const Field num = oracle::central_difference(
                    [&](const Field& p) {
                        return k == LossKind::FCL ? oracle::fcl_spatial(x, p) : evaluate_loss(k, x, p).value;
                    },
                    y);
                worst = std::max(worst, worst_relative(evaluate_loss(k, x, y).gradient, num));
            }
        }
        CHECK(worst <= 1e-4);
    }
}

TEST_CASE("fal is blind to phase when amplitude is held fixed") {
    const std::size_t n = 8;
    const Field x = oracle::random_field(n, n, 5);
    const Field xh = oracle::random_field(n, n, 6);
    const SpectralField fh = dft2(xh);
    // Odd-symmetric random phase keeps the inverse real.
    const Field noise = oracle::random_field(n, n, 7, -3.0, 3.0);
    SpectralField g(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t pp = (n - p) % n, qq = (n - q) % n;
            const double phi = (p * n + q < pp * n + qq) ? noise(p, q)
                               : (p * n + q > pp * n + qq) ? -noise(pp, qq)
                                                           : 0.0;
            g(p, q) = std::abs(fh(p, q)) * std::polar(1.0, phi);
        }
    }
    const SpectralField back = idft2_complex(g);
    for (auto v : back.values()) REQUIRE(std::abs(v.imag()) < 1e-12);
    const Field xh2 = idft2(g);
    CHECK(oracle::max_abs_diff(xh, xh2) > 1e-3);
    CHECK(std::abs(fal(x, xh2).value - fal(x, xh).value) <= 1e-6);
}

TEST_CASE("fal gradient at a zero-spectrum prediction uses the zero-phase convention") {
    const Field x = oracle::random_field(4, 4, 8);
    const auto e = fal(x, Field(4, 4));
    CHECK(e.value == doctest::Approx(x.sum_squares() / 16.0).epsilon(1e-12));
    // -(2/MN) idft2(|F|): finite and real
    CHECK(e.gradient.all_finite());
}

TEST_CASE("sigmoid and its chain rule") {
    const Field z = Field::from_rows({{0.0, 50.0, -50.0}});
    const Field s = sigmoid(z);
    CHECK(s(0, 0) == 0.5);
    CHECK(std::abs(s(0, 1) - 1.0) <= 1e-15);
    CHECK(s(0, 2) > 0.0);

    const Field target = oracle::random_field(8, 8, 12);
    const Field logits = oracle::random_field(8, 8, 13, -2.0, 2.0);
    for (LossKind k : {LossKind::FAL, LossKind::FCL, LossKind::MSE}) {
        auto through = [&](const Field& zz) { return evaluate_loss(k, target, sigmoid(zz)).value; };
        const Field xh = sigmoid(logits);
        const Field chain = sigmoid_backward(xh, evaluate_loss(k, target, xh).gradient);
        CHECK(worst_relative(chain, oracle::central_difference(through, logits)) <= 1e-4);
    }
}

TEST_CASE("sequence loss is the mean over frames") {
    const Sequence a({oracle::random_field(6, 6, 1), oracle::random_field(6, 6, 2)});
    const Sequence b({oracle::random_field(6, 6, 3), oracle::random_field(6, 6, 4)});
    const auto e = evaluate_sequence_loss(LossKind::FAL, a, b);
    const double mean = 0.5 * (fal(a[0], b[0]).value + fal(a[1], b[1]).value);
    CHECK(e.value == doctest::Approx(mean).epsilon(1e-14));
    REQUIRE(e.gradients.size() == 2);
    CHECK(oracle::max_abs_diff(e.gradients[1], 0.5 * fal(a[1], b[1]).gradient) <= 1e-15);
    CHECK_THROWS_AS(evaluate_sequence_loss(LossKind::MSE, a, Sequence({Field(6, 6)})), DimensionError);
}

TEST_CASE("loss names") {
    CHECK(parse_loss_kind("FAL") == LossKind::FAL);
    CHECK(parse_loss_kind("fourier_l2") == LossKind::FourierL2);
    CHECK_THROWS_AS(parse_loss_kind("ssim"), ValidationError);
    for (LossKind k : kAll) CHECK(parse_loss_kind(to_string(k)) == k);
}
