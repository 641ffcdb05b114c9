#include "faclkit/error.hpp"
#include "faclkit/glyphs.hpp"
#include "faclkit/losses.hpp"
#include "faclkit/metrics.hpp"
#include "faclkit/optimizer.hpp"
#include "faclkit/study.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace faclkit;

namespace {

Field target() { return center_on_canvas(glyph_corpus(3, 1)[2], 32, 32); }

std::vector<double> moving_average(const std::vector<TraceEntry>& trace, std::size_t w) {
    std::vector<double> out;
    double s = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        s += trace[i].loss;
        if (i >= w) s -= trace[i - w].loss;
        if (i + 1 >= w) out.push_back(s / static_cast<double>(w));
    }
    return out;
}

} // namespace

TEST_CASE("names round-trip") {
    for (OptLoss l : {OptLoss::FAL, OptLoss::FCL, OptLoss::FACL, OptLoss::MSE}) {
        CHECK(parse_opt_loss(to_string(l)) == l);
    }
    CHECK(parse_opt_loss("FACL") == OptLoss::FACL);
    CHECK(parse_init_mode("noise") == InitMode::Noise);
    CHECK_THROWS_AS(parse_opt_loss("l1"), ValidationError);
}

TEST_CASE("trace shape and output range") {
    OptConfig cfg;
    cfg.steps = 50;
    cfg.learning_rate = 100.0;
    const auto run = reconstruct(target(), cfg);
    CHECK(run.trace.size() == 50);
    CHECK(run.trace.front().step == 0);
    CHECK(run.trace.back().step == 49);
    CHECK(run.final_field.min() > 0.0);
    CHECK(run.final_field.max() < 1.0);
    for (const auto& e : run.trace) CHECK(e.which == LossKind::MSE);
    // The first entry is the loss of the starting point sigmoid(0) = 0.5.
    CHECK(run.trace[0].loss == doctest::Approx(mse(target(), Field(32, 32, 0.5)).value));
}

TEST_CASE("runs are deterministic") {
    OptConfig cfg;
    cfg.loss = OptLoss::FACL;
    cfg.steps = 100;
    cfg.learning_rate = 1000.0;
    cfg.schedule.seed = 4;
    const auto a = reconstruct(target(), cfg), b = reconstruct(target(), cfg);
    CHECK(a.final_field == b.final_field);
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].which == b.trace[i].which);
        CHECK(a.trace[i].loss == b.trace[i].loss);
    }
    cfg.init = InitMode::Noise;
    const auto c = reconstruct(target(), cfg);
    cfg.seed = 1;
    CHECK_FALSE(reconstruct(target(), cfg).final_field == c.final_field);
}

TEST_CASE("facl follows its schedule") {
    OptConfig cfg;
    cfg.loss = OptLoss::FACL;
    cfg.steps = 1000;
    cfg.learning_rate = 1000.0;
    cfg.schedule.alpha = 0.2;
    const auto run = reconstruct(target(), cfg);
    std::size_t early_fcl = 0, late_fal = 0;
    for (std::size_t t = 0; t < 100; ++t) early_fcl += run.trace[t].which == LossKind::FCL;
    for (std::size_t t = 800; t < 1000; ++t) late_fal += run.trace[t].which == LossKind::FAL;
    CHECK(early_fcl >= 95);
    CHECK(late_fal == 200);
}

TEST_CASE("mse and fcl runs have a non-increasing 100-step moving average") {
    for (auto [loss, lr] : {std::pair{OptLoss::MSE, 4096.0}, std::pair{OptLoss::FCL, 1024.0}}) {
        CAPTURE(to_string(loss));
        OptConfig cfg;
        cfg.loss = loss;
        cfg.steps = 2000;
        cfg.learning_rate = lr;
        const auto run = reconstruct(target(), cfg);
        const auto avg = moving_average(run.trace, 100);
        std::size_t rises = 0;
        for (std::size_t i = 1; i < avg.size(); ++i) rises += avg[i] > avg[i - 1];
        CHECK(rises == 0);
    }
}

TEST_CASE("single-loss reconstructions behave as described") {
    const Field t = target();
    OptConfig cfg;
    cfg.loss = OptLoss::FCL;
    cfg.learning_rate = 1024.0;
    const Field fc = reconstruct(t, cfg).final_field;
    CHECK(fcl(t, fc).value <= 1e-3);
    CHECK(pearson(fc, t) >= 0.95);

    cfg.loss = OptLoss::FACL;
    cfg.learning_rate = 4096.0;
    const Field fa = reconstruct(t, cfg).final_field;
    CHECK(ssim(fa, t) >= 0.9);
    CHECK(fal(t, fa).value <= 1e-2);
}

TEST_CASE("an enormous step saturates instead of producing nan") {
    for (OptLoss loss : {OptLoss::MSE, OptLoss::FAL, OptLoss::FCL}) {
        OptConfig cfg;
        cfg.loss = loss;
        cfg.steps = 20;
        cfg.learning_rate = std::numeric_limits<double>::max();
        const auto run = reconstruct(target(), cfg);
        for (const auto& e : run.trace) CHECK(std::isfinite(e.loss));
        CHECK(run.final_field.min() >= 0.0);
        CHECK(run.final_field.max() <= 1.0);
    }
}

TEST_CASE("invalid inputs") {
    OptConfig cfg;
    cfg.steps = 0;
    CHECK_THROWS_AS(reconstruct(target(), cfg), ValidationError);
    cfg = OptConfig{};
    cfg.learning_rate = -1.0;
    CHECK_THROWS_AS(reconstruct(target(), cfg), ValidationError);
    CHECK_THROWS_AS(reconstruct(Field(8, 8), OptConfig{}), DegenerateInputError);
    CHECK_THROWS_AS(reconstruct(Field(8, 8, 1.5), OptConfig{}), ValidationError);
}

TEST_CASE("trace csv") {
    OptConfig cfg;
    cfg.steps = 2;
    const auto run = reconstruct(target(), cfg);
    std::ostringstream os;
    write_trace_csv(os, run);
    const std::string s = os.str();
    CHECK(s.rfind("step,loss,which\n0,", 0) == 0);
    CHECK(s.find("\n1,") != std::string::npos);
    CHECK(s.find(",mse\n") != std::string::npos);
}
