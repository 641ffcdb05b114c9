#include "faclkit/optimizer.hpp"

#include "faclkit/error.hpp"
#include "faclkit/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

namespace faclkit {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

std::string_view to_string(OptLoss loss) {
    switch (loss) {
    case OptLoss::FAL: return "fal";
    case OptLoss::FCL: return "fcl";
    case OptLoss::FACL: return "facl";
    case OptLoss::MSE: return "mse";
    }
    return "?";
}

OptLoss parse_opt_loss(std::string_view name) {
    const auto n = lower(name);
    if (n == "fal") return OptLoss::FAL;
    if (n == "fcl") return OptLoss::FCL;
    if (n == "facl") return OptLoss::FACL;
    if (n == "mse") return OptLoss::MSE;
    throw ValidationError("unknown reconstruction loss '" + std::string(name) +
                          "' (expected mse, fal, fcl or facl)");
}

std::string_view to_string(InitMode mode) {
    return mode == InitMode::Constant ? "constant" : "noise";
}

InitMode parse_init_mode(std::string_view name) {
    const auto n = lower(name);
    if (n == "constant") return InitMode::Constant;
    if (n == "noise") return InitMode::Noise;
    throw ValidationError("unknown init mode '" + std::string(name) + "'");
}

void OptConfig::validate() const {
    if (steps == 0) throw ValidationError("reconstruct: steps must be positive");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ValidationError("reconstruct: learning rate must be positive and finite");
    }
    if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
        throw ValidationError("reconstruct: init scale must be non-negative");
    }
    if (loss == OptLoss::FACL) {
        ScheduleConfig s = schedule;
        s.total_steps = steps;
        s.validate();
    }
}

OptRun reconstruct(const Field& target, const OptConfig& cfg) {
    cfg.validate();
    require_non_empty(target, "reconstruct");
    if (target.min() < 0.0 || target.max() > 1.0) {
        throw ValidationError("reconstruct: target values must lie in [0, 1]");
    }
    if (target.max() == 0.0) throw DegenerateInputError("reconstruct: target is all zero");

    OptRun run;
    run.config = cfg;
    run.config.schedule.total_steps = cfg.steps;
    run.trace.reserve(cfg.steps);

    Field z(target.rows(), target.cols());
    if (cfg.init == InitMode::Noise) {
        Engine engine(derive_seed(cfg.seed, "init-noise"));
        for (double& v : z.values()) v = cfg.init_scale * (2.0 * uniform01(engine) - 1.0);
    }

    std::optional<FaclSampler> sampler;
    if (cfg.loss == OptLoss::FACL) sampler.emplace(run.config.schedule);

    for (std::size_t t = 0; t < cfg.steps; ++t) {
        const Field xhat = sigmoid(z);
        LossEval eval;
        switch (cfg.loss) {
        case OptLoss::MSE: eval = mse(target, xhat); break;
        case OptLoss::FAL: eval = fal(target, xhat); break;
        case OptLoss::FCL: eval = fcl(target, xhat); break;
        case OptLoss::FACL: eval = sampler->step(target, xhat, t); break;
        }
        if (!std::isfinite(eval.value)) {
            throw NumericalError("reconstruct: loss became non-finite at step " + std::to_string(t));
        }
        run.trace.push_back({t, eval.value, eval.which});

        const Field gz = sigmoid_backward(xhat, eval.gradient);
        auto zv = z.values();
        auto gv = gz.values();
        for (std::size_t i = 0; i < zv.size(); ++i) {
            zv[i] -= cfg.learning_rate * gv[i];
            if (!std::isfinite(zv[i])) {
                throw NumericalError("reconstruct: logits diverged at step " + std::to_string(t));
            }
        }
    }
    run.final_field = sigmoid(z);
    return run;
}

void write_trace_csv(std::ostream& os, const OptRun& run) {
    os << "step,loss,which\n";
    char buf[64];
    for (const auto& e : run.trace) {
        std::snprintf(buf, sizeof buf, "%.17g", e.loss);
        os << e.step << ',' << buf << ',' << to_string(e.which) << '\n';
    }
}

} // namespace faclkit
