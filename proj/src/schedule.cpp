#include "faclkit/schedule.hpp"

#include "faclkit/error.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

namespace faclkit {

std::string_view to_string(ScheduleShape shape) {
    return shape == ScheduleShape::Cosine ? "cosine" : "linear";
}

ScheduleShape parse_schedule_shape(std::string_view name) {
    if (name == "cosine") return ScheduleShape::Cosine;
    if (name == "linear") return ScheduleShape::Linear;
    throw ValidationError("unknown schedule shape '" + std::string(name) + "'");
}

void ScheduleConfig::validate() const {
    if (total_steps == 0) throw ValidationError("schedule: total steps must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw ValidationError("schedule: alpha must lie in [0, 1), got " + std::to_string(alpha));
    }
}

double schedule_threshold(std::uint64_t t, const ScheduleConfig& cfg) {
    cfg.validate();
    if (t > cfg.total_steps) {
        throw ValidationError("schedule: step " + std::to_string(t) + " outside [0, " +
                              std::to_string(cfg.total_steps) + "]");
    }
    const double end = cfg.decay_end();
    const double s = static_cast<double>(t);
    if (s >= end) return 0.0;
    const double u = s / end;
    if (cfg.shape == ScheduleShape::Linear) return 1.0 - u;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * u));
}

FaclSampler::FaclSampler(const ScheduleConfig& cfg) : cfg_(cfg), engine_(cfg.seed) {
    cfg_.validate();
}

LossKind FaclSampler::select(std::uint64_t t) {
    const double threshold = schedule_threshold(t, cfg_);
    const double p = uniform01(engine_);
    ++draws_;
    return p > threshold ? LossKind::FAL : LossKind::FCL;
}

LossEval FaclSampler::step(const Field& x, const Field& xhat, std::uint64_t t) {
    return select(t) == LossKind::FAL ? fal(x, xhat) : fcl(x, xhat);
}

void write_which_trace(std::ostream& os, const ScheduleConfig& cfg) {
    FaclSampler sampler(cfg);
    os << "step,threshold,which\n";
    char buf[64];
    for (std::uint64_t t = 0; t < cfg.total_steps; ++t) {
        std::snprintf(buf, sizeof buf, "%.17g", schedule_threshold(t, cfg));
        os << t << ',' << buf << ',' << to_string(sampler.select(t)) << '\n';
    }
}

} // namespace faclkit
