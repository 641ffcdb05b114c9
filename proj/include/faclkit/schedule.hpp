#pragma once

#include "faclkit/field.hpp"
#include "faclkit/losses.hpp"
#include "faclkit/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <string_view>

namespace faclkit {

enum class ScheduleShape { Cosine, Linear };

std::string_view to_string(ScheduleShape shape);
ScheduleShape parse_schedule_shape(std::string_view name);

/// Governs the FAL/FCL alternation. alpha is the trailing fraction of steps
/// on which the threshold is zero, i.e. FAL is always selected.
struct ScheduleConfig {
    std::uint64_t total_steps = 1;
    double alpha = 0.2;
    std::uint64_t seed = 0;
    ScheduleShape shape = ScheduleShape::Cosine;

    /// Throws ValidationError unless total_steps > 0 and 0 <= alpha < 1.
    void validate() const;

    /// First step with a zero threshold, (1 - alpha) * T.
    double decay_end() const noexcept {
        return (1.0 - alpha) * static_cast<double>(total_steps);
    }
};

/// Threshold P(t) for 0 <= t <= T. P(0) = 1, P is non-increasing and equals 0
/// from (1 - alpha) T on. Cosine shape: (1 + cos(pi t / ((1 - alpha) T))) / 2.
double schedule_threshold(std::uint64_t t, const ScheduleConfig& cfg);

/// Seeded FACL selector. Each call to draw() consumes one engine output:
/// p = (mt19937_64() >> 11) * 2^-53, p in [0, 1), with the engine seeded
/// directly by cfg.seed. FAL is selected when p > P(t), FCL otherwise.
///
/// Owns mutable RNG state; use one sampler per training stream.
class FaclSampler {
public:
    explicit FaclSampler(const ScheduleConfig& cfg);

    const ScheduleConfig& config() const noexcept { return cfg_; }
    std::uint64_t draws() const noexcept { return draws_; }

    /// Draws p and returns the selected term for step t.
    LossKind select(std::uint64_t t);

    /// Selects a term for step t and evaluates it on (x, xhat).
    LossEval step(const Field& x, const Field& xhat, std::uint64_t t);

private:
    ScheduleConfig cfg_;
    Engine engine_;
    std::uint64_t draws_ = 0;
};

/// Writes "step,threshold,which" for t = 0 .. T-1 from a fresh sampler
/// seeded with cfg.seed. which is "fal" or "fcl".
void write_which_trace(std::ostream& os, const ScheduleConfig& cfg);

} // namespace faclkit
