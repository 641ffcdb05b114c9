#pragma once

#include "faclkit/field.hpp"
#include "faclkit/losses.hpp"
#include "faclkit/schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace faclkit {

enum class OptLoss { FAL, FCL, FACL, MSE };

std::string_view to_string(OptLoss loss);
OptLoss parse_opt_loss(std::string_view name);

enum class InitMode { Constant, Noise };

std::string_view to_string(InitMode mode);
InitMode parse_init_mode(std::string_view name);

/// Plain gradient descent on logits z with prediction sigmoid(z).
struct OptConfig {
    OptLoss loss = OptLoss::MSE;
    std::size_t steps = 2000;
    double learning_rate = 1.0;
    /// FACL only. total_steps is overwritten with `steps`; the sampler is
    /// seeded with schedule.seed.
    ScheduleConfig schedule{};
    InitMode init = InitMode::Constant;
    /// Noise init draws logits uniformly from [-init_scale, init_scale]
    /// using derive_seed(seed, "init-noise").
    double init_scale = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TraceEntry {
    std::size_t step = 0;
    double loss = 0.0;  ///< selected term evaluated before the update
    LossKind which = LossKind::MSE;
};

struct OptRun {
    OptConfig config;
    std::vector<TraceEntry> trace;
    Field final_field;  ///< sigmoid of the final logits
};

/// Reconstructs `target` (values in [0, 1], not all zero) under cfg.
/// Throws NumericalError when the loss or the logits stop being finite.
OptRun reconstruct(const Field& target, const OptConfig& cfg);

/// Header: step,loss,which
void write_trace_csv(std::ostream& os, const OptRun& run);

} // namespace faclkit
