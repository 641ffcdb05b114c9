#pragma once

#include "faclkit/field.hpp"
#include "faclkit/losses.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace faclkit {

/// Central difference (f(xhat + h e_k) - f(xhat - h e_k)) / 2h for every k.
Field numeric_gradient(const std::function<double(const Field&)>& f, const Field& xhat,
                       double h);

struct GradCheckConfig {
    LossKind loss = LossKind::FAL;
    std::size_t trials = 50;
    std::vector<std::size_t> sizes = {8, 16};
    double h = 1e-5;
    double tolerance = 1e-4;   ///< on the per-element relative error
    double grad_floor = 1e-6;  ///< elements with smaller |analytic| are not compared
    std::uint64_t seed = 0;
    unsigned threads = 1;

    void validate() const;
};

struct GradCheckTrial {
    std::size_t size = 0;
    std::size_t trial = 0;
    double max_rel_error = 0.0;
    double max_abs_error = 0.0;
    std::size_t compared = 0;
};

struct GradCheckReport {
    GradCheckConfig config;
    std::vector<GradCheckTrial> trials;
    double max_rel_error = 0.0;
    std::size_t compared = 0;
    bool passed = false;

    std::string summary() const;
};

/// Random pair for trial `trial` at `size`: entries of x and xhat uniform in
/// [0.05, 0.95] from derive_seed(seed, "gradcheck", size * 2^32 + trial),
/// with xhat redrawn wherever |x - xhat| < 1e-3 so MAE stays away from its kink.
std::pair<Field, Field> gradcheck_pair(std::uint64_t seed, std::size_t size, std::size_t trial);

/// Compares the analytic gradient of cfg.loss with central differences on
/// cfg.trials random pairs per size. Relative error is
/// |a - n| / max(|a|, |n|) over elements where |a| > grad_floor.
GradCheckReport grad_check(const GradCheckConfig& cfg);

struct ScaleCheckRow {
    double beta = 0.0;
    double value = 0.0;
    double analytic_inf = 0.0;  ///< max-norm of the analytic FCL gradient
    double numeric_inf = 0.0;   ///< max-norm of its central-difference estimate
};

/// FCL at xhat = beta x for each beta.
std::vector<ScaleCheckRow> fcl_scale_check(const Field& x, std::span<const double> betas,
                                           double h = 1e-5);

/// Largest elementwise |grad fourier_l2 - grad mse| over random pairs.
double fourier_l2_gradient_gap(std::size_t trials, std::span<const std::size_t> sizes,
                               std::uint64_t seed);

/// Writes a reference set for cross-implementation parity checks into dir:
///   x.npy, xhat.npy          float32 [size, size] inputs
///   grad_<loss>.npy          float32 gradients for mse, mae, fal, fcl
///   values.csv               loss,value at full precision
///   metrics.csv              evaluate_frame(xhat, x) with the default config
///   facl_trace.csv           step,threshold,which for `steps` steps, alpha 0.2
/// Inputs are rounded to float32 before any computation so that a consumer
/// reading the NPY files sees exactly the values used here.
void write_reference_dump(const std::filesystem::path& dir, std::uint64_t seed,
                          std::size_t size = 32, std::size_t steps = 1000);

} // namespace faclkit
