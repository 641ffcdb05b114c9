#pragma once

#include "faclkit/field.hpp"
#include "faclkit/io.hpp"
#include "faclkit/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace faclkit {

/// Stochastic Moving-MNIST generation parameters.
struct GenConfig {
    std::size_t canvas = 64;
    std::size_t digits = 2;
    std::size_t length = 20;
    double min_speed = 2.0;   ///< base speed range, pixels per step
    double max_speed = 5.0;
    double noise_sigma = 1.0; ///< std of the per-step velocity perturbation
    std::uint64_t seed = 0;

    void validate() const;
};

/// Position of a sprite's top-left corner plus base and current velocity.
struct MotionState {
    double x = 0.0;
    double y = 0.0;
    double u0 = 0.0;
    double v0 = 0.0;
    double u = 0.0;
    double v = 0.0;
};

/// Largest admissible corner coordinates. Bilinear splatting touches one
/// pixel beyond the sprite, so max = canvas - sprite - 1.
struct MotionBounds {
    double max_x = 0.0;
    double max_y = 0.0;
};

MotionBounds motion_bounds(std::size_t canvas, std::size_t sprite_rows, std::size_t sprite_cols);

/// One step: u = u0 + sigma e1, v = v0 + sigma e2 with fresh independent
/// standard normals, then the position advances by (u, v). A coordinate that
/// leaves [0, max] is reflected back inside and the matching base (and
/// current) velocity component flips sign.
MotionState step_motion(const MotionState& s, const MotionBounds& bounds, double sigma,
                        Engine& noise);

/// Adds `sprite` into `canvas` at fractional corner (x, y) with bilinear
/// weights, taking the per-pixel maximum with what is already there.
void splat_max(Field& canvas, const Field& sprite, double x, double y);

/// Intensity-weighted centroid (row, col) of a field.
std::pair<double, double> intensity_centroid(const Field& f);

struct GeneratedSequence {
    Sequence frames;
    std::vector<std::size_t> sprite_indices;
    std::vector<std::vector<MotionState>> trajectory;  ///< [frame][digit]
};

/// Random initial states for cfg.digits sprites: corner uniform over the
/// admissible box, direction uniform on the circle, speed uniform in
/// [min_speed, max_speed]. Consumes only uniform01 draws from `init`.
std::vector<MotionState> initial_motion(const GenConfig& cfg, const MotionBounds& bounds,
                                        Engine& init);

/// Renders cfg.length frames from the given initial states, stepping the
/// motion with `noise` between frames.
GeneratedSequence simulate_sequence(const GenConfig& cfg, const std::vector<Field>& sprites,
                                    std::vector<MotionState> states, Engine& noise);

/// Sequence `index` of the dataset defined by cfg. Sprites and initial states
/// come from derive_seed(cfg.seed, "init", index); velocity noise from
/// derive_seed(cfg.seed, "motion", index). Changing noise_sigma therefore
/// leaves the initial conditions untouched.
GeneratedSequence generate_sequence(const GenConfig& cfg, const std::vector<DigitSprite>& corpus,
                                    std::uint64_t index);

/// Sequences 0..count-1, generated in parallel; output order and content do
/// not depend on `threads`.
std::vector<Sequence> generate_dataset(const GenConfig& cfg, const std::vector<DigitSprite>& corpus,
                                       std::size_t count, unsigned threads = 1);

} // namespace faclkit
