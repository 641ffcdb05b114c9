#include "faclkit/synth.hpp"

#include "faclkit/error.hpp"
#include "faclkit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace faclkit {

void GenConfig::validate() const {
    if (length < 1) throw ValidationError("gen: sequence length must be at least 1");
    if (digits < 1) throw ValidationError("gen: need at least one digit per sequence");
    if (canvas < 2) throw ValidationError("gen: canvas too small");
    if (!(min_speed >= 0.0 && max_speed >= min_speed)) {
        throw ValidationError("gen: speed range must satisfy 0 <= min <= max");
    }
    if (!(noise_sigma >= 0.0)) throw ValidationError("gen: noise sigma must be non-negative");
}

MotionBounds motion_bounds(std::size_t canvas, std::size_t sprite_rows, std::size_t sprite_cols) {
    if (sprite_rows + 1 > canvas || sprite_cols + 1 > canvas) {
        throw ValidationError("gen: sprite " + std::to_string(sprite_rows) + "x" +
                              std::to_string(sprite_cols) + " does not fit a " +
                              std::to_string(canvas) + " canvas");
    }
    return {static_cast<double>(canvas - sprite_cols - 1),
            static_cast<double>(canvas - sprite_rows - 1)};
}

namespace {

// Folds p into [0, hi]; returns true when an odd number of reflections occurred.
bool reflect(double& p, double hi) {
    bool flipped = false;
    if (hi <= 0.0) {
        p = 0.0;
        return false;
    }
    while (p < 0.0 || p > hi) {
        p = p < 0.0 ? -p : 2.0 * hi - p;
        flipped = !flipped;
    }
    return flipped;
}

} // namespace

MotionState step_motion(const MotionState& s, const MotionBounds& bounds, double sigma,
                        Engine& noise) {
    std::normal_distribution<double> normal(0.0, 1.0);
    MotionState next = s;
    const double e1 = normal(noise);
    const double e2 = normal(noise);
    next.u = s.u0 + sigma * e1;
    next.v = s.v0 + sigma * e2;
    next.x = s.x + next.u;
    next.y = s.y + next.v;
    if (reflect(next.x, bounds.max_x)) {
        next.u0 = -next.u0;
        next.u = -next.u;
    }
    if (reflect(next.y, bounds.max_y)) {
        next.v0 = -next.v0;
        next.v = -next.v;
    }
    return next;
}

void splat_max(Field& canvas, const Field& sprite, double x, double y) {
    const double fx0 = std::floor(x), fy0 = std::floor(y);
    const double fx = x - fx0, fy = y - fy0;
    const long ix = static_cast<long>(fx0), iy = static_cast<long>(fy0);
    const long rows = static_cast<long>(canvas.rows()), cols = static_cast<long>(canvas.cols());

    Field layer(canvas.rows(), canvas.cols());
    const double w[2][2] = {{(1 - fy) * (1 - fx), (1 - fy) * fx}, {fy * (1 - fx), fy * fx}};
    for (std::size_t r = 0; r < sprite.rows(); ++r) {
        for (std::size_t c = 0; c < sprite.cols(); ++c) {
            const double v = sprite(r, c);
            if (v == 0.0) continue;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const long rr = iy + static_cast<long>(r) + a;
                    const long cc = ix + static_cast<long>(c) + b;
                    if (rr < 0 || cc < 0 || rr >= rows || cc >= cols) continue;
                    layer(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc)) += w[a][b] * v;
                }
            }
        }
    }
    auto lv = layer.values();
    auto cv = canvas.values();
    for (std::size_t i = 0; i < cv.size(); ++i) cv[i] = std::max(cv[i], std::min(lv[i], 1.0));
}

std::pair<double, double> intensity_centroid(const Field& f) {
    double total = 0.0, sr = 0.0, sc = 0.0;
    for (std::size_t r = 0; r < f.rows(); ++r) {
        for (std::size_t c = 0; c < f.cols(); ++c) {
            total += f(r, c);
            sr += f(r, c) * static_cast<double>(r);
            sc += f(r, c) * static_cast<double>(c);
        }
    }
    if (total == 0.0) throw DegenerateInputError("centroid of an all-zero field");
    return {sr / total, sc / total};
}

std::vector<MotionState> initial_motion(const GenConfig& cfg, const MotionBounds& bounds,
                                        Engine& init) {
    std::vector<MotionState> states(cfg.digits);
    for (auto& s : states) {
        s.x = uniform01(init) * bounds.max_x;
        s.y = uniform01(init) * bounds.max_y;
        const double theta = 2.0 * std::numbers::pi * uniform01(init);
        const double speed = cfg.min_speed + (cfg.max_speed - cfg.min_speed) * uniform01(init);
        s.u0 = speed * std::cos(theta);
        s.v0 = speed * std::sin(theta);
        s.u = s.u0;
        s.v = s.v0;
    }
    return states;
}

GeneratedSequence simulate_sequence(const GenConfig& cfg, const std::vector<Field>& sprites,
                                    std::vector<MotionState> states, Engine& noise) {
    cfg.validate();
    if (sprites.size() != states.size() || sprites.empty()) {
        throw ValidationError("gen: need one motion state per sprite");
    }
    std::vector<MotionBounds> bounds;
    for (const auto& sp : sprites) bounds.push_back(motion_bounds(cfg.canvas, sp.rows(), sp.cols()));

    GeneratedSequence out;
    std::vector<Field> frames;
    frames.reserve(cfg.length);
    for (std::size_t t = 0; t < cfg.length; ++t) {
        if (t > 0) {
            for (std::size_t d = 0; d < states.size(); ++d) {
                states[d] = step_motion(states[d], bounds[d], cfg.noise_sigma, noise);
            }
        }
        Field frame(cfg.canvas, cfg.canvas);
        for (std::size_t d = 0; d < states.size(); ++d) {
            splat_max(frame, sprites[d], states[d].x, states[d].y);
        }
        frames.push_back(std::move(frame));
        out.trajectory.push_back(states);
    }
    out.frames = Sequence(std::move(frames));
    return out;
}

GeneratedSequence generate_sequence(const GenConfig& cfg, const std::vector<DigitSprite>& corpus,
                                    std::uint64_t index) {
    cfg.validate();
    if (corpus.empty()) throw ValidationError("gen: digit corpus is empty");
    Engine init(derive_seed(cfg.seed, "init", index));
    Engine noise(derive_seed(cfg.seed, "motion", index));

    std::vector<Field> sprites;
    std::vector<std::size_t> picks;
    for (std::size_t d = 0; d < cfg.digits; ++d) {
        const auto k = std::min(corpus.size() - 1,
                                static_cast<std::size_t>(uniform01(init) * static_cast<double>(corpus.size())));
        picks.push_back(corpus[k].index);
        sprites.push_back(corpus[k].image);
    }
    const MotionBounds bounds = motion_bounds(cfg.canvas, sprites[0].rows(), sprites[0].cols());
    GeneratedSequence out = simulate_sequence(cfg, sprites, initial_motion(cfg, bounds, init), noise);
    out.sprite_indices = std::move(picks);
    return out;
}

std::vector<Sequence> generate_dataset(const GenConfig& cfg, const std::vector<DigitSprite>& corpus,
                                       std::size_t count, unsigned threads) {
    if (count == 0) throw ValidationError("gen: count must be positive");
    std::vector<Sequence> out(count);
    parallel_for(count, threads, [&](std::size_t i) {
        out[i] = generate_sequence(cfg, corpus, i).frames;
    });
    return out;
}

} // namespace faclkit
