#include "faclkit/glyphs.hpp"

#include "faclkit/error.hpp"
#include "faclkit/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace faclkit {

namespace {

struct Point {
    double x, y;
};

using Stroke = std::vector<Point>;

// Unit box, x to the right, y downwards.
Stroke ellipse(double cx, double cy, double rx, double ry, double from = 0.0, double to = 360.0) {
    Stroke s;
    const int steps = 28;
    for (int i = 0; i <= steps; ++i) {
        const double a = (from + (to - from) * i / steps) * std::numbers::pi / 180.0;
        s.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
    }
    return s;
}

std::vector<Stroke> digit_strokes(int digit) {
    switch (digit) {
    case 0: return {ellipse(0.5, 0.5, 0.34, 0.5)};
    case 1: return {{{0.3, 0.2}, {0.55, 0.0}, {0.55, 1.0}}};
    case 2: return {{{0.12, 0.25}, {0.3, 0.04}, {0.6, 0.0}, {0.85, 0.2}, {0.8, 0.45}, {0.15, 1.0}, {0.92, 1.0}}};
    case 3: return {{{0.15, 0.05}, {0.8, 0.05}, {0.45, 0.42}, {0.78, 0.58}, {0.85, 0.85}, {0.6, 1.0}, {0.18, 0.93}}};
    case 4: return {{{0.68, 1.0}, {0.68, 0.0}, {0.08, 0.7}, {0.92, 0.7}}};
    case 5: return {{{0.85, 0.0}, {0.22, 0.0}, {0.16, 0.45}, {0.6, 0.4}, {0.86, 0.66}, {0.7, 0.96}, {0.14, 0.94}}};
    case 6: return {{{0.75, 0.0}, {0.35, 0.3}, {0.22, 0.7}}, ellipse(0.5, 0.72, 0.29, 0.28)};
    case 7: return {{{0.1, 0.0}, {0.9, 0.0}, {0.42, 1.0}}};
    case 8: return {ellipse(0.5, 0.24, 0.24, 0.24), ellipse(0.5, 0.72, 0.3, 0.28)};
    case 9: return {ellipse(0.5, 0.3, 0.29, 0.29), {{0.79, 0.3}, {0.62, 1.0}}};
    default: throw ValidationError("render_glyph: digit must be 0-9");
    }
}

double segment_distance(Point p, Point a, Point b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double ex = a.x + t * dx - p.x, ey = a.y + t * dy - p.y;
    return std::sqrt(ex * ex + ey * ey);
}

} // namespace

Field render_glyph(int digit, std::uint64_t seed, std::size_t size) {
    if (size < 8) throw ValidationError("render_glyph: size must be at least 8");
    Engine rng(seed);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * uniform01(rng); };

    const double box = 18.0 * static_cast<double>(size) / 28.0;
    const double shear = uniform(-0.2, 0.2);
    const double sx = uniform(0.7, 1.0) * box;
    const double sy = uniform(0.88, 1.0) * box;
    const double width = uniform(1.6, 2.6) * static_cast<double>(size) / 28.0;
    const double centre = static_cast<double>(size) / 2.0;

    std::vector<Stroke> strokes = digit_strokes(digit);
    for (auto& stroke : strokes) {
        for (auto& p : stroke) {
            const double u = p.x + uniform(-0.035, 0.035) - 0.5;
            const double v = p.y + uniform(-0.035, 0.035) - 0.5;
            p = {centre + sx * (u - shear * v), centre + sy * v};
        }
    }

    Field out(size, size);
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
            const Point centre_px{static_cast<double>(c) + 0.5, static_cast<double>(r) + 0.5};
            double d = 1e9;
            for (const auto& stroke : strokes) {
                for (std::size_t k = 0; k + 1 < stroke.size(); ++k) {
                    d = std::min(d, segment_distance(centre_px, stroke[k], stroke[k + 1]));
                }
            }
            out(r, c) = std::clamp(width / 2.0 + 0.5 - d, 0.0, 1.0);
        }
    }
    return out;
}

std::vector<Field> glyph_corpus(std::size_t count, std::uint64_t seed, std::size_t size) {
    std::vector<Field> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(render_glyph(static_cast<int>(i % 10), derive_seed(seed, "glyph", i), size));
    }
    return out;
}

} // namespace faclkit
