#pragma once

#include "faclkit/field.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace faclkit {

struct Identity {};

/// Separable Gaussian, odd kernel, reflect-101 padding (d c b | a b c d | c b a).
struct GaussianBlur {
    std::size_t kernel = 1;
    double sigma = 1.0;
};

/// Moves content by dx columns (right) and dy rows (down), zero fill.
struct Translate {
    long dx = 0;
    long dy = 0;
};

/// Clockwise rotation about the field centre, bilinear sampling, zero fill.
struct Rotate {
    double degrees = 0.0;
};

/// Multiplies values strictly above `floor` by `factor`.
struct Brighten {
    double factor = 2.0;
    double floor = 0.5;
};

/// Divides values strictly below `ceiling` by `factor`.
struct Darken {
    double factor = 2.0;
    double ceiling = 0.5;
};

using TransformSpec = std::variant<Identity, GaussianBlur, Translate, Rotate, Brighten, Darken>;

/// Short name such as "blur(k=27,s=15)" or "translate(4,4)".
std::string transform_name(const TransformSpec& spec);

/// Throws ValidationError for invalid parameters given the field shape.
void validate_transform(const TransformSpec& spec, std::size_t rows, std::size_t cols);

/// Applies the transform and clips the result to [0, 1].
Field apply_transform(const Field& x, const TransformSpec& spec);

/// Normalized 1-D Gaussian taps of odd length `kernel`.
std::vector<double> gaussian_kernel(std::size_t kernel, double sigma);

/// Kernel length 2 ceil(3 sigma) + 1 (1 for sigma <= 0).
std::size_t kernel_for_sigma(double sigma);

/// The five distortions used for the metric comparison table: blur (27, 15),
/// translate (4, 4), rotate 5 degrees clockwise, brighten x2 above 0.5 and
/// darken /2 below 0.5.
std::vector<TransformSpec> standard_distortions();

} // namespace faclkit
