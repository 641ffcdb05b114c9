#pragma once

#include "faclkit/field.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace faclkit {

/// Renders one handwritten-style digit (0-9) as an anti-aliased stroke image
/// of size x size, drawn inside a centred box of roughly 18/28 of the side
/// like MNIST. Slant, aspect, stroke width and control points are jittered
/// from `seed`.
Field render_glyph(int digit, std::uint64_t seed, std::size_t size = 28);

/// `count` glyphs with digits cycling 0..9; glyph i uses the stream
/// derive_seed(seed, "glyph", i). Stands in for an MNIST image file when
/// none is available.
std::vector<Field> glyph_corpus(std::size_t count, std::uint64_t seed, std::size_t size = 28);

} // namespace faclkit
