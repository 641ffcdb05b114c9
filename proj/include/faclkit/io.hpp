#pragma once

#include "faclkit/field.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace faclkit {

/// One grayscale digit image, scaled to [0, 1], with its index in the corpus.
struct DigitSprite {
    Field image;
    std::size_t index = 0;
};

/// Reads an IDX unsigned-byte image file (magic 0x00000803, big-endian dims
/// [count, rows, cols]) and scales bytes by 1/255.
/// Throws FormatError on a bad magic number, truncation, or I/O failure.
std::vector<DigitSprite> load_digit_corpus(const std::filesystem::path& path);

/// Reads only the IDX header; returns {count, rows, cols}.
std::vector<std::size_t> read_idx_header(const std::filesystem::path& path);

/// Writes images as an IDX unsigned-byte file, quantizing round(255 v) after
/// clamping to [0, 1]. All images must share one shape.
void write_idx_images(const std::filesystem::path& path, const std::vector<Field>& images);

/// Dense little-endian float32 array with a C-order shape.
struct NpyArray {
    std::vector<std::size_t> shape;
    std::vector<float> data;

    std::size_t element_count() const noexcept;
};

/// NPY v1.0: "\x93NUMPY", 0x01 0x00, uint16 LE header length, then a Python
/// dict literal {'descr': '<f4', 'fortran_order': False, 'shape': (...), }
/// padded with spaces and a final '\n' so data starts on a 64-byte boundary.
void write_npy(const std::filesystem::path& path, const NpyArray& array);

/// Accepts v1.x and v2.x headers with descr '<f4' (or '<f8', narrowed) in C order.
/// Throws FormatError on anything else.
NpyArray read_npy(const std::filesystem::path& path);

/// Writes sequences as one [count, length, rows, cols] float32 array.
/// Throws ValidationError for an empty list and DimensionError when lengths
/// or shapes differ.
void write_sequences(const std::filesystem::path& path, const std::vector<Sequence>& sequences);

/// Reads a [count, length, rows, cols] array back into sequences.
std::vector<Sequence> read_sequences(const std::filesystem::path& path);

/// A single field as a [rows, cols] array.
void write_field(const std::filesystem::path& path, const Field& field);

/// Accepts [rows, cols], or any leading dimensions of size 1.
Field read_field(const std::filesystem::path& path);

/// Stacks fields into a [count, rows, cols] array.
void write_fields(const std::filesystem::path& path, const std::vector<Field>& fields);

/// Splits a [count, rows, cols] (or [rows, cols]) array into fields.
std::vector<Field> read_fields(const std::filesystem::path& path);

} // namespace faclkit
