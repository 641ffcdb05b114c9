#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace faclkit {

/// Row-major 2D real grid. One frame of a sequence, a gradient, or any
/// intermediate image. Dataset-facing fields live in [0,1]; nothing here
/// enforces that, only finiteness at construction.
class Field {
public:
    Field() = default;

    /// Zero-filled rows x cols field; both must be positive.
    Field(std::size_t rows, std::size_t cols, double fill = 0.0);

    /// Takes ownership of row-major values. Throws DimensionError on a size
    /// mismatch, empty shape, or any non-finite entry.
    Field(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Field from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    bool same_shape(const Field& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool all_finite() const noexcept;

    double sum() const noexcept;
    double sum_squares() const noexcept;
    double min() const;
    double max() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::string shape_string(const Field& f);

/// Throws DimensionError unless a and b have identical shapes.
void require_same_shape(const Field& a, const Field& b, const char* what);

/// Throws DimensionError if f is empty.
void require_non_empty(const Field& f, const char* what);

/// Time-ordered frames sharing one shape.
class Sequence {
public:
    Sequence() = default;

    /// Throws DimensionError when frames is empty or shapes differ.
    explicit Sequence(std::vector<Field> frames);

    std::size_t length() const noexcept { return frames_.size(); }
    std::size_t rows() const noexcept { return frames_.empty() ? 0 : frames_.front().rows(); }
    std::size_t cols() const noexcept { return frames_.empty() ? 0 : frames_.front().cols(); }

    const Field& operator[](std::size_t t) const { return frames_.at(t); }
    const std::vector<Field>& frames() const noexcept { return frames_; }

    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    std::vector<Field> frames_;
};

// Elementwise helpers used across modules.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field add_scalar(const Field& a, double c);
Field clip(const Field& a, double lo, double hi);

/// Circular shift: out(r, c) = in(r - dr mod M, c - dc mod N).
Field circular_shift(const Field& f, long dr, long dc);

} // namespace faclkit
