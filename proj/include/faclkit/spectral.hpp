#pragma once

#include "faclkit/field.hpp"

#include <complex>
#include <span>
#include <vector>

namespace faclkit {

using Complex = std::complex<double>;

/// DFT coefficients of a Field under the orthonormal (1/sqrt(MN) both ways)
/// transform. Row p, column q holds frequency (p, q); DC sits at (0, 0).
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(std::size_t rows, std::size_t cols, Complex fill = {});
    SpectralField(std::size_t rows, std::size_t cols, std::vector<Complex> coefficients);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    Complex& operator()(std::size_t p, std::size_t q) noexcept { return data_[p * cols_ + q]; }
    const Complex& operator()(std::size_t p, std::size_t q) const noexcept {
        return data_[p * cols_ + q];
    }

    std::span<Complex> values() noexcept { return data_; }
    std::span<const Complex> values() const noexcept { return data_; }

    /// Sum of |F|^2 over all coefficients.
    double energy() const noexcept;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Orthonormal 2D DFT. Any size, not just powers of two.
/// Throws DimensionError for empty or non-finite input.
SpectralField dft2(const Field& x);

/// Orthonormal inverse DFT, keeping the real part.
Field idft2(const SpectralField& f);

/// Full complex inverse, for callers that need the imaginary residue.
SpectralField idft2_complex(const SpectralField& f);

/// Elementwise |F|.
Field amplitude(const SpectralField& f);

/// Elementwise atan2(Im, Re) in (-pi, pi].
Field phase(const SpectralField& f);

} // namespace faclkit
