#pragma once

#include "faclkit/field.hpp"

#include <string_view>
#include <vector>

namespace faclkit {

enum class LossKind { FAL, FCL, MSE, MAE, FourierL2 };

std::string_view to_string(LossKind kind);

/// Accepts "fal", "fcl", "mse", "mae", "fourier_l2" (case-insensitive).
LossKind parse_loss_kind(std::string_view name);

/// Value of one loss term together with its gradient w.r.t. the prediction.
struct LossEval {
    double value = 0.0;
    Field gradient;
    LossKind which = LossKind::MSE;
};

/// Fourier amplitude loss: mean over frequencies of (|F| - |F_hat|)^2.
///
/// The gradient is the inverse transform of (|F| - |F_hat|) e^{i theta_hat},
/// scaled by -2/MN. Where the prediction has a zero coefficient its phase is
/// taken as 0, the same convention as phase().
LossEval fal(const Field& x, const Field& xhat);

/// Fourier correlation loss, 1 - Re(sum F conj(F_hat)) / sqrt(sum|F|^2 sum|F_hat|^2).
/// Lies in [0, 2] and ignores global scale of either argument.
/// Throws DegenerateInputError if either field is identically zero.
LossEval fcl(const Field& x, const Field& xhat);

/// Naive Fourier-space L2, mean of |F - F_hat|^2. Equal to mse() by Parseval;
/// both value and gradient are computed through the spectra on purpose.
LossEval fourier_l2(const Field& x, const Field& xhat);

LossEval mse(const Field& x, const Field& xhat);
LossEval mae(const Field& x, const Field& xhat);

LossEval evaluate_loss(LossKind kind, const Field& x, const Field& xhat);

/// Terms of the identity FAL = l2 + cross_spatial - cross_spectral, with
/// l2 = mean (x - xhat)^2, cross_spatial = mean 2 x xhat and
/// cross_spectral = mean 2 |F| |F_hat|.
struct FalDecomposition {
    double l2 = 0.0;
    double cross_spatial = 0.0;
    double cross_spectral = 0.0;

    double reconstructed() const noexcept { return l2 + cross_spatial - cross_spectral; }
};

FalDecomposition fal_decomposition(const Field& x, const Field& xhat);

/// Loss over whole sequences: the mean of per-frame values. Gradients are
/// per frame and already carry the 1/length factor of the mean.
struct SequenceLossEval {
    double value = 0.0;
    std::vector<Field> gradients;
    LossKind which = LossKind::MSE;
};

SequenceLossEval evaluate_sequence_loss(LossKind kind, const Sequence& x, const Sequence& xhat);

Field sigmoid(const Field& z);

/// Chain rule through sigmoid: returns grad_out * s * (1 - s), where s is the
/// sigmoid output (not the logits).
Field sigmoid_backward(const Field& sigmoid_out, const Field& grad_out);

} // namespace faclkit
