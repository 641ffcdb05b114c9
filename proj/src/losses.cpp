#include "faclkit/losses.hpp"

#include "faclkit/error.hpp"
#include "faclkit/spectral.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace faclkit {

std::string_view to_string(LossKind kind) {
    switch (kind) {
    case LossKind::FAL: return "fal";
    case LossKind::FCL: return "fcl";
    case LossKind::MSE: return "mse";
    case LossKind::MAE: return "mae";
    case LossKind::FourierL2: return "fourier_l2";
    }
    return "unknown";
}

LossKind parse_loss_kind(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "fal") return LossKind::FAL;
    if (lower == "fcl") return LossKind::FCL;
    if (lower == "mse") return LossKind::MSE;
    if (lower == "mae") return LossKind::MAE;
    if (lower == "fourier_l2" || lower == "fourierl2") return LossKind::FourierL2;
    throw ValidationError("unknown loss '" + std::string(name) + "'");
}

LossEval fal(const Field& x, const Field& xhat) {
    require_same_shape(x, xhat, "fal");
    const SpectralField f = dft2(x);
    const SpectralField fh = dft2(xhat);
    const double mn = static_cast<double>(x.size());

    SpectralField weighted(x.rows(), x.cols());
    double sum = 0.0;
    auto fv = f.values();
    auto fhv = fh.values();
    auto wv = weighted.values();
    for (std::size_t i = 0; i < wv.size(); ++i) {
        const double a = std::abs(fv[i]);
        const double ah = std::abs(fhv[i]);
        const double diff = a - ah;
        sum += diff * diff;
        const Complex unit = ah > 0.0 ? fhv[i] / ah : Complex(1.0, 0.0);
        wv[i] = diff * unit;
    }

    LossEval out;
    out.which = LossKind::FAL;
    out.value = sum / mn;
    out.gradient = (-2.0 / mn) * idft2(weighted);
    return out;
}

FalDecomposition fal_decomposition(const Field& x, const Field& xhat) {
    require_same_shape(x, xhat, "fal_decomposition");
    const double mn = static_cast<double>(x.size());
    FalDecomposition d;
    auto xv = x.values();
    auto hv = xhat.values();
    double l2 = 0.0;
    double cross = 0.0;
    for (std::size_t i = 0; i < xv.size(); ++i) {
        const double diff = xv[i] - hv[i];
        l2 += diff * diff;
        cross += 2.0 * xv[i] * hv[i];
    }
    const SpectralField f = dft2(x);
    const SpectralField fh = dft2(xhat);
    double spectral = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        spectral += 2.0 * std::abs(f.values()[i]) * std::abs(fh.values()[i]);
    }
    d.l2 = l2 / mn;
    d.cross_spatial = cross / mn;
    d.cross_spectral = spectral / mn;
    return d;
}

LossEval fcl(const Field& x, const Field& xhat) {
    require_same_shape(x, xhat, "fcl");
    const double ex = x.sum_squares();
    const double eh = xhat.sum_squares();
    if (ex == 0.0 || eh == 0.0) {
        throw DegenerateInputError("fcl: correlation undefined for an all-zero field");
    }

    const SpectralField f = dft2(x);
    const SpectralField fh = dft2(xhat);
    double num = 0.0;
    double ef = 0.0;
    double efh = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Complex a = f.values()[i];
        const Complex b = fh.values()[i];
        // (a conj(b) + b conj(a)) / 2 == Re(a conj(b))
        num += (a * std::conj(b)).real();
        ef += std::norm(a);
        efh += std::norm(b);
    }

    LossEval out;
    out.which = LossKind::FCL;
    out.value = std::clamp(1.0 - num / std::sqrt(ef * efh), 0.0, 2.0);

    double cross = 0.0;
    auto xv = x.values();
    auto hv = xhat.values();
    for (std::size_t i = 0; i < xv.size(); ++i) cross += xv[i] * hv[i];
    const double norm = 1.0 / std::sqrt(ex * eh);
    const double ratio = cross / eh;
    out.gradient = Field(x.rows(), x.cols());
    auto gv = out.gradient.values();
    for (std::size_t i = 0; i < gv.size(); ++i) gv[i] = -norm * (xv[i] - ratio * hv[i]);
    return out;
}

LossEval fourier_l2(const Field& x, const Field& xhat) {
    require_same_shape(x, xhat, "fourier_l2");
    const SpectralField f = dft2(x);
    const SpectralField fh = dft2(xhat);
    const double mn = static_cast<double>(x.size());
    SpectralField diff(x.rows(), x.cols());
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        diff.values()[i] = fh.values()[i] - f.values()[i];
        sum += std::norm(diff.values()[i]);
    }
    LossEval out;
    out.which = LossKind::FourierL2;
    out.value = sum / mn;
    out.gradient = (2.0 / mn) * idft2(diff);
    return out;
}

LossEval mse(const Field& x, const Field& xhat) {
    require_same_shape(x, xhat, "mse");
    const double mn = static_cast<double>(x.size());
    LossEval out;
    out.which = LossKind::MSE;
    out.gradient = Field(x.rows(), x.cols());
    auto xv = x.values();
    auto hv = xhat.values();
    auto gv = out.gradient.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < xv.size(); ++i) {
        const double d = hv[i] - xv[i];
        sum += d * d;
        gv[i] = 2.0 * d / mn;
    }
    out.value = sum / mn;
    return out;
}

LossEval mae(const Field& x, const Field& xhat) {
    require_same_shape(x, xhat, "mae");
    const double mn = static_cast<double>(x.size());
    LossEval out;
    out.which = LossKind::MAE;
    out.gradient = Field(x.rows(), x.cols());
    auto xv = x.values();
    auto hv = xhat.values();
    auto gv = out.gradient.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < xv.size(); ++i) {
        const double d = hv[i] - xv[i];
        sum += std::abs(d);
        gv[i] = d > 0.0 ? 1.0 / mn : (d < 0.0 ? -1.0 / mn : 0.0);
    }
    out.value = sum / mn;
    return out;
}

LossEval evaluate_loss(LossKind kind, const Field& x, const Field& xhat) {
    switch (kind) {
    case LossKind::FAL: return fal(x, xhat);
    case LossKind::FCL: return fcl(x, xhat);
    case LossKind::MSE: return mse(x, xhat);
    case LossKind::MAE: return mae(x, xhat);
    case LossKind::FourierL2: return fourier_l2(x, xhat);
    }
    throw ValidationError("unknown loss kind");
}

SequenceLossEval evaluate_sequence_loss(LossKind kind, const Sequence& x, const Sequence& xhat) {
    if (x.length() != xhat.length()) {
        throw DimensionError("sequence loss: length mismatch " + std::to_string(x.length()) +
                             " vs " + std::to_string(xhat.length()));
    }
    SequenceLossEval out;
    out.which = kind;
    const double inv = 1.0 / static_cast<double>(x.length());
    out.gradients.reserve(x.length());
    for (std::size_t t = 0; t < x.length(); ++t) {
        LossEval e = evaluate_loss(kind, x[t], xhat[t]);
        out.value += e.value * inv;
        out.gradients.push_back(inv * e.gradient);
    }
    return out;
}

Field sigmoid(const Field& z) {
    require_non_empty(z, "sigmoid");
    Field out(z.rows(), z.cols());
    auto zv = z.values();
    auto ov = out.values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = 1.0 / (1.0 + std::exp(-zv[i]));
    return out;
}

Field sigmoid_backward(const Field& sigmoid_out, const Field& grad_out) {
    require_same_shape(sigmoid_out, grad_out, "sigmoid_backward");
    Field out(grad_out.rows(), grad_out.cols());
    auto sv = sigmoid_out.values();
    auto gv = grad_out.values();
    auto ov = out.values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = gv[i] * sv[i] * (1.0 - sv[i]);
    return out;
}

} // namespace faclkit
