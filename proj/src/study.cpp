#include "faclkit/study.hpp"

#include "faclkit/error.hpp"
#include "faclkit/losses.hpp"
#include "faclkit/parallel.hpp"
#include "faclkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace faclkit {

std::string_view to_string(SweepMode mode) {
    return mode == SweepMode::Blur ? "blur" : "translate";
}

SweepMode parse_sweep_mode(std::string_view name) {
    if (name == "blur") return SweepMode::Blur;
    if (name == "translate") return SweepMode::Translate;
    throw ValidationError("unknown sweep mode '" + std::string(name) + "'");
}

std::vector<FalCurveRow> fal_curve_sweep(const Field& x, SweepMode mode,
                                         std::span<const double> params, unsigned threads) {
    require_non_empty(x, "fal_curve_sweep");
    for (double p : params) {
        if (!std::isfinite(p) || p < 0.0) {
            throw ValidationError("sweep parameters must be finite and non-negative");
        }
    }
    std::vector<FalCurveRow> rows(params.size());
    parallel_for(params.size(), threads, [&](std::size_t i) {
        const double p = params[i];
        TransformSpec spec;
        if (mode == SweepMode::Blur) {
            spec = GaussianBlur{kernel_for_sigma(p), p};
        } else {
            const long t = std::lround(p);
            spec = Translate{t, t};
        }
        const Field xhat = apply_transform(x, spec);
        const auto d = fal_decomposition(x, xhat);
        rows[i] = {p,
                   d.l2,
                   d.cross_spatial,
                   d.cross_spectral,
                   std::abs(d.cross_spatial - d.cross_spectral),
                   fal(x, xhat).value};
    });
    return rows;
}

void write_fal_curve_header(std::ostream& os) {
    os << "mode,param,l2,cross_spatial,cross_spectral,abs_cross_diff,fal\n";
}

void write_fal_curve_rows(std::ostream& os, SweepMode mode, const std::vector<FalCurveRow>& rows) {
    char buf[256];
    for (const auto& r : rows) {
        os << to_string(mode) << ',';
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.param, r.l2,
                      r.cross_spatial, r.cross_spectral, r.abs_cross_diff, r.fal);
        os << buf;
    }
}

EvalConfig transform_table_config() {
    EvalConfig cfg;
    cfg.metrics = {"mae", "mse", "ssim", "csi", "fss", "rhd"};
    cfg.thresholds = {0.01, 0.5};
    cfg.pools = {1, 4, 16};
    cfg.window = 16;
    return cfg;
}

MetricReport metric_transform_table(const Field& x, std::span<const TransformSpec> specs,
                                    const EvalConfig& cfg) {
    cfg.validate();
    MetricReport report(metric_keys(cfg));
    std::vector<FrameMetrics> frames(specs.size());
    parallel_for(specs.size(), cfg.threads, [&](std::size_t i) {
        const Field xhat = apply_transform(x, specs[i]);
        frames[i].label = transform_name(specs[i]);
        frames[i].frame = i;
        frames[i].values = evaluate_frame(xhat, x, cfg);
    });
    for (auto& f : frames) report.add_frame(std::move(f));
    report.metadata()["shape"] = shape_string(x);
    report.metadata()["transforms"] = std::to_string(specs.size());
    return report;
}

Field bimodal_field(std::size_t size, std::uint64_t seed) {
    if (size == 0) throw ValidationError("bimodal_field: size must be positive");
    Engine engine(derive_seed(seed, "bimodal"));
    const double s = static_cast<double>(size);
    const int blobs = 4 + static_cast<int>(uniform01(engine) * 5.0);
    Field smooth(size, size);
    for (int b = 0; b < blobs; ++b) {
        const double cr = (0.15 + 0.7 * uniform01(engine)) * s;
        const double cc = (0.15 + 0.7 * uniform01(engine)) * s;
        const double sr = (0.06 + 0.08 * uniform01(engine)) * s;
        const double sc = (0.06 + 0.08 * uniform01(engine)) * s;
        const double amp = 0.6 + 0.4 * uniform01(engine);
        for (std::size_t r = 0; r < size; ++r) {
            for (std::size_t c = 0; c < size; ++c) {
                const double dr = (static_cast<double>(r) - cr) / sr;
                const double dc = (static_cast<double>(c) - cc) / sc;
                smooth(r, c) += amp * std::exp(-0.5 * (dr * dr + dc * dc));
            }
        }
    }
    const double peak = smooth.max();
    const double lo = 0.15 * peak, hi = 0.45 * peak;
    Field out(size, size);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v = smooth.values()[i];
        double o = 0.0;
        if (v > hi) {
            o = 0.9 + 0.1 * (v - hi) / (peak - hi);
        } else if (v > lo) {
            o = 0.02 + 0.07 * (v - lo) / (hi - lo);
        }
        out.values()[i] = std::clamp(o, 0.0, 1.0);
    }
    return out;
}

Field center_on_canvas(const Field& src, std::size_t rows, std::size_t cols) {
    require_non_empty(src, "center_on_canvas");
    Field out(rows, cols);
    const long off_r = (static_cast<long>(rows) - static_cast<long>(src.rows())) / 2;
    const long off_c = (static_cast<long>(cols) - static_cast<long>(src.cols())) / 2;
    for (std::size_t r = 0; r < src.rows(); ++r) {
        const long tr = static_cast<long>(r) + off_r;
        if (tr < 0 || tr >= static_cast<long>(rows)) continue;
        for (std::size_t c = 0; c < src.cols(); ++c) {
            const long tc = static_cast<long>(c) + off_c;
            if (tc < 0 || tc >= static_cast<long>(cols)) continue;
            out(static_cast<std::size_t>(tr), static_cast<std::size_t>(tc)) = src(r, c);
        }
    }
    return out;
}

} // namespace faclkit
