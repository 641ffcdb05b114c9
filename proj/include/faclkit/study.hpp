#pragma once

#include "faclkit/field.hpp"
#include "faclkit/metrics.hpp"
#include "faclkit/report.hpp"
#include "faclkit/transforms.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace faclkit {

enum class SweepMode { Blur, Translate };

std::string_view to_string(SweepMode mode);
SweepMode parse_sweep_mode(std::string_view name);

/// One point of a FAL decomposition sweep. abs_cross_diff is
/// |cross_spatial - cross_spectral|.
struct FalCurveRow {
    double param = 0.0;
    double l2 = 0.0;
    double cross_spatial = 0.0;
    double cross_spectral = 0.0;
    double abs_cross_diff = 0.0;
    double fal = 0.0;
};

/// Compares x with transformed copies of itself. Blur mode: param is sigma,
/// kernel 2 ceil(3 sigma) + 1. Translate mode: param t is rounded and the
/// field moves by (t, t) with zero fill.
std::vector<FalCurveRow> fal_curve_sweep(const Field& x, SweepMode mode,
                                         std::span<const double> params, unsigned threads = 1);

/// Header: mode,param,l2,cross_spatial,cross_spectral,abs_cross_diff,fal
void write_fal_curve_header(std::ostream& os);
void write_fal_curve_rows(std::ostream& os, SweepMode mode, const std::vector<FalCurveRow>& rows);

/// Metric settings for transform tables: MAE, MSE, SSIM, CSI at pools
/// {1, 4, 16}, FSS and RHD, with thresholds 0.01 (any signal) and 0.5.
EvalConfig transform_table_config();

/// Evaluates every transform of x against x. Frame i of the report is
/// specs[i], labelled with its transform name.
MetricReport metric_transform_table(const Field& x, std::span<const TransformSpec> specs,
                                    const EvalConfig& cfg = transform_table_config());

/// Thresholded mixture of Gaussian blobs with a bimodal histogram:
/// background 0, a faint mode in [0.02, 0.09] and a bright mode in [0.9, 1].
Field bimodal_field(std::size_t size, std::uint64_t seed);

/// src centred on a rows x cols zero canvas, cropped when larger.
Field center_on_canvas(const Field& src, std::size_t rows, std::size_t cols);

} // namespace faclkit
