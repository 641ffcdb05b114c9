#pragma once

#include "faclkit/field.hpp"
#include "faclkit/report.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace faclkit {

// ---------------------------------------------------------------------------
// Regional histogram divergence

struct RhdConfig {
    std::size_t window = 16;   ///< square patch size; trailing partial patches are dropped
    std::size_t bins = 10;     ///< uniform bins over [0, 1]
    double eps = 1e-5;         ///< intensities below this are not counted
    double smoothing = 1e-6;   ///< added to every bin count before normalization

    void validate() const;
};

struct PatchHistogram {
    std::vector<double> probabilities;  ///< smoothed, sums to 1; empty when `empty`
    std::size_t counted = 0;            ///< pixels at or above eps
    bool empty = true;
};

/// Per-patch intensity histograms of one field.
struct HistogramGrid {
    std::size_t patch_rows = 0;
    std::size_t patch_cols = 0;
    std::vector<double> edges;             ///< bins + 1 edges over [0, 1]
    std::vector<PatchHistogram> patches;   ///< row-major over patches

    const PatchHistogram& at(std::size_t i, std::size_t j) const {
        return patches.at(i * patch_cols + j);
    }
};

/// Bin of value v among `bins` uniform bins on [0, 1]; 1.0 falls in the last bin.
std::size_t histogram_bin(double v, std::size_t bins);

HistogramGrid patch_histograms(const Field& f, const RhdConfig& cfg = {});

/// sum p log(p / q) over matching entries; both must be strictly positive.
double kl_divergence(std::span<const double> p, std::span<const double> q);

struct RhdResult {
    std::optional<double> value;  ///< empty when every patch was skipped
    std::size_t patches_used = 0;
    std::size_t patches_skipped = 0;
};

/// Mean over patches of KL(observed || predicted). Patches where either side
/// has no pixel at or above eps are skipped and counted in patches_skipped.
RhdResult rhd(const Field& pred, const Field& obs, const RhdConfig& cfg = {});

// ---------------------------------------------------------------------------
// Categorical scores. A pixel is positive when value >= threshold.

struct Contingency {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t false_alarms = 0;
    std::size_t correct_negatives = 0;
};

Contingency contingency(const Field& pred, const Field& obs, double threshold);

/// hits / (hits + misses + false alarms); empty when that denominator is 0.
std::optional<double> csi(const Field& pred, const Field& obs, double threshold);

/// CSI after max-pooling both binarized fields with kernel = stride = pool.
/// Trailing rows and columns that do not fill a pool are dropped.
std::optional<double> csi_pooled(const Field& pred, const Field& obs, double threshold,
                                 std::size_t pool);

/// Fractions skill score over non-overlapping window x window patches.
/// Empty when neither field has any positive pixel in the tiled area.
std::optional<double> fss(const Field& pred, const Field& obs, double threshold,
                          std::size_t window);

// ---------------------------------------------------------------------------
// Pixel-wise and structural

double mean_absolute_error(const Field& pred, const Field& obs);
double mean_squared_error(const Field& pred, const Field& obs);

struct SsimConfig {
    std::size_t window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;
};

/// Single-scale SSIM with a normalized Gaussian window, averaged over all
/// positions where the window fits entirely inside the field.
double ssim(const Field& pred, const Field& obs, const SsimConfig& cfg = {});

/// Pearson correlation of the flattened fields.
double pearson(const Field& a, const Field& b);

// ---------------------------------------------------------------------------
// Batch evaluation

/// CSI thresholds for a dataset preset, rescaled into [0, 1]:
/// "sevir" (/255), "meteonet" (/70 dBZ), "hko7" (/255), "mnist" ({0.5}).
std::vector<double> threshold_preset(std::string_view name);

struct EvalConfig {
    /// Any of: mae, mse, ssim, csi, fss, rhd.
    std::vector<std::string> metrics = {"mae", "mse", "ssim", "csi", "fss", "rhd"};
    std::vector<double> thresholds = threshold_preset("sevir");
    std::vector<std::size_t> pools = {1, 4, 16};
    std::size_t window = 16;  ///< FSS and RHD patch size
    std::size_t bins = 10;
    double eps = 1e-5;
    unsigned threads = 1;

    void validate() const;
};

/// Ordered list of metric parameterizations the config produces. CSI yields
/// one key per (threshold, pool) plus a "csi_m" key per pool (mean over the
/// thresholds that are defined on the frame).
std::vector<MetricKey> metric_keys(const EvalConfig& cfg);

/// All configured metrics for one (prediction, observation) frame pair.
std::vector<MetricValue> evaluate_frame(const Field& pred, const Field& obs, const EvalConfig& cfg);

/// Frame-by-frame evaluation of paired sequence lists. Throws DimensionError
/// on count, length, or shape mismatch.
MetricReport evaluate_sequences(const std::vector<Sequence>& preds,
                                const std::vector<Sequence>& obs, const EvalConfig& cfg);

MetricReport evaluate_sequences(const Sequence& preds, const Sequence& obs, const EvalConfig& cfg);

} // namespace faclkit
