#include "faclkit/metrics.hpp"

#include "faclkit/error.hpp"
#include "faclkit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace faclkit {

namespace {

void require_window_fits(const Field& f, std::size_t window, const char* what) {
    if (window == 0) throw ValidationError(std::string(what) + ": window must be positive");
    if (window > f.rows() || window > f.cols()) {
        throw DimensionError(std::string(what) + ": window " + std::to_string(window) +
                             " larger than field " + shape_string(f));
    }
}

std::vector<unsigned char> binarize(const Field& f, double threshold) {
    std::vector<unsigned char> out(f.size());
    auto v = f.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i] >= threshold ? 1 : 0;
    return out;
}

// Max over each pool x pool block; returns the pooled mask and its shape.
std::vector<unsigned char> max_pool(const std::vector<unsigned char>& mask, std::size_t rows,
                                    std::size_t cols, std::size_t pool, std::size_t& out_rows,
                                    std::size_t& out_cols) {
    out_rows = rows / pool;
    out_cols = cols / pool;
    std::vector<unsigned char> out(out_rows * out_cols, 0);
    for (std::size_t i = 0; i < out_rows; ++i) {
        for (std::size_t j = 0; j < out_cols; ++j) {
            unsigned char m = 0;
            for (std::size_t r = i * pool; r < (i + 1) * pool && !m; ++r) {
                for (std::size_t c = j * pool; c < (j + 1) * pool; ++c) {
                    if (mask[r * cols + c]) {
                        m = 1;
                        break;
                    }
                }
            }
            out[i * out_cols + j] = m;
        }
    }
    return out;
}

std::optional<double> csi_from(const Contingency& c) {
    const std::size_t denom = c.hits + c.misses + c.false_alarms;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(c.hits) / static_cast<double>(denom);
}

Contingency count(const std::vector<unsigned char>& pred, const std::vector<unsigned char>& obs) {
    Contingency c;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] && obs[i]) ++c.hits;
        else if (!pred[i] && obs[i]) ++c.misses;
        else if (pred[i] && !obs[i]) ++c.false_alarms;
        else ++c.correct_negatives;
    }
    return c;
}

bool known_metric(const std::string& name) {
    return name == "mae" || name == "mse" || name == "ssim" || name == "csi" || name == "fss" ||
           name == "rhd";
}

bool wants(const EvalConfig& cfg, const char* name) {
    return std::find(cfg.metrics.begin(), cfg.metrics.end(), name) != cfg.metrics.end();
}

} // namespace

// --------------------------------------------------------------------------- RHD

void RhdConfig::validate() const {
    if (bins < 2) throw ValidationError("rhd: need at least 2 bins, got " + std::to_string(bins));
    if (window == 0) throw ValidationError("rhd: window must be positive");
    if (!(eps >= 0.0)) throw ValidationError("rhd: eps must be non-negative");
    if (!(smoothing > 0.0)) throw ValidationError("rhd: smoothing must be positive");
}

std::size_t histogram_bin(double v, std::size_t bins) {
    const double scaled = std::floor(v * static_cast<double>(bins));
    if (scaled <= 0.0) return 0;
    return std::min(bins - 1, static_cast<std::size_t>(scaled));
}

HistogramGrid patch_histograms(const Field& f, const RhdConfig& cfg) {
    cfg.validate();
    require_window_fits(f, cfg.window, "rhd");
    HistogramGrid grid;
    grid.patch_rows = f.rows() / cfg.window;
    grid.patch_cols = f.cols() / cfg.window;
    grid.edges.resize(cfg.bins + 1);
    for (std::size_t k = 0; k <= cfg.bins; ++k) {
        grid.edges[k] = static_cast<double>(k) / static_cast<double>(cfg.bins);
    }
    grid.patches.resize(grid.patch_rows * grid.patch_cols);

    std::vector<double> counts(cfg.bins);
    for (std::size_t i = 0; i < grid.patch_rows; ++i) {
        for (std::size_t j = 0; j < grid.patch_cols; ++j) {
            std::fill(counts.begin(), counts.end(), 0.0);
            std::size_t counted = 0;
            for (std::size_t r = i * cfg.window; r < (i + 1) * cfg.window; ++r) {
                for (std::size_t c = j * cfg.window; c < (j + 1) * cfg.window; ++c) {
                    const double v = f(r, c);
                    if (v < cfg.eps) continue;
                    counts[histogram_bin(v, cfg.bins)] += 1.0;
                    ++counted;
                }
            }
            PatchHistogram& h = grid.patches[i * grid.patch_cols + j];
            h.counted = counted;
            h.empty = counted == 0;
            if (h.empty) continue;
            const double total = static_cast<double>(counted) +
                                 cfg.smoothing * static_cast<double>(cfg.bins);
            h.probabilities.resize(cfg.bins);
            for (std::size_t k = 0; k < cfg.bins; ++k) {
                h.probabilities[k] = (counts[k] + cfg.smoothing) / total;
            }
        }
    }
    return grid;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DimensionError("kl_divergence: length mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!(p[k] > 0.0 && q[k] > 0.0)) {
            throw DegenerateInputError("kl_divergence: distributions must be strictly positive");
        }
        d += p[k] * std::log(p[k] / q[k]);
    }
    return d;
}

RhdResult rhd(const Field& pred, const Field& obs, const RhdConfig& cfg) {
    require_same_shape(pred, obs, "rhd");
    const HistogramGrid hp = patch_histograms(pred, cfg);
    const HistogramGrid ho = patch_histograms(obs, cfg);
    RhdResult result;
    double sum = 0.0;
    for (std::size_t i = 0; i < hp.patches.size(); ++i) {
        const auto& o = ho.patches[i];
        const auto& p = hp.patches[i];
        if (o.empty || p.empty) {
            ++result.patches_skipped;
            continue;
        }
        sum += kl_divergence(o.probabilities, p.probabilities);
        ++result.patches_used;
    }
    if (result.patches_used > 0) result.value = sum / static_cast<double>(result.patches_used);
    return result;
}

// --------------------------------------------------------------------------- categorical

Contingency contingency(const Field& pred, const Field& obs, double threshold) {
    require_same_shape(pred, obs, "contingency");
    return count(binarize(pred, threshold), binarize(obs, threshold));
}

std::optional<double> csi(const Field& pred, const Field& obs, double threshold) {
    return csi_from(contingency(pred, obs, threshold));
}

std::optional<double> csi_pooled(const Field& pred, const Field& obs, double threshold,
                                 std::size_t pool) {
    require_same_shape(pred, obs, "csi_pooled");
    require_window_fits(pred, pool, "csi_pooled");
    std::size_t rows = 0, cols = 0;
    const auto p = max_pool(binarize(pred, threshold), pred.rows(), pred.cols(), pool, rows, cols);
    const auto o = max_pool(binarize(obs, threshold), obs.rows(), obs.cols(), pool, rows, cols);
    return csi_from(count(p, o));
}

std::optional<double> fss(const Field& pred, const Field& obs, double threshold,
                          std::size_t window) {
    require_same_shape(pred, obs, "fss");
    require_window_fits(pred, window, "fss");
    const std::size_t pr = pred.rows() / window;
    const std::size_t pc = pred.cols() / window;
    const double area = static_cast<double>(window * window);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < pr; ++i) {
        for (std::size_t j = 0; j < pc; ++j) {
            std::size_t fp = 0, op = 0;
            for (std::size_t r = i * window; r < (i + 1) * window; ++r) {
                for (std::size_t c = j * window; c < (j + 1) * window; ++c) {
                    fp += pred(r, c) >= threshold;
                    op += obs(r, c) >= threshold;
                }
            }
            const double ff = static_cast<double>(fp) / area;
            const double of = static_cast<double>(op) / area;
            num += (ff - of) * (ff - of);
            den += ff * ff + of * of;
        }
    }
    if (den == 0.0) return std::nullopt;
    return 1.0 - num / den;
}

// --------------------------------------------------------------------------- pixel-wise

double mean_absolute_error(const Field& pred, const Field& obs) {
    require_same_shape(pred, obs, "mae");
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) s += std::abs(pred.values()[i] - obs.values()[i]);
    return s / static_cast<double>(pred.size());
}

double mean_squared_error(const Field& pred, const Field& obs) {
    require_same_shape(pred, obs, "mse");
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred.values()[i] - obs.values()[i];
        s += d * d;
    }
    return s / static_cast<double>(pred.size());
}

double ssim(const Field& pred, const Field& obs, const SsimConfig& cfg) {
    require_same_shape(pred, obs, "ssim");
    if (cfg.window == 0 || cfg.window % 2 == 0) throw ValidationError("ssim: window must be odd");
    require_window_fits(pred, cfg.window, "ssim");

    const std::size_t w = cfg.window;
    std::vector<double> kernel(w);
    const double centre = static_cast<double>(w / 2);
    double ksum = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
        const double d = static_cast<double>(i) - centre;
        kernel[i] = std::exp(-d * d / (2.0 * cfg.sigma * cfg.sigma));
        ksum += kernel[i];
    }
    for (auto& k : kernel) k /= ksum;

    const std::size_t rows = pred.rows(), cols = pred.cols();
    const std::size_t orow = rows - w + 1, ocol = cols - w + 1;

    // Separable 'valid' filtering of the five moment images.
    auto filter = [&](auto&& pixel) {
        std::vector<double> tmp(rows * ocol);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < ocol; ++c) {
                double s = 0.0;
                for (std::size_t k = 0; k < w; ++k) s += kernel[k] * pixel(r, c + k);
                tmp[r * ocol + c] = s;
            }
        }
        std::vector<double> out(orow * ocol);
        for (std::size_t r = 0; r < orow; ++r) {
            for (std::size_t c = 0; c < ocol; ++c) {
                double s = 0.0;
                for (std::size_t k = 0; k < w; ++k) s += kernel[k] * tmp[(r + k) * ocol + c];
                out[r * ocol + c] = s;
            }
        }
        return out;
    };

    const auto mu_x = filter([&](std::size_t r, std::size_t c) { return pred(r, c); });
    const auto mu_y = filter([&](std::size_t r, std::size_t c) { return obs(r, c); });
    const auto xx = filter([&](std::size_t r, std::size_t c) { return pred(r, c) * pred(r, c); });
    const auto yy = filter([&](std::size_t r, std::size_t c) { return obs(r, c) * obs(r, c); });
    const auto xy = filter([&](std::size_t r, std::size_t c) { return pred(r, c) * obs(r, c); });

    const double c1 = (cfg.k1 * cfg.dynamic_range) * (cfg.k1 * cfg.dynamic_range);
    const double c2 = (cfg.k2 * cfg.dynamic_range) * (cfg.k2 * cfg.dynamic_range);
    double total = 0.0;
    for (std::size_t i = 0; i < mu_x.size(); ++i) {
        const double mx = mu_x[i], my = mu_y[i];
        const double sx = xx[i] - mx * mx;
        const double sy = yy[i] - my * my;
        const double sxy = xy[i] - mx * my;
        total += ((2.0 * mx * my + c1) * (2.0 * sxy + c2)) /
                 ((mx * mx + my * my + c1) * (sx + sy + c2));
    }
    return total / static_cast<double>(mu_x.size());
}

double pearson(const Field& a, const Field& b) {
    require_same_shape(a, b, "pearson");
    const double n = static_cast<double>(a.size());
    const double ma = a.sum() / n, mb = b.sum() / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a.values()[i] - ma, db = b.values()[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) throw DegenerateInputError("pearson: constant field");
    return sab / std::sqrt(saa * sbb);
}

// --------------------------------------------------------------------------- batch

std::vector<double> threshold_preset(std::string_view name) {
    auto scaled = [](std::initializer_list<double> raw, double scale) {
        std::vector<double> out;
        for (double v : raw) out.push_back(v / scale);
        return out;
    };
    if (name == "sevir") return scaled({16, 74, 133, 160, 181, 219}, 255.0);
    if (name == "meteonet") return scaled({12, 18, 24, 32}, 70.0);
    if (name == "hko7") return scaled({84, 117, 140, 158, 185}, 255.0);
    if (name == "mnist") return {0.5};
    throw ValidationError("unknown threshold preset '" + std::string(name) + "'");
}

void EvalConfig::validate() const {
    if (metrics.empty()) throw ValidationError("eval: no metrics configured");
    for (const auto& m : metrics) {
        if (!known_metric(m)) throw ValidationError("eval: unknown metric '" + m + "'");
    }
    const bool categorical = wants(*this, "csi") || wants(*this, "fss");
    if (categorical && thresholds.empty()) throw ValidationError("eval: no thresholds configured");
    for (double t : thresholds) {
        if (!(t >= 0.0 && t <= 1.0)) {
            throw ValidationError("eval: threshold " + std::to_string(t) + " outside [0, 1]");
        }
    }
    if (wants(*this, "csi") && pools.empty()) throw ValidationError("eval: no pool sizes configured");
    for (auto p : pools) {
        if (p == 0) throw ValidationError("eval: pool sizes must be positive");
    }
    if (window == 0) throw ValidationError("eval: window must be positive");
    if (bins < 2) throw ValidationError("eval: need at least 2 bins");
}

std::vector<MetricKey> metric_keys(const EvalConfig& cfg) {
    std::vector<MetricKey> keys;
    if (wants(cfg, "mae")) keys.push_back({"mae", {}, {}, {}});
    if (wants(cfg, "mse")) keys.push_back({"mse", {}, {}, {}});
    if (wants(cfg, "ssim")) keys.push_back({"ssim", {}, {}, {}});
    if (wants(cfg, "csi")) {
        for (auto pool : cfg.pools) {
            for (double t : cfg.thresholds) keys.push_back({"csi", t, {}, pool});
            keys.push_back({"csi_m", {}, {}, pool});
        }
    }
    if (wants(cfg, "fss")) {
        for (double t : cfg.thresholds) keys.push_back({"fss", t, cfg.window, {}});
    }
    if (wants(cfg, "rhd")) keys.push_back({"rhd", {}, cfg.window, {}});
    return keys;
}

std::vector<MetricValue> evaluate_frame(const Field& pred, const Field& obs, const EvalConfig& cfg) {
    require_same_shape(pred, obs, "evaluate");
    std::vector<MetricValue> out;
    auto push = [&](MetricKey key, std::optional<double> v, const char* reason) {
        out.push_back({std::move(key), v, v ? std::string() : std::string(reason)});
    };
    if (wants(cfg, "mae")) push({"mae", {}, {}, {}}, mean_absolute_error(pred, obs), "");
    if (wants(cfg, "mse")) push({"mse", {}, {}, {}}, mean_squared_error(pred, obs), "");
    if (wants(cfg, "ssim")) push({"ssim", {}, {}, {}}, ssim(pred, obs), "");
    if (wants(cfg, "csi")) {
        for (auto pool : cfg.pools) {
            double sum = 0.0;
            std::size_t n = 0;
            for (double t : cfg.thresholds) {
                const auto v = pool == 1 ? csi(pred, obs, t) : csi_pooled(pred, obs, t, pool);
                if (v) {
                    sum += *v;
                    ++n;
                }
                push({"csi", t, {}, pool}, v, "no-positives");
            }
            push({"csi_m", {}, {}, pool},
                 n ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt,
                 "no-positives");
        }
    }
    if (wants(cfg, "fss")) {
        for (double t : cfg.thresholds) {
            push({"fss", t, cfg.window, {}}, fss(pred, obs, t, cfg.window), "no-positives");
        }
    }
    if (wants(cfg, "rhd")) {
        RhdConfig rc;
        rc.window = cfg.window;
        rc.bins = cfg.bins;
        rc.eps = cfg.eps;
        const RhdResult r = rhd(pred, obs, rc);
        push({"rhd", {}, cfg.window, {}}, r.value, "all-patches-empty");
    }
    return out;
}

MetricReport evaluate_sequences(const std::vector<Sequence>& preds,
                                const std::vector<Sequence>& obs, const EvalConfig& cfg) {
    cfg.validate();
    if (preds.size() != obs.size()) {
        throw DimensionError("evaluate: " + std::to_string(preds.size()) + " predicted vs " +
                             std::to_string(obs.size()) + " observed sequences");
    }
    struct Job {
        std::size_t seq, frame;
    };
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < preds.size(); ++s) {
        if (preds[s].length() != obs[s].length()) {
            throw DimensionError("evaluate: sequence " + std::to_string(s) + " length mismatch " +
                                 std::to_string(preds[s].length()) + " vs " +
                                 std::to_string(obs[s].length()));
        }
        if (preds[s].rows() != obs[s].rows() || preds[s].cols() != obs[s].cols()) {
            throw DimensionError("evaluate: sequence " + std::to_string(s) + " shape mismatch " +
                                 shape_string(preds[s][0]) + " vs " + shape_string(obs[s][0]));
        }
        for (std::size_t t = 0; t < preds[s].length(); ++t) jobs.push_back({s, t});
    }

    std::vector<std::vector<MetricValue>> results(jobs.size());
    parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
        results[i] = evaluate_frame(preds[jobs[i].seq][jobs[i].frame], obs[jobs[i].seq][jobs[i].frame], cfg);
    });

    MetricReport report(metric_keys(cfg));
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        FrameMetrics fm;
        fm.sequence = jobs[i].seq;
        fm.frame = jobs[i].frame;
        fm.label = "s" + std::to_string(fm.sequence) + "f" + std::to_string(fm.frame);
        fm.values = std::move(results[i]);
        report.add_frame(std::move(fm));
    }
    if (!preds.empty()) {
        report.metadata()["shape"] = std::to_string(preds[0].rows()) + "x" + std::to_string(preds[0].cols());
    }
    report.metadata()["sequences"] = std::to_string(preds.size());
    report.metadata()["frames"] = std::to_string(jobs.size());
    return report;
}

MetricReport evaluate_sequences(const Sequence& preds, const Sequence& obs, const EvalConfig& cfg) {
    return evaluate_sequences(std::vector<Sequence>{preds}, std::vector<Sequence>{obs}, cfg);
}

} // namespace faclkit
