#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace faclkit {

/// A metric together with its parameterization. Unused parameters stay empty.
struct MetricKey {
    std::string name;
    std::optional<double> threshold;
    std::optional<std::size_t> window;
    std::optional<std::size_t> pool;

    /// e.g. "csi[t=0.5,pool=4]", "rhd[w=16]", "ssim".
    std::string label() const;

    friend bool operator==(const MetricKey&, const MetricKey&) = default;
};

/// A value, or an explicit reason why the metric is undefined on this frame.
struct MetricValue {
    MetricKey key;
    std::optional<double> value;
    std::string skip_reason;
};

struct FrameMetrics {
    std::string label;
    std::size_t sequence = 0;
    std::size_t frame = 0;
    std::vector<MetricValue> values;
};

struct MetricAggregate {
    MetricKey key;
    std::optional<double> mean;
    std::size_t count = 0;
    std::size_t skipped = 0;
};

/// Per-frame metric values plus metadata. Every frame carries an entry for
/// every key in keys(), either a value or a skip reason.
class MetricReport {
public:
    MetricReport() = default;
    explicit MetricReport(std::vector<MetricKey> keys) : keys_(std::move(keys)) {}

    const std::vector<MetricKey>& keys() const noexcept { return keys_; }
    const std::vector<FrameMetrics>& frames() const noexcept { return frames_; }
    std::map<std::string, std::string>& metadata() noexcept { return metadata_; }
    const std::map<std::string, std::string>& metadata() const noexcept { return metadata_; }

    /// Throws ValidationError unless the frame has exactly the configured keys.
    void add_frame(FrameMetrics frame);

    /// Lookup by frame index and key label.
    std::optional<double> value(std::size_t frame_index, const std::string& key_label) const;
    std::optional<double> value(std::size_t frame_index, const MetricKey& key) const;

    /// Arithmetic mean over non-skipped frames, summed in frame order.
    std::vector<MetricAggregate> aggregates() const;
    std::optional<double> mean(const MetricKey& key) const;

    /// One row per frame per key:
    ///   sequence,frame,label,metric,threshold,window,pool,value,status
    /// status is "ok" or "skip:<reason>"; unused parameters are empty cells.
    void write_csv(std::ostream& os) const;

    /// Aggregate table, one metric per line.
    std::string summary_table() const;

private:
    std::vector<MetricKey> keys_;
    std::vector<FrameMetrics> frames_;
    std::map<std::string, std::string> metadata_;
};

} // namespace faclkit
