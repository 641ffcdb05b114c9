#include "faclkit/report.hpp"

#include "faclkit/error.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace faclkit {

namespace {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

std::string MetricKey::label() const {
    std::string params;
    auto append = [&](const std::string& p) {
        params += params.empty() ? p : "," + p;
    };
    if (threshold) append("t=" + format_param(*threshold));
    if (window) append("w=" + std::to_string(*window));
    if (pool) append("pool=" + std::to_string(*pool));
    return params.empty() ? name : name + "[" + params + "]";
}

void MetricReport::add_frame(FrameMetrics frame) {
    if (frame.values.size() != keys_.size()) {
        throw ValidationError("metric report: frame has " + std::to_string(frame.values.size()) +
                              " values, expected " + std::to_string(keys_.size()));
    }
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (!(frame.values[i].key == keys_[i])) {
            throw ValidationError("metric report: unexpected key " + frame.values[i].key.label());
        }
        if (!frame.values[i].value && frame.values[i].skip_reason.empty()) {
            throw ValidationError("metric report: missing value without skip reason for " +
                                  keys_[i].label());
        }
    }
    frames_.push_back(std::move(frame));
}

std::optional<double> MetricReport::value(std::size_t frame_index, const std::string& key_label) const {
    const auto& f = frames_.at(frame_index);
    for (const auto& v : f.values) {
        if (v.key.label() == key_label) return v.value;
    }
    throw ValidationError("metric report: no metric " + key_label);
}

std::optional<double> MetricReport::value(std::size_t frame_index, const MetricKey& key) const {
    return value(frame_index, key.label());
}

std::vector<MetricAggregate> MetricReport::aggregates() const {
    std::vector<MetricAggregate> out;
    out.reserve(keys_.size());
    for (std::size_t k = 0; k < keys_.size(); ++k) {
        MetricAggregate agg;
        agg.key = keys_[k];
        double sum = 0.0;
        for (const auto& f : frames_) {
            const auto& v = f.values[k].value;
            if (v) {
                sum += *v;
                ++agg.count;
            } else {
                ++agg.skipped;
            }
        }
        if (agg.count > 0) agg.mean = sum / static_cast<double>(agg.count);
        out.push_back(std::move(agg));
    }
    return out;
}

std::optional<double> MetricReport::mean(const MetricKey& key) const {
    for (const auto& agg : aggregates()) {
        if (agg.key == key) return agg.mean;
    }
    throw ValidationError("metric report: no metric " + key.label());
}

void MetricReport::write_csv(std::ostream& os) const {
    os << "sequence,frame,label,metric,threshold,window,pool,value,status\n";
    for (const auto& f : frames_) {
        for (const auto& v : f.values) {
            os << f.sequence << ',' << f.frame << ',' << f.label << ',' << v.key.name << ',';
            if (v.key.threshold) os << format_param(*v.key.threshold);
            os << ',';
            if (v.key.window) os << *v.key.window;
            os << ',';
            if (v.key.pool) os << *v.key.pool;
            os << ',';
            if (v.value) {
                os << format_number(*v.value) << ",ok\n";
            } else {
                os << ",skip:" << v.skip_reason << '\n';
            }
        }
    }
}

std::string MetricReport::summary_table() const {
    std::ostringstream os;
    std::size_t width = 6;
    for (const auto& k : keys_) width = std::max(width, k.label().size());
    os << std::left << std::setw(static_cast<int>(width)) << "metric" << "  " << std::setw(14)
       << "mean" << "  " << std::setw(6) << "frames" << "  skipped\n";
    for (const auto& agg : aggregates()) {
        os << std::left << std::setw(static_cast<int>(width)) << agg.key.label() << "  "
           << std::setw(14) << (agg.mean ? format_param(*agg.mean) : std::string("n/a")) << "  "
           << std::setw(6) << agg.count << "  " << agg.skipped << '\n';
    }
    return os.str();
}

} // namespace faclkit
