#include "faclkit/error.hpp"
#include "faclkit/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace faclkit;

namespace {

const MetricKey kMae{"mae", {}, {}, {}};
const MetricKey kCsi{"csi", 0.5, {}, 4};

FrameMetrics frame(std::size_t f, std::optional<double> mae, std::optional<double> c) {
    FrameMetrics m;
    m.label = "s0f" + std::to_string(f);
    m.frame = f;
    m.values.push_back({kMae, mae, mae ? "" : "nan"});
    m.values.push_back({kCsi, c, c ? "" : "no-positives"});
    return m;
}

} // namespace

TEST_CASE("labels") {
    CHECK(kMae.label() == "mae");
    CHECK(kCsi.label() == "csi[t=0.5,pool=4]");
    CHECK((MetricKey{"fss", 0.25, 16, {}}.label()) == "fss[t=0.25,w=16]");
    CHECK((MetricKey{"rhd", {}, 16, {}}.label()) == "rhd[w=16]");
}

TEST_CASE("frames must carry every key with a value or a reason") {
    MetricReport r({kMae, kCsi});
    r.add_frame(frame(0, 0.25, 0.5));
    FrameMetrics short_frame = frame(1, 0.1, 0.2);
    short_frame.values.pop_back();
    CHECK_THROWS_AS(r.add_frame(short_frame), ValidationError);
    FrameMetrics swapped = frame(1, 0.1, 0.2);
    std::swap(swapped.values[0], swapped.values[1]);
    CHECK_THROWS_AS(r.add_frame(swapped), ValidationError);
    FrameMetrics silent = frame(1, 0.1, 0.2);
    silent.values[1].value.reset();
    silent.values[1].skip_reason.clear();
    CHECK_THROWS_AS(r.add_frame(silent), ValidationError);
    CHECK(r.frames().size() == 1);
}

TEST_CASE("aggregates skip undefined frames") {
    MetricReport r({kMae, kCsi});
    r.add_frame(frame(0, 0.25, 0.5));
    r.add_frame(frame(1, 0.75, std::nullopt));
    r.add_frame(frame(2, 0.5, 0.25));
    CHECK(*r.mean(kMae) == doctest::Approx(0.5));
    CHECK(*r.mean(kCsi) == doctest::Approx(0.375));
    const auto agg = r.aggregates();
    CHECK(agg[1].count == 2);
    CHECK(agg[1].skipped == 1);
    CHECK(*r.value(2, "csi[t=0.5,pool=4]") == 0.25);
    CHECK_FALSE(r.value(1, kCsi).has_value());

    MetricReport empty({kCsi});
    empty.add_frame([] {
        FrameMetrics m;
        m.values.push_back({kCsi, std::nullopt, "no-positives"});
        return m;
    }());
    CHECK_FALSE(empty.mean(kCsi).has_value());
    CHECK(empty.summary_table().find("n/a") != std::string::npos);
}

TEST_CASE("csv layout") {
    MetricReport r({kMae, kCsi});
    r.add_frame(frame(3, 0.1, std::nullopt));
    std::ostringstream os;
    r.write_csv(os);
    CHECK(os.str() ==
          "sequence,frame,label,metric,threshold,window,pool,value,status\n"
          "0,3,s0f3,mae,,,,0.10000000000000001,ok\n"
          "0,3,s0f3,csi,0.5,,4,,skip:no-positives\n");
}
