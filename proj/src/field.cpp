#include "faclkit/field.hpp"

#include "faclkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace faclkit {

Field::Field(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("field dimensions must be positive, got " + std::to_string(rows) +
                             "x" + std::to_string(cols));
    }
    if (!std::isfinite(fill)) throw DimensionError("field fill value is not finite");
}

Field::Field(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("field dimensions must be positive, got " + std::to_string(rows) +
                             "x" + std::to_string(cols));
    }
    if (data_.size() != rows * cols) {
        throw DimensionError("field expects " + std::to_string(rows * cols) + " values, got " +
                             std::to_string(data_.size()));
    }
    if (!all_finite()) throw DimensionError("field contains non-finite values");
}

Field Field::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) throw DimensionError("empty field literal");
    const std::size_t cols = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * cols);
    for (const auto& row : rows) {
        if (row.size() != cols) throw DimensionError("ragged field literal");
        values.insert(values.end(), row.begin(), row.end());
    }
    return Field(rows.size(), cols, std::move(values));
}

bool Field::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Field::sum() const noexcept { return std::accumulate(data_.begin(), data_.end(), 0.0); }

double Field::sum_squares() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return s;
}

double Field::min() const {
    require_non_empty(*this, "min");
    return *std::min_element(data_.begin(), data_.end());
}

double Field::max() const {
    require_non_empty(*this, "max");
    return *std::max_element(data_.begin(), data_.end());
}

std::string shape_string(const Field& f) {
    std::ostringstream os;
    os << f.rows() << "x" << f.cols();
    return os.str();
}

void require_same_shape(const Field& a, const Field& b, const char* what) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(what) + ": shape mismatch " + shape_string(a) + " vs " +
                             shape_string(b));
    }
    require_non_empty(a, what);
}

void require_non_empty(const Field& f, const char* what) {
    if (f.empty()) throw DimensionError(std::string(what) + ": empty field");
}

Sequence::Sequence(std::vector<Field> frames) : frames_(std::move(frames)) {
    if (frames_.empty()) throw DimensionError("sequence must contain at least one frame");
    for (const auto& f : frames_) {
        require_non_empty(f, "sequence");
        if (!f.same_shape(frames_.front())) {
            throw DimensionError("sequence frames must share one shape: " +
                                 shape_string(frames_.front()) + " vs " + shape_string(f));
        }
    }
}

namespace {

template <class Op>
Field zip(const Field& a, const Field& b, Op op, const char* what) {
    require_same_shape(a, b, what);
    Field out(a.rows(), a.cols());
    auto av = a.values();
    auto bv = b.values();
    auto ov = out.values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = op(av[i], bv[i]);
    return out;
}

template <class Op>
Field map(const Field& a, Op op) {
    require_non_empty(a, "map");
    Field out(a.rows(), a.cols());
    auto av = a.values();
    auto ov = out.values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = op(av[i]);
    return out;
}

} // namespace

Field operator+(const Field& a, const Field& b) {
    return zip(a, b, [](double x, double y) { return x + y; }, "add");
}

Field operator-(const Field& a, const Field& b) {
    return zip(a, b, [](double x, double y) { return x - y; }, "subtract");
}

Field operator*(double s, const Field& a) {
    return map(a, [s](double x) { return s * x; });
}

Field add_scalar(const Field& a, double c) {
    return map(a, [c](double x) { return x + c; });
}

Field clip(const Field& a, double lo, double hi) {
    return map(a, [lo, hi](double x) { return std::clamp(x, lo, hi); });
}

Field circular_shift(const Field& f, long dr, long dc) {
    require_non_empty(f, "circular_shift");
    const long m = static_cast<long>(f.rows());
    const long n = static_cast<long>(f.cols());
    Field out(f.rows(), f.cols());
    for (long r = 0; r < m; ++r) {
        const long sr = ((r - dr) % m + m) % m;
        for (long c = 0; c < n; ++c) {
            const long sc = ((c - dc) % n + n) % n;
            out(r, c) = f(sr, sc);
        }
    }
    return out;
}

} // namespace faclkit
