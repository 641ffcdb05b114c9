#include "faclkit/spectral.hpp"

#include "faclkit/error.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <numbers>
#include <mutex>
#include <utility>

namespace faclkit {

SpectralField::SpectralField(std::size_t rows, std::size_t cols, Complex fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw DimensionError("spectral field dimensions must be positive");
}

SpectralField::SpectralField(std::size_t rows, std::size_t cols, std::vector<Complex> coefficients)
    : rows_(rows), cols_(cols), data_(std::move(coefficients)) {
    if (rows == 0 || cols == 0) throw DimensionError("spectral field dimensions must be positive");
    if (data_.size() != rows * cols) throw DimensionError("spectral coefficient count mismatch");
}

double SpectralField::energy() const noexcept {
    double e = 0.0;
    for (const auto& c : data_) e += std::norm(c);
    return e;
}

namespace {

// fftw_complex is layout-compatible with std::complex<double>.
static_assert(sizeof(fftw_complex) == sizeof(Complex));

struct AlignedBuffer {
    explicit AlignedBuffer(std::size_t n)
        : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))), size(n) {
        if (ptr == nullptr) throw std::bad_alloc();
    }
    ~AlignedBuffer() { fftw_free(ptr); }
    AlignedBuffer(const AlignedBuffer&) = delete;
    AlignedBuffer& operator=(const AlignedBuffer&) = delete;

    Complex* data() noexcept { return reinterpret_cast<Complex*>(ptr); }

    fftw_complex* ptr;
    std::size_t size;
};

// Plans are created once per (rows, cols, sign) under a lock; executing a
// plan on fresh arrays via fftw_execute_dft is thread-safe.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t rows, std::size_t cols, int sign) {
        std::lock_guard lock(mutex_);
        const Key key{rows, cols, sign};
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        AlignedBuffer in(rows * cols);
        AlignedBuffer out(rows * cols);
        fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), in.ptr,
                                          out.ptr, sign, FFTW_ESTIMATE);
        if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    struct Key {
        std::size_t rows, cols;
        int sign;
        auto operator<=>(const Key&) const = default;
    };
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

void run_dft(const Complex* src, Complex* dst, std::size_t rows, std::size_t cols, int sign) {
    const std::size_t n = rows * cols;
    AlignedBuffer in(n);
    AlignedBuffer out(n);
    std::copy(src, src + n, in.data());
    fftw_execute_dft(PlanCache::instance().get(rows, cols, sign), in.ptr, out.ptr);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const Complex* o = out.data();
    for (std::size_t i = 0; i < n; ++i) dst[i] = o[i] * scale;
}

} // namespace

SpectralField dft2(const Field& x) {
    require_non_empty(x, "dft2");
    if (!x.all_finite()) throw DimensionError("dft2: non-finite input");
    std::vector<Complex> src(x.values().begin(), x.values().end());
    SpectralField out(x.rows(), x.cols());
    run_dft(src.data(), out.values().data(), x.rows(), x.cols(), FFTW_FORWARD);
    return out;
}

SpectralField idft2_complex(const SpectralField& f) {
    if (f.size() == 0) throw DimensionError("idft2: empty spectrum");
    SpectralField out(f.rows(), f.cols());
    run_dft(f.values().data(), out.values().data(), f.rows(), f.cols(), FFTW_BACKWARD);
    return out;
}

Field idft2(const SpectralField& f) {
    const SpectralField full = idft2_complex(f);
    Field out(f.rows(), f.cols());
    auto ov = out.values();
    auto fv = full.values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = fv[i].real();
    return out;
}

Field amplitude(const SpectralField& f) {
    Field out(f.rows(), f.cols());
    auto ov = out.values();
    auto fv = f.values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = std::abs(fv[i]);
    return out;
}

Field phase(const SpectralField& f) {
    Field out(f.rows(), f.cols());
    auto ov = out.values();
    auto fv = f.values();
    for (std::size_t i = 0; i < ov.size(); ++i) {
        const double a = std::atan2(fv[i].imag(), fv[i].real());
        // -0.0 imaginary parts land on -pi; the range is (-pi, pi].
        ov[i] = a <= -std::numbers::pi ? std::numbers::pi : a;
    }
    return out;
}

} // namespace faclkit
