#include "faclkit/transforms.hpp"

#include "faclkit/error.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace faclkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

long reflect101(long i, long n) {
    if (n == 1) return 0;
    const long period = 2 * (n - 1);
    i = ((i % period) + period) % period;
    return i < n ? i : period - i;
}

Field blur(const Field& x, const GaussianBlur& g) {
    const auto taps = gaussian_kernel(g.kernel, g.sigma);
    const long half = static_cast<long>(g.kernel / 2);
    const long rows = static_cast<long>(x.rows()), cols = static_cast<long>(x.cols());
    Field tmp(x.rows(), x.cols());
    for (long r = 0; r < rows; ++r) {
        for (long c = 0; c < cols; ++c) {
            double s = 0.0;
            for (long k = -half; k <= half; ++k) {
                s += taps[static_cast<std::size_t>(k + half)] *
                     x(static_cast<std::size_t>(r), static_cast<std::size_t>(reflect101(c + k, cols)));
            }
            tmp(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = s;
        }
    }
    Field out(x.rows(), x.cols());
    for (long r = 0; r < rows; ++r) {
        for (long c = 0; c < cols; ++c) {
            double s = 0.0;
            for (long k = -half; k <= half; ++k) {
                s += taps[static_cast<std::size_t>(k + half)] *
                     tmp(static_cast<std::size_t>(reflect101(r + k, rows)), static_cast<std::size_t>(c));
            }
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = s;
        }
    }
    return out;
}

Field translate(const Field& x, const Translate& t) {
    Field out(x.rows(), x.cols());
    const long rows = static_cast<long>(x.rows()), cols = static_cast<long>(x.cols());
    for (long r = 0; r < rows; ++r) {
        const long sr = r - t.dy;
        if (sr < 0 || sr >= rows) continue;
        for (long c = 0; c < cols; ++c) {
            const long sc = c - t.dx;
            if (sc < 0 || sc >= cols) continue;
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                x(static_cast<std::size_t>(sr), static_cast<std::size_t>(sc));
        }
    }
    return out;
}

double sample_bilinear(const Field& x, double r, double c) {
    const double r0 = std::floor(r), c0 = std::floor(c);
    const double fr = r - r0, fc = c - c0;
    auto at = [&](double rr, double cc) {
        if (rr < 0 || cc < 0 || rr >= static_cast<double>(x.rows()) ||
            cc >= static_cast<double>(x.cols())) {
            return 0.0;
        }
        return x(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc));
    };
    return (1 - fr) * (1 - fc) * at(r0, c0) + (1 - fr) * fc * at(r0, c0 + 1) +
           fr * (1 - fc) * at(r0 + 1, c0) + fr * fc * at(r0 + 1, c0 + 1);
}

Field rotate(const Field& x, const Rotate& rot) {
    const double theta = rot.degrees * std::numbers::pi / 180.0;
    const double cs = std::cos(theta), sn = std::sin(theta);
    const double cr = (static_cast<double>(x.rows()) - 1.0) / 2.0;
    const double cc = (static_cast<double>(x.cols()) - 1.0) / 2.0;
    Field out(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            // Image axes point right and down, so a positive angle in this
            // frame turns clockwise on screen. Sample the inverse rotation.
            const double xo = static_cast<double>(c) - cc;
            const double yo = static_cast<double>(r) - cr;
            const double xs = xo * cs + yo * sn;
            const double ys = -xo * sn + yo * cs;
            out(r, c) = sample_bilinear(x, ys + cr, xs + cc);
        }
    }
    return out;
}

} // namespace

std::vector<double> gaussian_kernel(std::size_t kernel, double sigma) {
    if (kernel == 0 || kernel % 2 == 0) throw ValidationError("blur kernel must be odd and positive");
    std::vector<double> taps(kernel, 0.0);
    const long half = static_cast<long>(kernel / 2);
    if (kernel == 1 || sigma <= 0.0) {
        taps[static_cast<std::size_t>(half)] = 1.0;
        return taps;
    }
    double sum = 0.0;
    for (long k = -half; k <= half; ++k) {
        const double v = std::exp(-static_cast<double>(k * k) / (2.0 * sigma * sigma));
        taps[static_cast<std::size_t>(k + half)] = v;
        sum += v;
    }
    for (auto& t : taps) t /= sum;
    return taps;
}

std::size_t kernel_for_sigma(double sigma) {
    if (sigma <= 0.0) return 1;
    return 2 * static_cast<std::size_t>(std::ceil(3.0 * sigma)) + 1;
}

std::string transform_name(const TransformSpec& spec) {
    return std::visit(
        overloaded{
            [](const Identity&) { return std::string("identity"); },
            [](const GaussianBlur& g) {
                return "blur(k=" + std::to_string(g.kernel) + fmt(",s=%g)", g.sigma);
            },
            [](const Translate& t) {
                return "translate(" + std::to_string(t.dx) + "," + std::to_string(t.dy) + ")";
            },
            [](const Rotate& r) { return fmt("rotate(%g)", r.degrees); },
            [](const Brighten& b) { return fmt("brighten(x%g,>%g)", b.factor, b.floor); },
            [](const Darken& d) { return fmt("darken(/%g,<%g)", d.factor, d.ceiling); },
        },
        spec);
}

void validate_transform(const TransformSpec& spec, std::size_t rows, std::size_t cols) {
    std::visit(overloaded{
                   [](const Identity&) {},
                   [](const GaussianBlur& g) {
                       if (g.kernel == 0 || g.kernel % 2 == 0) {
                           throw ValidationError("blur kernel must be odd and positive");
                       }
                       if (!(g.sigma >= 0.0) || !std::isfinite(g.sigma)) {
                           throw ValidationError("blur sigma must be finite and non-negative");
                       }
                   },
                   [&](const Translate& t) {
                       if (std::labs(t.dx) >= static_cast<long>(cols) ||
                           std::labs(t.dy) >= static_cast<long>(rows)) {
                           throw ValidationError("translation must be smaller than the field");
                       }
                   },
                   [](const Rotate& r) {
                       if (!std::isfinite(r.degrees)) throw ValidationError("rotation angle not finite");
                   },
                   [](const Brighten& b) {
                       if (!(b.factor > 0.0) || !std::isfinite(b.floor)) {
                           throw ValidationError("brighten needs a positive factor");
                       }
                   },
                   [](const Darken& d) {
                       if (!(d.factor > 0.0) || !std::isfinite(d.ceiling)) {
                           throw ValidationError("darken needs a positive factor");
                       }
                   },
               },
               spec);
}

Field apply_transform(const Field& x, const TransformSpec& spec) {
    require_non_empty(x, "apply_transform");
    validate_transform(spec, x.rows(), x.cols());
    Field out = std::visit(
        overloaded{
            [&](const Identity&) { return x; },
            [&](const GaussianBlur& g) { return blur(x, g); },
            [&](const Translate& t) { return translate(x, t); },
            [&](const Rotate& r) { return rotate(x, r); },
            [&](const Brighten& b) {
                Field o = x;
                for (double& v : o.values()) {
                    if (v > b.floor) v *= b.factor;
                }
                return o;
            },
            [&](const Darken& d) {
                Field o = x;
                for (double& v : o.values()) {
                    if (v < d.ceiling) v /= d.factor;
                }
                return o;
            },
        },
        spec);
    return clip(out, 0.0, 1.0);
}

std::vector<TransformSpec> standard_distortions() {
    return {GaussianBlur{27, 15.0}, Translate{4, 4}, Rotate{5.0}, Brighten{2.0, 0.5},
            Darken{2.0, 0.5}};
}

} // namespace faclkit
