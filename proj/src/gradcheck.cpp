#include "faclkit/gradcheck.hpp"

#include "faclkit/error.hpp"
#include "faclkit/io.hpp"
#include "faclkit/metrics.hpp"
#include "faclkit/parallel.hpp"
#include "faclkit/rng.hpp"
#include "faclkit/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace faclkit {

Field numeric_gradient(const std::function<double(const Field&)>& f, const Field& xhat,
                       double h) {
    Field grad(xhat.rows(), xhat.cols());
    Field probe = xhat;
    auto pv = probe.values();
    for (std::size_t k = 0; k < pv.size(); ++k) {
        const double orig = pv[k];
        pv[k] = orig + h;
        const double up = f(probe);
        pv[k] = orig - h;
        const double down = f(probe);
        pv[k] = orig;
        grad.values()[k] = (up - down) / (2.0 * h);
    }
    return grad;
}

void GradCheckConfig::validate() const {
    if (trials == 0) throw ValidationError("gradcheck: trials must be positive");
    if (sizes.empty()) throw ValidationError("gradcheck: no sizes given");
    for (auto s : sizes) {
        if (s == 0) throw ValidationError("gradcheck: sizes must be positive");
    }
    if (!(h > 0.0) || !(tolerance > 0.0) || !(grad_floor >= 0.0)) {
        throw ValidationError("gradcheck: h and tolerance must be positive");
    }
}

std::string GradCheckReport::summary() const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%s: %zu trials, %zu elements compared, max relative error %.3e (tol %.1e) %s",
                  std::string(to_string(config.loss)).c_str(), trials.size(), compared,
                  max_rel_error, config.tolerance, passed ? "PASS" : "FAIL");
    return buf;
}

std::pair<Field, Field> gradcheck_pair(std::uint64_t seed, std::size_t size, std::size_t trial) {
    Engine engine(derive_seed(seed, "gradcheck", (static_cast<std::uint64_t>(size) << 32) + trial));
    auto draw = [&] { return 0.05 + 0.9 * uniform01(engine); };
    Field x(size, size), xhat(size, size);
    for (double& v : x.values()) v = draw();
    auto xv = x.values();
    auto hv = xhat.values();
    for (std::size_t i = 0; i < hv.size(); ++i) {
        do {
            hv[i] = draw();
        } while (std::abs(hv[i] - xv[i]) < 1e-3);
    }
    return {x, xhat};
}

GradCheckReport grad_check(const GradCheckConfig& cfg) {
    cfg.validate();
    GradCheckReport report;
    report.config = cfg;
    const std::size_t per_size = cfg.trials;
    report.trials.resize(per_size * cfg.sizes.size());
    parallel_for(report.trials.size(), cfg.threads, [&](std::size_t job) {
        const std::size_t size = cfg.sizes[job / per_size];
        const std::size_t trial = job % per_size;
        const auto [x, xhat] = gradcheck_pair(cfg.seed, size, trial);
        const Field analytic = evaluate_loss(cfg.loss, x, xhat).gradient;
        const Field numeric = numeric_gradient(
            [&](const Field& p) { return evaluate_loss(cfg.loss, x, p).value; }, xhat, cfg.h);
        GradCheckTrial out{size, trial, 0.0, 0.0, 0};
        for (std::size_t k = 0; k < analytic.size(); ++k) {
            const double a = analytic.values()[k];
            const double n = numeric.values()[k];
            const double diff = std::abs(a - n);
            out.max_abs_error = std::max(out.max_abs_error, diff);
            if (std::abs(a) <= cfg.grad_floor) continue;
            out.max_rel_error = std::max(out.max_rel_error, diff / std::max(std::abs(a), std::abs(n)));
            ++out.compared;
        }
        report.trials[job] = out;
    });
    for (const auto& t : report.trials) {
        report.max_rel_error = std::max(report.max_rel_error, t.max_rel_error);
        report.compared += t.compared;
    }
    report.passed = report.max_rel_error <= cfg.tolerance;
    return report;
}

std::vector<ScaleCheckRow> fcl_scale_check(const Field& x, std::span<const double> betas,
                                           double h) {
    std::vector<ScaleCheckRow> rows;
    for (double beta : betas) {
        if (!(beta > 0.0)) throw ValidationError("fcl_scale_check: beta must be positive");
        const Field xhat = beta * x;
        const LossEval e = fcl(x, xhat);
        const Field numeric =
            numeric_gradient([&](const Field& p) { return fcl(x, p).value; }, xhat, h);
        ScaleCheckRow row{beta, e.value, 0.0, 0.0};
        for (double v : e.gradient.values()) row.analytic_inf = std::max(row.analytic_inf, std::abs(v));
        for (double v : numeric.values()) row.numeric_inf = std::max(row.numeric_inf, std::abs(v));
        rows.push_back(row);
    }
    return rows;
}

double fourier_l2_gradient_gap(std::size_t trials, std::span<const std::size_t> sizes,
                               std::uint64_t seed) {
    double gap = 0.0;
    for (std::size_t size : sizes) {
        for (std::size_t t = 0; t < trials; ++t) {
            const auto [x, xhat] = gradcheck_pair(seed, size, t);
            const Field a = fourier_l2(x, xhat).gradient;
            const Field b = mse(x, xhat).gradient;
            for (std::size_t k = 0; k < a.size(); ++k) {
                gap = std::max(gap, std::abs(a.values()[k] - b.values()[k]));
            }
        }
    }
    return gap;
}

namespace {

Field float_rounded(const Field& f) {
    Field out = f;
    for (double& v : out.values()) v = static_cast<double>(static_cast<float>(v));
    return out;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os) throw FormatError("cannot open '" + p.string() + "' for writing");
    return os;
}

} // namespace

void write_reference_dump(const std::filesystem::path& dir, std::uint64_t seed, std::size_t size,
                          std::size_t steps) {
    if (size < 16) throw ValidationError("reference dump: size must be at least 16");
    if (steps == 0) throw ValidationError("reference dump: steps must be positive");
    std::filesystem::create_directories(dir);
    auto [x0, xhat0] = gradcheck_pair(seed, size, 0);
    const Field x = float_rounded(x0);
    const Field xhat = float_rounded(xhat0);
    write_field(dir / "x.npy", x);
    write_field(dir / "xhat.npy", xhat);

    auto values = open_out(dir / "values.csv");
    values << "loss,value\n";
    for (LossKind k : {LossKind::MSE, LossKind::MAE, LossKind::FAL, LossKind::FCL}) {
        const LossEval e = evaluate_loss(k, x, xhat);
        write_field(dir / ("grad_" + std::string(to_string(k)) + ".npy"), e.gradient);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", e.value);
        values << to_string(k) << ',' << buf << '\n';
    }

    EvalConfig ecfg;
    MetricReport report(metric_keys(ecfg));
    report.add_frame({"s0f0", 0, 0, evaluate_frame(xhat, x, ecfg)});
    auto metrics = open_out(dir / "metrics.csv");
    report.write_csv(metrics);

    ScheduleConfig scfg;
    scfg.total_steps = steps;
    scfg.alpha = 0.2;
    scfg.seed = seed;
    auto trace = open_out(dir / "facl_trace.csv");
    write_which_trace(trace, scfg);
}

} // namespace faclkit
