// faclkit command-line tool.
//
// Exit codes: 0 success, 2 usage or validation error, 3 data error (bad file,
// shape mismatch, degenerate input), 4 numerical failure (divergence or a
// failed gradient check).

#include "faclkit/error.hpp"
#include "faclkit/glyphs.hpp"
#include "faclkit/gradcheck.hpp"
#include "faclkit/io.hpp"
#include "faclkit/metrics.hpp"
#include "faclkit/optimizer.hpp"
#include "faclkit/rng.hpp"
#include "faclkit/schedule.hpp"
#include "faclkit/study.hpp"
#include "faclkit/synth.hpp"
#include "faclkit/transforms.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace faclkit;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kNumeric = 4 };

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("not a number: '" + s + "'");
    }
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(to_double(item));
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(s)) {
        const double v = to_double(item);
        if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
            throw ValidationError("expected a positive integer, got '" + item + "'");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::vector<double> parse_thresholds(const std::string& s) {
    if (s == "sevir" || s == "meteonet" || s == "hko7" || s == "mnist") return threshold_preset(s);
    auto out = parse_doubles(s);
    if (out.empty()) throw ValidationError("no thresholds given");
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::ofstream open_out(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(p);
    if (!os) throw FormatError("cannot open '" + p.string() + "' for writing");
    return os;
}

// ---------------------------------------------------------------------------
// Config files and manifests. Both are flat key=value text; keys are long
// option names without dashes. A manifest is a valid config file.

std::map<std::string, std::string> read_config(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot read config file '" + path.string() + "'");
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                                  ": expected key=value");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

/// Expands --config FILE into --key=value arguments for every key the command
/// line does not set itself, so explicit flags always win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string config_path;
    std::size_t config_at = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
            config_at = i;
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            config_at = i;
            break;
        }
    }
    if (config_path.empty()) return args;
    const auto entries = read_config(config_path);
    std::string subcommand;
    for (const auto& a : args) {
        if (!a.empty() && a[0] != '-') {
            subcommand = a;
            break;
        }
    }
    if (auto it = entries.find("subcommand"); it != entries.end() && it->second != subcommand) {
        throw ValidationError("config file is for '" + it->second + "', not '" + subcommand + "'");
    }
    std::vector<std::string> injected;
    for (const auto& [key, value] : entries) {
        if (key == "subcommand" || key == "tool_version" || key == "config") continue;
        if (has_flag(args, key)) continue;
        injected.push_back("--" + key + "=" + value);
    }
    args.insert(args.begin() + static_cast<long>(config_at), injected.begin(), injected.end());
    return args;
}

void write_manifest(const fs::path& path, const CLI::App& sub) {
    auto os = open_out(path);
    os << "# faclkit run manifest; replay with: faclkit " << sub.get_name()
       << " --config " << path.filename().string() << "\n";
    os << "subcommand=" << sub.get_name() << "\n";
    os << "tool_version=" << kVersion << "\n";
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help" || name == "config" || opt->get_lnames().empty()) {
            continue;
        }
        std::string value;
        if (opt->count() > 0) {
            const auto& results = opt->results();
            for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
        } else {
            value = opt->get_default_str();
        }
        if (!value.empty()) os << name << "=" << value << "\n";
    }
}

// ---------------------------------------------------------------------------
// Sequence input for eval: [count, length, H, W], [length, H, W] or [H, W].

std::vector<Sequence> read_sequence_set(const fs::path& path) {
    const NpyArray array = read_npy(path);
    const auto& s = array.shape;
    if (s.size() == 4) return read_sequences(path);
    if (s.size() == 3) return {Sequence(read_fields(path))};
    if (s.size() == 2) return {Sequence({read_field(path)})};
    throw FormatError(path.string() + ": expected a 2-D, 3-D or 4-D array");
}

std::string shape_of(const std::vector<Sequence>& seqs) {
    return std::to_string(seqs.size()) + "x" + std::to_string(seqs.front().length()) + "x" +
           std::to_string(seqs.front().rows()) + "x" + std::to_string(seqs.front().cols());
}

// ---------------------------------------------------------------------------

struct GenArgs {
    std::string out, mnist_path;
    std::size_t count = 100, seq_len = 20, digits = 2, canvas = 64;
    double noise_sigma = 1.0, min_speed = 2.0, max_speed = 5.0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

int run_gen(const GenArgs& a, const CLI::App& sub) {
    GenConfig cfg;
    cfg.canvas = a.canvas;
    cfg.digits = a.digits;
    cfg.length = a.seq_len;
    cfg.noise_sigma = a.noise_sigma;
    cfg.min_speed = a.min_speed;
    cfg.max_speed = a.max_speed;
    cfg.seed = a.seed;
    cfg.validate();
    if (a.count == 0) throw ValidationError("--count must be positive");
    const auto corpus = load_digit_corpus(a.mnist_path);
    const auto seqs = generate_dataset(cfg, corpus, a.count, a.threads);
    if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
    write_sequences(a.out, seqs);
    write_manifest(a.out + ".manifest", sub);
    std::cout << "wrote " << seqs.size() << " sequences of " << cfg.length << " frames ("
              << cfg.canvas << "x" << cfg.canvas << ") to " << a.out << "\n";
    return kOk;
}

struct GlyphArgs {
    std::string out;
    std::size_t count = 1000, size = 28;
    std::uint64_t seed = 0;
};

int run_glyphs(const GlyphArgs& a, const CLI::App& sub) {
    if (a.count == 0) throw ValidationError("--count must be positive");
    if (a.size < 8) throw ValidationError("--size must be at least 8");
    const auto images = glyph_corpus(a.count, a.seed, a.size);
    if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
    write_idx_images(a.out, images);
    write_manifest(a.out + ".manifest", sub);
    std::cout << "wrote " << images.size() << " digit images to " << a.out << "\n";
    return kOk;
}

struct EvalArgs {
    std::string pred, obs, out_csv;
    std::string metrics = "mae,mse,ssim,csi,fss,rhd";
    std::string thresholds = "sevir";
    std::string pools = "1,4,16";
    std::size_t window = 16, bins = 10;
    double eps = 1e-5;
    unsigned threads = 1;
};

int run_eval(const EvalArgs& a, const CLI::App& sub) {
    EvalConfig cfg;
    cfg.metrics = split_list(a.metrics);
    cfg.thresholds = parse_thresholds(a.thresholds);
    cfg.pools = parse_sizes(a.pools);
    cfg.window = a.window;
    cfg.bins = a.bins;
    cfg.eps = a.eps;
    cfg.threads = a.threads;
    cfg.validate();
    const auto preds = read_sequence_set(a.pred);
    const auto obs = read_sequence_set(a.obs);
    if (preds.size() != obs.size() || preds.front().length() != obs.front().length() ||
        preds.front().rows() != obs.front().rows() || preds.front().cols() != obs.front().cols()) {
        throw DimensionError("prediction shape " + shape_of(preds) +
                             " does not match observation shape " + shape_of(obs));
    }
    MetricReport report = evaluate_sequences(preds, obs, cfg);
    std::string ts;
    for (double t : cfg.thresholds) ts += (ts.empty() ? "" : " ") + fmt(t);
    report.metadata()["thresholds"] = ts;
    report.metadata()["window"] = std::to_string(cfg.window);
    if (!a.out_csv.empty()) {
        auto os = open_out(a.out_csv);
        report.write_csv(os);
        write_manifest(a.out_csv + ".manifest", sub);
    }
    for (const auto& [k, v] : report.metadata()) std::cout << "# " << k << ": " << v << "\n";
    std::cout << report.summary_table();
    return kOk;
}

struct ReconArgs {
    std::string target, out, loss = "facl", init = "constant", schedule = "cosine";
    int glyph = -1;
    std::size_t size = 32, steps = 2000;
    double lr = 4096.0, alpha = 0.2, init_scale = 1.0;
    std::uint64_t seed = 0;
};

int run_reconstruct(const ReconArgs& a, const CLI::App& sub) {
    Field target;
    if (!a.target.empty()) {
        target = read_field(a.target);
    } else {
        if (a.glyph < 0 || a.glyph > 9) throw ValidationError("--glyph must be a digit 0-9");
        target = center_on_canvas(render_glyph(a.glyph, derive_seed(a.seed, "target")), a.size,
                                  a.size);
    }
    OptConfig cfg;
    cfg.loss = parse_opt_loss(a.loss);
    cfg.steps = a.steps;
    cfg.learning_rate = a.lr;
    cfg.init = parse_init_mode(a.init);
    cfg.init_scale = a.init_scale;
    cfg.seed = a.seed;
    cfg.schedule.alpha = a.alpha;
    cfg.schedule.shape = parse_schedule_shape(a.schedule);
    cfg.schedule.seed = derive_seed(a.seed, "facl");
    const OptRun run = reconstruct(target, cfg);

    const fs::path dir(a.out);
    fs::create_directories(dir);
    {
        auto os = open_out(dir / "trace.csv");
        write_trace_csv(os, run);
    }
    write_field(dir / "final.npy", run.final_field);
    write_field(dir / "target.npy", target);
    write_manifest(dir / "run.manifest", sub);

    const Field& f = run.final_field;
    // SSIM needs a field at least as large as its window, Pearson a non-constant one.
    const auto maybe = [](auto metric) {
        try {
            return fmt(metric());
        } catch (const Error&) {
            return std::string("n/a");
        }
    };
    std::cout << "loss " << to_string(cfg.loss) << ", " << cfg.steps << " steps, lr " << fmt(a.lr)
              << "\n"
              << "final  mse " << fmt(mean_squared_error(f, target)) << "  fal "
              << fmt(fal(target, f).value) << "  fcl " << fmt(fcl(target, f).value) << "  ssim "
              << maybe([&] { return ssim(f, target); }) << "  pearson "
              << maybe([&] { return pearson(f, target); }) << "\n"
              << "wrote " << (dir / "trace.csv").string() << ", " << (dir / "final.npy").string()
              << "\n";
    return kOk;
}

struct GradArgs {
    std::string loss = "all", sizes = "8,16", dump_dir;
    std::size_t trials = 50, dump_size = 32, dump_steps = 1000;
    double tol = 1e-4, h = 1e-5;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

int run_gradcheck(const GradArgs& a, const CLI::App& sub) {
    std::vector<LossKind> kinds;
    if (a.loss == "all") {
        kinds = {LossKind::FAL, LossKind::FCL, LossKind::MSE, LossKind::MAE, LossKind::FourierL2};
    } else {
        kinds = {parse_loss_kind(a.loss)};
    }
    const auto sizes = parse_sizes(a.sizes);
    bool ok = true;
    for (LossKind k : kinds) {
        GradCheckConfig cfg;
        cfg.loss = k;
        cfg.trials = a.trials;
        cfg.sizes = sizes;
        cfg.tolerance = a.tol;
        cfg.h = a.h;
        cfg.seed = a.seed;
        cfg.threads = a.threads;
        const auto report = grad_check(cfg);
        std::cout << report.summary() << "\n";
        ok = ok && report.passed;
    }
    if (a.loss == "all") {
        const double gap = fourier_l2_gradient_gap(a.trials, sizes, a.seed);
        const bool gap_ok = gap <= 1e-9;
        std::cout << "fourier_l2 vs mse gradient: max |diff| " << fmt(gap) << " (tol 1e-9) "
                  << (gap_ok ? "PASS" : "FAIL") << "\n";
        const auto [x, unused] = gradcheck_pair(a.seed, sizes.front(), 0);
        const double betas[] = {0.1, 0.5, 2.0, 10.0};
        double worst = 0.0;
        for (const auto& row : fcl_scale_check(x, betas, a.h)) {
            worst = std::max({worst, row.value, row.analytic_inf, row.numeric_inf});
        }
        const bool scale_ok = worst <= 1e-9;
        std::cout << "fcl at xhat = beta x: max of value and gradient norms " << fmt(worst)
                  << " (tol 1e-9) " << (scale_ok ? "PASS" : "FAIL") << "\n";
        ok = ok && gap_ok && scale_ok;
    }
    if (!a.dump_dir.empty()) {
        write_reference_dump(a.dump_dir, a.seed, a.dump_size, a.dump_steps);
        write_manifest(fs::path(a.dump_dir) / "run.manifest", sub);
        std::cout << "wrote reference fixtures to " << a.dump_dir << "\n";
    }
    return ok ? kOk : kNumeric;
}

struct StudyArgs {
    std::string mode = "fal-curves", out_csv;
    std::size_t size = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

int run_study(const StudyArgs& a, const CLI::App& sub) {
    if (a.mode == "fal-curves") {
        const std::size_t size = a.size ? a.size : 64;
        const Field x = center_on_canvas(
            render_glyph(static_cast<int>(a.seed % 10), derive_seed(a.seed, "study-digit")), size,
            size);
        std::vector<double> sigmas, shifts;
        for (int i = 0; i <= 16; ++i) sigmas.push_back(0.5 * i);
        for (int i = 0; i <= 16; ++i) shifts.push_back(i);
        auto os = open_out(a.out_csv);
        write_fal_curve_header(os);
        const auto blur = fal_curve_sweep(x, SweepMode::Blur, sigmas, a.threads);
        const auto shift = fal_curve_sweep(x, SweepMode::Translate, shifts, a.threads);
        write_fal_curve_rows(os, SweepMode::Blur, blur);
        write_fal_curve_rows(os, SweepMode::Translate, shift);
        std::printf("%-10s %6s %12s %12s %12s\n", "mode", "param", "l2", "|cross diff|", "fal");
        for (const auto* rows : {&blur, &shift}) {
            const char* m = rows == &blur ? "blur" : "translate";
            for (const auto& r : *rows) {
                std::printf("%-10s %6.2f %12.4e %12.4e %12.4e\n", m, r.param, r.l2,
                            r.abs_cross_diff, r.fal);
            }
        }
    } else if (a.mode == "transform-table") {
        const std::size_t size = a.size ? a.size : 128;
        const Field x = bimodal_field(size, a.seed);
        std::vector<TransformSpec> specs{Identity{}};
        for (auto& s : standard_distortions()) specs.push_back(s);
        EvalConfig cfg = transform_table_config();
        cfg.threads = a.threads;
        const MetricReport report = metric_transform_table(x, specs, cfg);
        auto os = open_out(a.out_csv);
        report.write_csv(os);
        std::printf("%-24s", "transform");
        for (const auto& k : report.keys()) std::printf(" %14s", k.label().substr(0, 14).c_str());
        std::printf("\n");
        for (std::size_t i = 0; i < report.frames().size(); ++i) {
            std::printf("%-24s", report.frames()[i].label.c_str());
            for (const auto& k : report.keys()) {
                const auto v = report.value(i, k);
                std::printf(" %14s", v ? fmt(*v).c_str() : "skip");
            }
            std::printf("\n");
        }
    } else {
        throw ValidationError("--mode must be fal-curves or transform-table");
    }
    write_manifest(a.out_csv + ".manifest", sub);
    return kOk;
}

struct SampleArgs {
    std::string out_csv, schedule = "cosine";
    std::size_t steps = 1000;
    double alpha = 0.2;
    std::uint64_t seed = 0;
};

int run_sample(const SampleArgs& a, const CLI::App& sub) {
    ScheduleConfig cfg;
    cfg.total_steps = a.steps;
    cfg.alpha = a.alpha;
    cfg.seed = a.seed;
    cfg.shape = parse_schedule_shape(a.schedule);
    cfg.validate();
    auto os = open_out(a.out_csv);
    write_which_trace(os, cfg);
    write_manifest(a.out_csv + ".manifest", sub);
    std::cout << "wrote " << cfg.total_steps << " draws to " << a.out_csv << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier amplitude and correlation losses, forecast metrics and synthetic data"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    app.option_defaults()->always_capture_default();
    // Consumed before parsing; declared so it shows in help and is accepted.
    auto add_config = [](CLI::App* s) {
        s->add_option("--config", "flat key=value file; explicit flags take precedence");
    };

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate Stochastic Moving-MNIST sequences");
    gen_cmd->add_option("--out", gen.out, "output NPY [count, length, H, W]")->required();
    gen_cmd->add_option("--mnist-path", gen.mnist_path, "IDX digit image file")->required();
    gen_cmd->add_option("--count", gen.count, "number of sequences");
    gen_cmd->add_option("--seq-len", gen.seq_len, "frames per sequence");
    gen_cmd->add_option("--digits", gen.digits, "digits per sequence");
    gen_cmd->add_option("--canvas", gen.canvas, "canvas side in pixels");
    gen_cmd->add_option("--noise-sigma", gen.noise_sigma, "velocity noise std");
    gen_cmd->add_option("--min-speed", gen.min_speed, "minimum base speed");
    gen_cmd->add_option("--max-speed", gen.max_speed, "maximum base speed");
    gen_cmd->add_option("--seed", gen.seed, "master seed");
    gen_cmd->add_option("--threads", gen.threads, "worker threads");
    add_config(gen_cmd);

    GlyphArgs glyphs;
    auto* glyph_cmd =
        app.add_subcommand("glyphs", "write a procedural digit corpus as an IDX image file");
    glyph_cmd->add_option("--out", glyphs.out, "output IDX file")->required();
    glyph_cmd->add_option("--count", glyphs.count, "number of images");
    glyph_cmd->add_option("--size", glyphs.size, "image side in pixels");
    glyph_cmd->add_option("--seed", glyphs.seed, "master seed");
    add_config(glyph_cmd);

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate predictions against observations");
    eval_cmd->add_option("--pred", ev.pred, "prediction NPY")->required();
    eval_cmd->add_option("--obs", ev.obs, "observation NPY")->required();
    eval_cmd->add_option("--metrics", ev.metrics, "comma list of mae,mse,ssim,csi,fss,rhd");
    eval_cmd->add_option("--thresholds", ev.thresholds,
                         "comma list in [0,1] or preset sevir, meteonet, hko7, mnist");
    eval_cmd->add_option("--pool", ev.pools, "comma list of CSI pool sizes");
    eval_cmd->add_option("--window", ev.window, "FSS and RHD patch size");
    eval_cmd->add_option("--bins", ev.bins, "RHD histogram bins");
    eval_cmd->add_option("--eps", ev.eps, "RHD intensity cutoff");
    eval_cmd->add_option("--out-csv", ev.out_csv, "per-frame metric CSV");
    eval_cmd->add_option("--threads", ev.threads, "worker threads");
    add_config(eval_cmd);

    ReconArgs rc;
    auto* rec_cmd =
        app.add_subcommand("reconstruct", "fit a field to a target by gradient descent");
    auto* target_opt = rec_cmd->add_option("--target", rc.target, "target field NPY");
    auto* glyph_opt = rec_cmd->add_option("--glyph", rc.glyph, "use a generated digit as target");
    target_opt->excludes(glyph_opt);
    rec_cmd->add_option("--size", rc.size, "canvas side for --glyph targets");
    rec_cmd->add_option("--loss", rc.loss, "mse, fal, fcl or facl");
    rec_cmd->add_option("--steps", rc.steps, "descent steps");
    rec_cmd->add_option("--lr", rc.lr, "learning rate on the logits");
    rec_cmd->add_option("--alpha", rc.alpha, "FACL tail fraction");
    rec_cmd->add_option("--schedule", rc.schedule, "FACL threshold shape: cosine or linear");
    rec_cmd->add_option("--init", rc.init, "constant or noise");
    rec_cmd->add_option("--init-scale", rc.init_scale, "logit range for noise init");
    rec_cmd->add_option("--seed", rc.seed, "master seed");
    rec_cmd->add_option("--out", rc.out, "output directory")->required();
    add_config(rec_cmd);

    GradArgs gc;
    auto* grad_cmd = app.add_subcommand("gradcheck", "compare analytic and numeric gradients");
    grad_cmd->add_option("--loss", gc.loss, "fal, fcl, mse, mae, fourier_l2 or all");
    grad_cmd->add_option("--size", gc.sizes, "comma list of field sizes");
    grad_cmd->add_option("--trials", gc.trials, "random pairs per size");
    grad_cmd->add_option("--tol", gc.tol, "relative error tolerance");
    grad_cmd->add_option("--step", gc.h, "finite-difference step");
    grad_cmd->add_option("--seed", gc.seed, "master seed");
    grad_cmd->add_option("--threads", gc.threads, "worker threads");
    grad_cmd->add_option("--dump-dir", gc.dump_dir, "also write reference fixtures here");
    grad_cmd->add_option("--dump-size", gc.dump_size, "fixture field side");
    grad_cmd->add_option("--dump-steps", gc.dump_steps, "FACL draws in the fixture trace");
    add_config(grad_cmd);

    StudyArgs st;
    auto* study_cmd = app.add_subcommand("study", "FAL decomposition sweeps and transform tables");
    study_cmd->add_option("--mode", st.mode, "fal-curves or transform-table");
    study_cmd->add_option("--out-csv", st.out_csv, "output CSV")->required();
    study_cmd->add_option("--size", st.size, "field side (default 64 or 128)");
    study_cmd->add_option("--seed", st.seed, "master seed");
    study_cmd->add_option("--threads", st.threads, "worker threads");
    add_config(study_cmd);

    SampleArgs sm;
    auto* sample_cmd = app.add_subcommand("sample", "write the FACL term selection sequence");
    sample_cmd->add_option("--out-csv", sm.out_csv, "output CSV")->required();
    sample_cmd->add_option("--steps", sm.steps, "total steps T");
    sample_cmd->add_option("--alpha", sm.alpha, "tail fraction");
    sample_cmd->add_option("--schedule", sm.schedule, "cosine or linear");
    sample_cmd->add_option("--seed", sm.seed, "sampler seed (used directly)");
    add_config(sample_cmd);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (gen_cmd->parsed()) return run_gen(gen, *gen_cmd);
        if (glyph_cmd->parsed()) return run_glyphs(glyphs, *glyph_cmd);
        if (eval_cmd->parsed()) return run_eval(ev, *eval_cmd);
        if (rec_cmd->parsed()) {
            if (rc.target.empty() && rc.glyph < 0) {
                throw ValidationError("reconstruct needs --target or --glyph");
            }
            return run_reconstruct(rc, *rec_cmd);
        }
        if (grad_cmd->parsed()) return run_gradcheck(gc, *grad_cmd);
        if (study_cmd->parsed()) return run_study(st, *study_cmd);
        if (sample_cmd->parsed()) return run_sample(sm, *sample_cmd);
        return kUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const Error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
