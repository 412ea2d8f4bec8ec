#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "voigt/checkpoint.hpp"
#include "voigt/config.hpp"
#include "voigt/criterion.hpp"
#include "voigt/errors.hpp"
#include "voigt/run_io.hpp"
#include "voigt/spectral_ops.hpp"
#include "voigt/verify.hpp"

namespace fs = std::filesystem;
using namespace voigt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRunFailed = 2;
constexpr int kExitVerifyFailed = 3;

struct CommonArgs {
    std::string config_path;
    std::optional<std::string> output;
    std::optional<std::uint64_t> seed;
};

AppConfig load(const CommonArgs& args) {
    AppConfig cfg = load_config(args.config_path);
    if (args.seed) cfg.ic.seed = *args.seed;
    return cfg;
}

fs::path prepare_output_dir(const CommonArgs& args, const AppConfig& cfg) {
    const fs::path dir = resolve_output_dir(args.output, cfg.output_dir);
    fs::create_directories(dir);
    return dir;
}

std::string run_index_name(std::size_t idx) {
    const std::string num = std::to_string(idx);
    return "run_" + std::string(num.size() < 2 ? 2 - num.size() : 0, '0') + num;
}

void print_run_line(const RunSummary& s) {
    std::cout << "  alpha=" << format_double(s.alpha) << "  M=" << format_double(s.max_q)
              << "  t_argmax=" << format_double(s.t_argmax)
              << "  q(T)=" << format_double(s.q_final)
              << "  drift=" << format_double(s.drift) << "  " << to_string(s.status)
              << "\n";
}

int cmd_ic(const CommonArgs& args) {
    const AppConfig cfg = load(args);
    const fs::path dir = prepare_output_dir(args, cfg);
    const Grid grid(cfg.n);
    const SpectralVectorField u0 = generate_ic(cfg.ic, grid);

    SpectralTransform fft(grid);
    const fs::path path = dir / "ic.evck";
    write_checkpoint(path, make_checkpoint(u0, 0.0, 0.0, fft));
    std::cout << "wrote " << path.string() << "  kind=" << to_string(cfg.ic.kind)
              << "  n=" << cfg.n << "  energy=" << format_double(energy(u0))
              << "  divergence=" << format_double(divergence_residual(u0)) << "\n";
    return kExitOk;
}

int cmd_run(const CommonArgs& args, std::optional<double> alpha_flag) {
    AppConfig cfg = load(args);
    double alpha = 0.0;
    if (alpha_flag) {
        alpha = *alpha_flag;
    } else if (cfg.alphas.size() == 1) {
        alpha = cfg.alphas.front();
    } else {
        throw ConfigError("run: pass --alpha or configure exactly one entry in voigt.alphas");
    }
    if (alpha < 0.0) throw ConfigError("run: alpha must be >= 0");

    const fs::path dir = prepare_output_dir(args, cfg);
    const Grid grid(cfg.n);
    const SpectralVectorField u0 = generate_ic(cfg.ic, grid);
    const VoigtParams params(alpha, grid);

    SeriesWriter series(dir / "run.series.csv");
    RunSummary summary = integrate_summary(
        u0, params, cfg.integrator,
        [&series](const TimeSeriesRecord& r) { series.append(r); });
    summary.series_path = "run.series.csv";
    write_run_summary(dir / "run.summary.json", summary);

    print_run_line(summary);
    std::cout << "wrote " << (dir / "run.summary.json").string() << "\n";
    return summary.status == RunStatus::Valid ? kExitOk : kExitRunFailed;
}

int cmd_sweep(const CommonArgs& args, std::optional<int> workers_flag) {
    AppConfig cfg = load(args);
    if (workers_flag) cfg.workers = *workers_flag;
    const fs::path dir = prepare_output_dir(args, cfg);

    SweepResult sweep;
    try {
        sweep = run_sweep(to_sweep_config(cfg));
    } catch (const Error& e) {
        std::cerr << "sweep failed: " << e.what() << "\n";
        return kExitRunFailed;
    }

    for (std::size_t i = 0; i < sweep.runs.size(); ++i) {
        SweepRun& run = sweep.runs[i];
        const std::string base = run_index_name(i);
        run.summary.series_path = base + ".series.csv";
        SeriesWriter series(dir / run.summary.series_path);
        for (const TimeSeriesRecord& rec : run.series) series.append(rec);
        write_run_summary(dir / (base + ".summary.json"), run.summary);
    }

    const SweepAnalysis analysis = analyze_sweep(sweep);
    write_sweep_summary(dir / "sweep.summary.json", sweep, analysis);

    std::cout << "sweep of " << sweep.runs.size() << " runs (n=" << cfg.n
              << ", T=" << format_double(cfg.integrator.t_final) << "):\n";
    for (const SweepRun& run : sweep.runs) print_run_line(run.summary);
    const FitResult& fit = analysis.verdict.fit_new;
    std::cout << "new criterion fit: M ~ " << format_double(fit.c) << " * alpha^"
              << format_double(fit.beta) << " (r2=" << format_double(fit.r2) << ")\n"
              << "verdict: new=" << to_string(analysis.verdict.new_evidence)
              << " old=" << to_string(analysis.verdict.old_evidence)
              << "  ordering violations: " << analysis.comparison.violations << "\n"
              << "wrote " << (dir / "sweep.summary.json").string() << "\n";
    return kExitOk;
}

int cmd_analyze(const CommonArgs& args) {
    fs::path dir;
    if (args.output && !args.output->empty()) {
        dir = *args.output;
    } else if (!args.config_path.empty()) {
        const AppConfig cfg = load_config(args.config_path);
        dir = resolve_output_dir(args.output, cfg.output_dir);
    } else {
        dir = resolve_output_dir(std::nullopt, "");
    }

    const SweepResult sweep = read_sweep_artifacts(dir);
    const SweepAnalysis analysis = analyze_sweep(sweep);
    write_sweep_summary(dir / "analyze.summary.json", sweep, analysis);

    std::cout << "analyzed " << sweep.runs.size() << " runs from " << dir.string() << "\n"
              << "verdict: new=" << to_string(analysis.verdict.new_evidence)
              << " old=" << to_string(analysis.verdict.old_evidence)
              << "  ordering violations: " << analysis.comparison.violations << "\n"
              << "wrote " << (dir / "analyze.summary.json").string() << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite) {
    const std::vector<CheckResult> results = run_verify_suite(suite);
    bool all_ok = true;
    for (const CheckResult& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        std::cout << "\n";
        all_ok = all_ok && r.passed;
    }
    std::cout << (all_ok ? "verification passed" : "verification FAILED") << " ("
              << results.size() << " checks)\n";
    return all_ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral Euler-Voigt solver and blow-up-criterion harness"};
    app.require_subcommand(1);

    CommonArgs common;
    std::optional<double> alpha_flag;
    std::optional<int> workers_flag;
    std::string suite;

    auto add_common = [&common](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", common.config_path, "TOML config file");
        if (config_required) opt->required();
        sub->add_option("--output", common.output, "output directory");
        sub->add_option("--seed", common.seed, "override ic.seed");
    };

    CLI::App* ic = app.add_subcommand("ic", "write the initial-condition checkpoint");
    add_common(ic, true);
    CLI::App* run = app.add_subcommand("run", "integrate a single (alpha, config) run");
    add_common(run, true);
    run->add_option("--alpha", alpha_flag, "regularization length for this run");
    CLI::App* sweep = app.add_subcommand("sweep", "run the alpha ladder and fit the criteria");
    add_common(sweep, true);
    sweep->add_option("--workers", workers_flag, "concurrent runs");
    CLI::App* analyze =
        app.add_subcommand("analyze", "recompute fits and verdict from artifacts");
    add_common(analyze, false);
    CLI::App* verify = app.add_subcommand("verify", "run built-in property suites");
    verify->add_option("--suite", suite,
                       "spectral | conservation | shear | convergence (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ic->parsed()) return cmd_ic(common);
        if (run->parsed()) return cmd_run(common, alpha_flag);
        if (sweep->parsed()) return cmd_sweep(common, workers_flag);
        if (analyze->parsed()) return cmd_analyze(common);
        if (verify->parsed()) return cmd_verify(suite);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericsError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitRunFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
