#include "voigt/config.hpp"

#include <cstdlib>

#include "CLI11.hpp"
#include "voigt/errors.hpp"

namespace voigt {

namespace {

void validate(const AppConfig& cfg, bool dt_given, bool adaptive_given) {
    if (cfg.n < 8 || cfg.n % 2 != 0) {
        throw ConfigError("grid.n must be even and >= 8, got " + std::to_string(cfg.n));
    }
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
        if (!(cfg.alphas[i] >= 0.0)) throw ConfigError("voigt.alphas must be >= 0");
        if (i > 0 && !(cfg.alphas[i] < cfg.alphas[i - 1])) {
            throw ConfigError("voigt.alphas must be strictly decreasing");
        }
    }
    if (dt_given && adaptive_given && cfg.integrator.adaptive) {
        throw ConfigError("time.dt and time.adaptive are alternatives; set one");
    }
    if (cfg.integrator.adaptive) {
        if (!(cfg.integrator.cfl > 0.0 && cfg.integrator.cfl <= 1.0)) {
            throw ConfigError("time.cfl must lie in (0, 1]");
        }
        if (!(cfg.integrator.dt_max > 0.0)) throw ConfigError("time.dt_max must be > 0");
    } else if (!(cfg.integrator.dt > 0.0)) {
        throw ConfigError("time.dt must be > 0 (or set time.adaptive = true)");
    }
    if (!(cfg.integrator.t_final > 0.0)) throw ConfigError("time.t_final must be > 0");
    if (cfg.integrator.sample_stride < 1) throw ConfigError("time.sample_stride must be >= 1");
    if (!(cfg.integrator.drift_abort_tol > 0.0)) {
        throw ConfigError("run.drift_abort_tol must be > 0");
    }
    if (!(cfg.thresholds.beta_threshold >= 0.0) || !(cfg.thresholds.slack >= 0.0) ||
        !(cfg.thresholds.r2_threshold >= 0.0 && cfg.thresholds.r2_threshold <= 1.0)) {
        throw ConfigError("fit thresholds out of range");
    }
    if (cfg.time_grid_points < 1) throw ConfigError("fit.time_grid_points must be >= 1");
    if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
    if (cfg.ic.shear_modes < 1) throw ConfigError("ic.modes must be >= 1");
    if (!(cfg.ic.k0 > 0.0)) throw ConfigError("ic.k0 must be > 0");
}

}  // namespace

AppConfig load_config(const std::filesystem::path& path) {
    AppConfig cfg;
    std::string ic_kind = "taylor-green";

    // Config sections map onto configurable subcommands of a throwaway schema
    // app; CLI11 then gives TOML parsing, typed conversion, and unknown-key
    // rejection in one place.
    CLI::App schema{"voigt config schema"};
    schema.set_config("--config")->required();
    schema.allow_config_extras(CLI::config_extras_mode::error);

    schema.add_option("--workers", cfg.workers);

    CLI::App* grid = schema.add_subcommand("grid")->configurable(true);
    grid->add_option("--n", cfg.n);

    CLI::App* ic = schema.add_subcommand("ic")->configurable(true);
    ic->add_option("--kind", ic_kind);
    ic->add_option("--seed", cfg.ic.seed);
    ic->add_option("--k0", cfg.ic.k0);
    ic->add_option("--modes", cfg.ic.shear_modes);
    ic->add_option("--A", cfg.ic.A);
    ic->add_option("--B", cfg.ic.B);
    ic->add_option("--C", cfg.ic.C);

    CLI::App* voigt_section = schema.add_subcommand("voigt")->configurable(true);
    voigt_section->add_option("--alphas", cfg.alphas);

    CLI::App* time = schema.add_subcommand("time")->configurable(true);
    CLI::Option* dt_opt = time->add_option("--dt", cfg.integrator.dt);
    CLI::Option* adaptive_opt = time->add_flag("--adaptive", cfg.integrator.adaptive);
    time->add_option("--cfl", cfg.integrator.cfl);
    time->add_option("--dt_max", cfg.integrator.dt_max);
    time->add_option("--t_final", cfg.integrator.t_final);
    time->add_option("--sample_stride", cfg.integrator.sample_stride);

    CLI::App* run = schema.add_subcommand("run")->configurable(true);
    run->add_option("--drift_abort_tol", cfg.integrator.drift_abort_tol);

    CLI::App* fit = schema.add_subcommand("fit")->configurable(true);
    fit->add_option("--beta_threshold", cfg.thresholds.beta_threshold);
    fit->add_option("--slack", cfg.thresholds.slack);
    fit->add_option("--r2_threshold", cfg.thresholds.r2_threshold);
    fit->add_option("--time_grid_points", cfg.time_grid_points);

    CLI::App* output = schema.add_subcommand("output")->configurable(true);
    output->add_option("--dir", cfg.output_dir);

    const std::string path_str = path.string();
    const char* argv[] = {"voigt-config", "--config", path_str.c_str()};
    try {
        schema.parse(3, argv);
    } catch (const CLI::Error& e) {
        throw ConfigError("config " + path_str + ": " + e.what());
    }

    cfg.ic.kind = ic_kind_from_string(ic_kind);
    validate(cfg, dt_opt->count() > 0, adaptive_opt->count() > 0);
    return cfg;
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& cli_value,
                                         const std::string& config_value) {
    if (cli_value && !cli_value->empty()) return *cli_value;
    if (!config_value.empty()) return config_value;
    if (const char* env = std::getenv("VOIGT_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    throw ConfigError("no output directory: pass --output, set output.dir in the config, "
                      "or export VOIGT_OUTPUT_DIR");
}

SweepConfig to_sweep_config(const AppConfig& cfg) {
    SweepConfig sweep;
    sweep.n = cfg.n;
    sweep.ic = cfg.ic;
    sweep.alphas = cfg.alphas;
    sweep.integrator = cfg.integrator;
    sweep.workers = cfg.workers;
    sweep.thresholds = cfg.thresholds;
    sweep.time_grid_points = cfg.time_grid_points;
    return sweep;
}

}  // namespace voigt
