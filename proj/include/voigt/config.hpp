#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "voigt/criterion.hpp"
#include "voigt/initial_conditions.hpp"
#include "voigt/integrate.hpp"

namespace voigt {

/// Parsed and validated configuration file (TOML syntax; unknown keys are
/// rejected). Sections: [grid], [ic], [voigt], [time], [run], [fit],
/// [output], plus the top-level `workers`.
struct AppConfig {
    int n = 32;
    InitialConditionSpec ic;
    std::vector<double> alphas;
    IntegratorConfig integrator;
    FitThresholds thresholds;
    int time_grid_points = 11;
    std::string output_dir;
    int workers = 1;
};

/// Loads and schema-validates a config file. Throws ConfigError on unknown
/// keys, type errors, or invariant violations.
AppConfig load_config(const std::filesystem::path& path);

/// Precedence: --output flag, then [output] dir, then $VOIGT_OUTPUT_DIR.
std::filesystem::path resolve_output_dir(const std::optional<std::string>& cli_value,
                                         const std::string& config_value);

SweepConfig to_sweep_config(const AppConfig& cfg);

}  // namespace voigt
