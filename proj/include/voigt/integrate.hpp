#pragma once

#include <functional>
#include <string>

#include "voigt/diagnostics.hpp"
#include "voigt/dynamics.hpp"
#include "voigt/field.hpp"
#include "voigt/voigt_params.hpp"

namespace voigt {

/// Time-stepping controls for one run.
struct IntegratorConfig {
    double dt = 0.0;       // fixed step; ignored when adaptive
    bool adaptive = false; // CFL-scaled steps instead of fixed dt
    double cfl = 0.5;
    double dt_max = 0.01;
    double t_final = 1.0;
    int sample_stride = 1;          // accepted steps between series rows
    double drift_abort_tol = 1e-6;  // relative alpha-energy drift abort threshold
};

enum class RunStatus { Valid, Invalid, Diverged };

const char* to_string(RunStatus s);
RunStatus run_status_from_string(const std::string& s);

/// Evolving state of one integration.
struct RunState {
    SpectralVectorField u;
    double t = 0.0;
    long step_count = 0;
    double max_q = 0.0;       // running sup of q = alpha ||grad u||, monotone
    double t_argmax = 0.0;
    double alpha_energy0 = 0.0;
};

/// Final-time outputs of one (alpha, T) run.
struct RunSummary {
    double alpha = 0.0;
    int n = 0;
    double t_final = 0.0;
    double max_q = 0.0;    // M(alpha, T) = sup_t q
    double t_argmax = 0.0;
    double q_final = 0.0;
    double drift = 0.0;    // max_t |E_a(t) - E_a(0)| / E_a(0)
    double tail_fraction_max = 0.0;
    long steps = 0;
    RunStatus status = RunStatus::Valid;
    std::string series_path;  // relative to the output dir; set by the caller
};

using DiagnosticsSink = std::function<void(const TimeSeriesRecord&)>;

/// Classical RK4 update of the Voigt state. The output is re-projected and
/// mean-zeroed to suppress roundoff drift of the divergence constraint, and
/// checked for finiteness (a non-finite state signals blow-up of the
/// discretization, not of the PDE).
SpectralVectorField rk4_step(const SpectralVectorField& u, double dt, const VoigtParams& p,
                             DynamicsWorkspace& ws);

/// CFL step size cfl * dx / max|u| with dx = 1/n, capped at dt_max;
/// returns dt_max for a zero field.
double cfl_dt(const SpectralVectorField& u, double cfl, double dt_max,
              DynamicsWorkspace& ws);

struct IntegrationResult {
    RunSummary summary;
    SpectralVectorField u_final;
};

/// Advances u0 to t_final, truncating the last step to land exactly on it.
/// q is evaluated on every accepted step for the running maximum; full
/// records go to the sink every sample_stride steps (plus the initial and
/// final states). Exceeding drift_abort_tol flags the run INVALID, a
/// non-finite state flags it DIVERGED; both stop the run early.
IntegrationResult integrate(const SpectralVectorField& u0, const VoigtParams& p,
                            const IntegratorConfig& cfg, const DiagnosticsSink& sink);

RunSummary integrate_summary(const SpectralVectorField& u0, const VoigtParams& p,
                             const IntegratorConfig& cfg, const DiagnosticsSink& sink);

}  // namespace voigt
