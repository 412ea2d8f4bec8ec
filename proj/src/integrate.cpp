#include "voigt/integrate.hpp"

#include <cmath>
#include <complex>
#include <utility>

#include "voigt/errors.hpp"
#include "voigt/spectral_ops.hpp"

namespace voigt {

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Valid: return "VALID";
        case RunStatus::Invalid: return "INVALID";
        case RunStatus::Diverged: return "DIVERGED";
    }
    return "UNKNOWN";
}

RunStatus run_status_from_string(const std::string& s) {
    if (s == "VALID") return RunStatus::Valid;
    if (s == "INVALID") return RunStatus::Invalid;
    if (s == "DIVERGED") return RunStatus::Diverged;
    throw IoError("unknown run status: " + s);
}

namespace {

bool finite(const SpectralVectorField& u) {
    const std::size_t size = u.grid().size();
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < size; ++i) {
            const auto& v = u[c][i];
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
    }
    return true;
}

}  // namespace

SpectralVectorField rk4_step(const SpectralVectorField& u, double dt, const VoigtParams& p,
                             DynamicsWorkspace& ws) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");

    const SpectralVectorField k1 = voigt_rhs(u, p, ws);
    const SpectralVectorField k2 = voigt_rhs(scaled_sum(u, 0.5 * dt, k1), p, ws);
    const SpectralVectorField k3 = voigt_rhs(scaled_sum(u, 0.5 * dt, k2), p, ws);
    const SpectralVectorField k4 = voigt_rhs(scaled_sum(u, dt, k3), p, ws);

    SpectralVectorField out = u;
    add_scaled(out, dt / 6.0, k1);
    add_scaled(out, dt / 3.0, k2);
    add_scaled(out, dt / 3.0, k3);
    add_scaled(out, dt / 6.0, k4);

    out = leray_project(std::move(out));
    zero_mean(out);
    if (!finite(out)) {
        throw NumericsError("rk4_step: non-finite state after step (numerical blow-up "
                            "of the discretization)");
    }
    return out;
}

double cfl_dt(const SpectralVectorField& u, double cfl, double dt_max,
              DynamicsWorkspace& ws) {
    const RealVectorField u_phys = ws.transform().inverse(u);
    double umax = 0.0;
    const std::size_t size = u.grid().size();
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < size; ++i) {
            umax = std::max(umax, std::abs(u_phys[c][i]));
        }
    }
    if (umax == 0.0) return dt_max;
    const double dx = 1.0 / u.grid().n();
    return std::min(cfl * dx / umax, dt_max);
}

IntegrationResult integrate(const SpectralVectorField& u0, const VoigtParams& p,
                            const IntegratorConfig& cfg, const DiagnosticsSink& sink) {
    if (!(cfg.t_final > 0.0)) throw std::invalid_argument("integrate: t_final must be positive");
    if (cfg.sample_stride < 1) throw std::invalid_argument("integrate: sample_stride >= 1");
    if (!cfg.adaptive && !(cfg.dt > 0.0)) {
        throw std::invalid_argument("integrate: fixed dt must be positive");
    }
    if (cfg.adaptive && !(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) {
        throw std::invalid_argument("integrate: CFL number must lie in (0, 1]");
    }

    const Grid& g = u0.grid();
    DynamicsWorkspace ws(g);

    RunState state{u0, 0.0, 0, 0.0, 0.0, 0.0};
    state.alpha_energy0 = alpha_energy(state.u, p);

    RunSummary summary;
    summary.alpha = p.alpha();
    summary.n = g.n();
    summary.t_final = cfg.t_final;

    const double energy_floor = 1e-300;

    TimeSeriesRecord rec = sample_diagnostics(state.u, p, 0.0, 0.0);
    state.max_q = rec.q;
    state.t_argmax = 0.0;
    summary.tail_fraction_max = spectrum_tail_fraction(energy_spectrum(state.u));
    if (sink) sink(rec);

    long steps_since_sample = 0;
    while (state.t < cfg.t_final) {
        double dt = cfg.adaptive ? cfl_dt(state.u, cfg.cfl, cfg.dt_max, ws) : cfg.dt;
        bool last = false;
        if (state.t + dt >= cfg.t_final) {
            dt = cfg.t_final - state.t;  // truncate to land exactly on t_final
            last = true;
        }

        try {
            state.u = rk4_step(state.u, dt, p, ws);
        } catch (const NumericsError&) {
            summary.status = RunStatus::Diverged;
            break;
        }
        state.t = last ? cfg.t_final : state.t + dt;
        ++state.step_count;
        ++steps_since_sample;

        rec = sample_diagnostics(state.u, p, state.t, dt);
        if (!std::isfinite(rec.alpha_energy) || !std::isfinite(rec.q)) {
            summary.status = RunStatus::Diverged;
            break;
        }
        // q^2 = alpha^2 ||grad u||^2 can never exceed the alpha-energy; a
        // violation beyond reduction roundoff is an internal inconsistency.
        if (rec.q * rec.q > rec.alpha_energy * (1.0 + 1e-12) + 1e-300) {
            throw Error("integrate: internal inconsistency, q^2 > alpha-energy");
        }
        if (rec.q > state.max_q) {
            state.max_q = rec.q;
            state.t_argmax = state.t;
        }
        const double drift = std::abs(rec.alpha_energy - state.alpha_energy0) /
                             std::max(state.alpha_energy0, energy_floor);
        summary.drift = std::max(summary.drift, drift);
        summary.tail_fraction_max = std::max(
            summary.tail_fraction_max, spectrum_tail_fraction(energy_spectrum(state.u)));

        if (drift > cfg.drift_abort_tol) {
            summary.status = RunStatus::Invalid;
            if (sink) sink(rec);
            break;
        }
        if (sink && (steps_since_sample >= cfg.sample_stride || last)) {
            sink(rec);
            steps_since_sample = 0;
        }
    }

    summary.max_q = state.max_q;
    summary.t_argmax = state.t_argmax;
    summary.q_final = rec.q;
    summary.steps = state.step_count;
    return IntegrationResult{std::move(summary), std::move(state.u)};
}

RunSummary integrate_summary(const SpectralVectorField& u0, const VoigtParams& p,
                             const IntegratorConfig& cfg, const DiagnosticsSink& sink) {
    return integrate(u0, p, cfg, sink).summary;
}

}  // namespace voigt
