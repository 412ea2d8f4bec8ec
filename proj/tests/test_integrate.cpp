#include <cmath>
#include <vector>

#include "doctest.h"
#include "voigt/initial_conditions.hpp"
#include "voigt/integrate.hpp"
#include "voigt/spectral_ops.hpp"

using namespace voigt;

namespace {

SpectralVectorField make_ic(const Grid& g, IcKind kind, std::uint64_t seed = 0) {
    InitialConditionSpec spec;
    spec.kind = kind;
    spec.seed = seed;
    return generate_ic(spec, g);
}

}  // namespace

TEST_CASE("rk4 leaves the shear steady state untouched") {
    const Grid g(16);
    DynamicsWorkspace ws(g);
    const SpectralVectorField u = make_ic(g, IcKind::Shear);
    const VoigtParams p(0.1, g);
    const SpectralVectorField next = rk4_step(u, 0.05, p, ws);
    CHECK(l2_norm(next - u) <= 1e-13);
}

TEST_CASE("rk4 maps zero to zero and rejects bad dt") {
    const Grid g(8);
    DynamicsWorkspace ws(g);
    const VoigtParams p(0.1, g);
    const SpectralVectorField zero(g);
    CHECK(l2_norm(rk4_step(zero, 0.1, p, ws)) == 0.0);
    CHECK_THROWS_AS(rk4_step(zero, 0.0, p, ws), std::invalid_argument);
}

TEST_CASE("rk4 one-step error contracts ~16x when dt halves") {
    const Grid g(16);
    DynamicsWorkspace ws(g);
    const SpectralVectorField u0 = make_ic(g, IcKind::TaylorGreen);
    const VoigtParams p(0.1, g);
    const double h = 0.05;

    const SpectralVectorField coarse = rk4_step(u0, h, p, ws);
    SpectralVectorField half = rk4_step(u0, 0.5 * h, p, ws);
    half = rk4_step(half, 0.5 * h, p, ws);
    SpectralVectorField ref = u0;
    for (int i = 0; i < 10; ++i) ref = rk4_step(ref, 0.1 * h, p, ws);

    const double ratio = l2_norm(coarse - ref) / l2_norm(half - ref);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("cfl_dt: zero field, unit-amplitude field, resolution scaling") {
    const Grid g32(32);
    DynamicsWorkspace ws32(g32);
    CHECK(cfl_dt(SpectralVectorField(g32), 0.5, 0.25, ws32) == 0.25);

    // u = (sin 2 pi x1, 0, 0): max |u| on the grid is exactly 1
    SpectralVectorField u(g32);
    u[0].mode(1, 0, 0) = {0.0, -0.5};
    u[0].mode(-1, 0, 0) = {0.0, 0.5};
    const double dt32 = cfl_dt(u, 0.5, 1.0, ws32);
    CHECK(dt32 == doctest::Approx(0.5 / 32.0).epsilon(1e-12));

    const Grid g64(64);
    DynamicsWorkspace ws64(g64);
    SpectralVectorField u64(g64);
    u64[0].mode(1, 0, 0) = {0.0, -0.5};
    u64[0].mode(-1, 0, 0) = {0.0, 0.5};
    const double dt64 = cfl_dt(u64, 0.5, 1.0, ws64);
    CHECK(dt64 == doctest::Approx(0.5 * dt32).epsilon(1e-12));

    CHECK(cfl_dt(u, 0.5, 0.001, ws32) == 0.001);  // dt_max cap
}

TEST_CASE("integrate: shear flow is an exact steady state of every alpha") {
    const Grid g(16);
    const SpectralVectorField u0 = make_ic(g, IcKind::Shear);
    const double grad_norm = kTwoPi / std::sqrt(2.0);

    for (double alpha : {0.0, 0.2}) {
        IntegratorConfig cfg;
        cfg.dt = 0.05;
        cfg.t_final = 1.0;
        const VoigtParams p(alpha, g);
        std::vector<TimeSeriesRecord> series;
        const IntegrationResult r = integrate(
            u0, p, cfg, [&series](const TimeSeriesRecord& rec) { series.push_back(rec); });
        CHECK(r.summary.status == RunStatus::Valid);
        CHECK(r.summary.max_q == doctest::Approx(alpha * grad_norm).epsilon(1e-12));
        CHECK(r.summary.drift <= 1e-13);
        CHECK(l2_norm(r.u_final - u0) <= 1e-13);
        CHECK(series.front().t == 0.0);
        CHECK(series.back().t == 1.0);
    }
}

TEST_CASE("integrate: zero initial data stays zero") {
    const Grid g(8);
    IntegratorConfig cfg;
    cfg.dt = 0.1;
    cfg.t_final = 0.5;
    const VoigtParams p(0.1, g);
    const RunSummary s = integrate_summary(SpectralVectorField(g), p, cfg, nullptr);
    CHECK(s.status == RunStatus::Valid);
    CHECK(s.max_q == 0.0);
    CHECK(s.drift == 0.0);
}

TEST_CASE("integrate: Taylor-Green conserves the alpha-energy") {
    const Grid g(16);
    const SpectralVectorField u0 = make_ic(g, IcKind::TaylorGreen);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 0.05;
    const VoigtParams p(0.1, g);
    const RunSummary s = integrate_summary(u0, p, cfg, nullptr);
    CHECK(s.status == RunStatus::Valid);
    CHECK(s.drift <= 1e-10);
}

TEST_CASE("integrate: final step lands exactly on t_final") {
    const Grid g(8);
    const SpectralVectorField u0 = make_ic(g, IcKind::TaylorGreen);
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 0.105;
    const VoigtParams p(0.1, g);
    std::vector<TimeSeriesRecord> series;
    const RunSummary s = integrate_summary(
        u0, p, cfg, [&series](const TimeSeriesRecord& rec) { series.push_back(rec); });
    CHECK(s.steps == 11);
    CHECK(series.back().t == 0.105);
    CHECK(series.back().dt_used == doctest::Approx(0.005).epsilon(1e-12));
    for (std::size_t i = 1; i < series.size(); ++i) CHECK(series[i].t > series[i - 1].t);
}

TEST_CASE("integrate: running max is monotone and dominates q(T)") {
    const Grid g(16);
    const SpectralVectorField u0 = make_ic(g, IcKind::RandomSolenoidal, 5);
    IntegratorConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_final = 0.1;
    const VoigtParams p(0.15, g);
    std::vector<TimeSeriesRecord> series;
    const RunSummary s = integrate_summary(
        u0, p, cfg, [&series](const TimeSeriesRecord& rec) { series.push_back(rec); });
    CHECK(s.status == RunStatus::Valid);
    CHECK(s.max_q >= s.q_final);
    double sup_q = 0.0;
    for (const TimeSeriesRecord& rec : series) sup_q = std::max(sup_q, rec.q);
    CHECK(s.max_q >= sup_q);
    // conservation ceiling: M^2 <= E_alpha(0)
    CHECK(s.max_q * s.max_q <= alpha_energy(u0, p) + 1e-10);
}

TEST_CASE("integrate: drift threshold flags the run INVALID") {
    const Grid g(16);
    const SpectralVectorField u0 = make_ic(g, IcKind::TaylorGreen);
    IntegratorConfig cfg;
    cfg.dt = 0.05;  // crude step so RK4 drift is measurable
    cfg.t_final = 5.0;
    cfg.drift_abort_tol = 1e-14;
    const VoigtParams p(0.1, g);
    const RunSummary s = integrate_summary(u0, p, cfg, nullptr);
    CHECK(s.status == RunStatus::Invalid);
    CHECK(s.drift > 1e-14);
    CHECK(s.steps < 100);  // aborted early
}

TEST_CASE("integrate: numerical blow-up flags the run DIVERGED") {
    const Grid g(8);
    const SpectralVectorField u0 = make_ic(g, IcKind::TaylorGreen);
    IntegratorConfig cfg;
    cfg.dt = 50.0;  // wildly unstable for Euler
    cfg.t_final = 5000.0;
    cfg.drift_abort_tol = 1e100;  // let instability, not drift, end the run
    const VoigtParams p(0.0, g);
    const RunSummary s = integrate_summary(u0, p, cfg, nullptr);
    CHECK(s.status == RunStatus::Diverged);
}

TEST_CASE("integrate: adaptive stepping respects the CFL cap and finishes") {
    const Grid g(16);
    const SpectralVectorField u0 = make_ic(g, IcKind::TaylorGreen);
    IntegratorConfig cfg;
    cfg.adaptive = true;
    cfg.cfl = 0.4;
    cfg.dt_max = 5e-3;
    cfg.t_final = 0.05;
    cfg.sample_stride = 2;
    const VoigtParams p(0.1, g);
    std::vector<TimeSeriesRecord> series;
    const RunSummary s = integrate_summary(
        u0, p, cfg, [&series](const TimeSeriesRecord& rec) { series.push_back(rec); });
    CHECK(s.status == RunStatus::Valid);
    for (std::size_t i = 1; i < series.size(); ++i) {
        CHECK(series[i].dt_used <= 5e-3 + 1e-15);
    }
    CHECK(series.back().t == 0.05);
}

TEST_CASE("integrate: fixed dt reruns are bitwise reproducible") {
    const Grid g(16);
    const SpectralVectorField u0 = make_ic(g, IcKind::RandomSolenoidal, 77);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 0.02;
    const VoigtParams p(0.05, g);
    const RunSummary a = integrate_summary(u0, p, cfg, nullptr);
    const RunSummary b = integrate_summary(u0, p, cfg, nullptr);
    CHECK(a.max_q == b.max_q);
    CHECK(a.q_final == b.q_final);
    CHECK(a.drift == b.drift);
}
