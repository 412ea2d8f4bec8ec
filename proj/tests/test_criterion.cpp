#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "voigt/criterion.hpp"
#include "voigt/errors.hpp"
#include "voigt/spectral_ops.hpp"

using namespace voigt;

namespace {

SweepConfig shear_sweep_config() {
    SweepConfig cfg;
    cfg.n = 16;
    cfg.ic.kind = IcKind::Shear;
    cfg.alphas = {0.2, 0.1, 0.05};
    cfg.integrator.dt = 0.01;
    cfg.integrator.t_final = 0.5;
    cfg.integrator.sample_stride = 5;
    cfg.time_grid_points = 6;
    return cfg;
}

}  // namespace

TEST_CASE("fit_power_law: exact, constant, sentinel, and error paths") {
    const FitResult linear = fit_power_law({{0.2, 0.14}, {0.1, 0.07}, {0.05, 0.035}});
    CHECK(linear.beta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(linear.c == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(linear.r2 == doctest::Approx(1.0).epsilon(1e-12));

    const FitResult constant = fit_power_law({{0.2, 0.3}, {0.1, 0.3}, {0.05, 0.3}});
    CHECK(constant.beta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(constant.c == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(constant.r2 == 1.0);  // residual and variance both zero

    const FitResult sentinel = fit_power_law({{0.2, 0.1}, {0.1, 0.0}, {0.05, 0.01}});
    CHECK(sentinel.trivially_vanishing);
    CHECK(std::isinf(sentinel.beta));

    CHECK_THROWS_AS(fit_power_law({{0.1, 1.0}, {0.05, 0.5}}), Error);
    CHECK_THROWS_AS(fit_power_law({{0.1, 1.0}, {0.1, 0.5}, {0.1, 0.2}}), Error);
}

TEST_CASE("fit_power_law recovers a noisy half-power exponent") {
    std::mt19937_64 rng(1234);
    std::vector<std::pair<double, double>> points;
    double alpha = 0.4;
    for (int i = 0; i < 8; ++i, alpha *= 0.5) {
        const double noise =
            1.0 + 0.01 * (2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0);
        points.emplace_back(alpha, std::sqrt(alpha) * noise);
    }
    const FitResult fit = fit_power_law(points);
    CHECK(fit.beta >= 0.45);
    CHECK(fit.beta <= 0.55);
    CHECK(fit.r2 > 0.99);
}

TEST_CASE("classify applies the threshold rules") {
    FitThresholds th;  // beta 0.1, slack 0.1, r2 0.98
    FitResult fit;
    fit.points_used = 4;

    fit.beta = 1.0;
    fit.r2 = 0.999;
    CHECK(classify(fit, fit, th).new_evidence == Evidence::Vanishes);

    fit.beta = 0.02;
    fit.r2 = 0.995;
    CHECK(classify(fit, fit, th).new_evidence == Evidence::Persists);

    fit.beta = 1.0;
    fit.r2 = 0.5;
    CHECK(classify(fit, fit, th).new_evidence == Evidence::Inconclusive);

    fit.beta = 0.5;
    fit.r2 = 0.999;
    CHECK(classify(fit, fit, th).new_evidence == Evidence::Inconclusive);

    FitResult sentinel;
    sentinel.trivially_vanishing = true;
    sentinel.beta = std::numeric_limits<double>::infinity();
    CHECK(classify(sentinel, sentinel, th).new_evidence == Evidence::Vanishes);
}

TEST_CASE("shear sweep: exact M(alpha), beta = 1, equality across time nodes") {
    const SweepResult sweep = run_sweep(shear_sweep_config());
    REQUIRE(sweep.runs.size() == 3);
    const double grad_norm = kTwoPi / std::sqrt(2.0);
    for (std::size_t i = 0; i < 3; ++i) {
        const RunSummary& s = sweep.runs[i].summary;
        CHECK(s.status == RunStatus::Valid);
        CHECK(s.alpha == shear_sweep_config().alphas[i]);
        CHECK(s.max_q == doctest::Approx(s.alpha * grad_norm).epsilon(1e-12));
    }

    const auto curve = new_criterion_curve(sweep);
    REQUIRE(curve.size() == 3);
    CHECK(curve.front().first == 0.2);  // alpha-descending
    const FitResult fit = fit_power_law(curve);
    CHECK(fit.beta == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.c == doctest::Approx(grad_norm).epsilon(1e-6));
    CHECK(fit.r2 >= 1.0 - 1e-12);

    const SweepAnalysis analysis = analyze_sweep(sweep);
    CHECK(analysis.verdict.new_evidence == Evidence::Vanishes);
    CHECK(analysis.verdict.old_evidence == Evidence::Vanishes);
    CHECK(analysis.comparison.violations == 0);
    // q is constant in time for the steady state, so every node matches M
    for (std::size_t j = 0; j < analysis.old_curve.time_grid.size(); ++j) {
        for (const auto& [alpha, q] : analysis.old_curve.points[j]) {
            CHECK(q == doctest::Approx(alpha * grad_norm).epsilon(1e-12));
        }
        CHECK(analysis.old_curve.fits[j].beta == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("old criterion curve on the single-node grid reduces to q(T)") {
    const SweepResult sweep = run_sweep(shear_sweep_config());
    const OldCriterionCurve curve =
        old_criterion_curve(sweep, {sweep.config.integrator.t_final});
    REQUIRE(curve.points.size() == 1);
    REQUIRE(curve.points[0].size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(curve.points[0][i].first == sweep.runs[i].summary.alpha);
        CHECK(curve.points[0][i].second == sweep.runs[i].summary.q_final);
    }
}

TEST_CASE("curves exclude non-VALID runs") {
    SweepResult sweep = run_sweep(shear_sweep_config());
    sweep.runs[1].summary.status = RunStatus::Invalid;
    const auto curve = new_criterion_curve(sweep);
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].first == 0.2);
    CHECK(curve[1].first == 0.05);

    const OldCriterionCurve old_curve = old_criterion_curve(sweep, {0.0, 0.25});
    for (const auto& pts : old_curve.points) CHECK(pts.size() == 2);
}

TEST_CASE("sweep rejects bad ladders") {
    SweepConfig cfg = shear_sweep_config();
    cfg.alphas = {0.2, 0.1};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
    cfg.alphas = {0.1, 0.2, 0.3};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
    cfg.alphas = {0.2, 0.1, -0.05};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
}

TEST_CASE("sweep results are identical across worker counts") {
    SweepConfig cfg = shear_sweep_config();
    cfg.workers = 1;
    const SweepResult serial = run_sweep(cfg);
    cfg.workers = 3;
    const SweepResult parallel = run_sweep(cfg);
    REQUIRE(serial.runs.size() == parallel.runs.size());
    for (std::size_t i = 0; i < serial.runs.size(); ++i) {
        CHECK(serial.runs[i].summary.max_q == parallel.runs[i].summary.max_q);
        CHECK(serial.runs[i].summary.drift == parallel.runs[i].summary.drift);
        REQUIRE(serial.runs[i].series.size() == parallel.runs[i].series.size());
        for (std::size_t r = 0; r < serial.runs[i].series.size(); ++r) {
            CHECK(serial.runs[i].series[r].q == parallel.runs[i].series[r].q);
        }
    }
}

TEST_CASE("Taylor-Green sweep: all VALID with M decreasing in alpha") {
    SweepConfig cfg;
    cfg.n = 16;
    cfg.ic.kind = IcKind::TaylorGreen;
    cfg.alphas = {0.2, 0.1, 0.05, 0.025};
    cfg.integrator.dt = 2e-3;
    cfg.integrator.t_final = 0.1;
    cfg.integrator.sample_stride = 10;
    cfg.workers = 2;
    const SweepResult sweep = run_sweep(cfg);
    const Grid g(16);
    InitialConditionSpec tg;
    tg.kind = IcKind::TaylorGreen;
    const SpectralVectorField u0 = generate_ic(tg, g);
    for (std::size_t i = 0; i < sweep.runs.size(); ++i) {
        const RunSummary& s = sweep.runs[i].summary;
        CHECK(s.status == RunStatus::Valid);
        if (i > 0) CHECK(s.max_q < sweep.runs[i - 1].summary.max_q);
        // conservation ceiling at finite alpha
        const double e0 = alpha_energy(u0, VoigtParams(s.alpha, g));
        CHECK(s.max_q * s.max_q <= e0 + 1e-10);
    }
}

TEST_CASE("convergence study: shear flow has zero alpha-error") {
    InitialConditionSpec shear;
    shear.kind = IcKind::Shear;
    const ConvergenceStudy study = convergence_study(shear, 16, 0.5, {0.2, 0.1, 0.05}, 0.01);
    CHECK(study.valid);
    for (double e : study.errors) CHECK(e <= 1e-13);
    CHECK(study.reference_norm == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("make_time_grid spans [0, T] inclusively") {
    const auto grid = make_time_grid(0.5, 6);
    REQUIRE(grid.size() == 6);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 0.5);
    const auto single = make_time_grid(0.5, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 0.5);
}
