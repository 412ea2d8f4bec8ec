// Acceptance suite: one check per shipped criterion, each printed as a
// PASS/FAIL line with the measured value against its pinned tolerance.
// Exits with the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "voigt/criterion.hpp"
#include "voigt/diagnostics.hpp"
#include "voigt/dynamics.hpp"
#include "voigt/initial_conditions.hpp"
#include "voigt/integrate.hpp"
#include "voigt/run_io.hpp"
#include "voigt/spectral_ops.hpp"

namespace fs = std::filesystem;
using namespace voigt;

namespace {

int criteria_total = 0;
int criteria_failed = 0;

void report(int index, const std::string& name, bool passed, const std::string& detail) {
    ++criteria_total;
    if (!passed) ++criteria_failed;
    std::cout << "[" << index << "/10] " << name << ": " << (passed ? "PASS" : "FAIL")
              << " (" << detail << ")\n"
              << std::flush;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << std::scientific << v;
    return os.str();
}

SpectralVectorField taylor_green(const Grid& g) {
    InitialConditionSpec spec;
    spec.kind = IcKind::TaylorGreen;
    return generate_ic(spec, g);
}

// Criterion 1: alpha-energy equality at the pinned resolution and step.
void criterion_alpha_energy(std::vector<RunSummary>& valid_runs,
                            std::vector<double>& ceilings) {
    const Grid g(32);
    const SpectralVectorField u0 = taylor_green(g);
    const VoigtParams p(0.1, g);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 0.5;

    const auto start = std::chrono::steady_clock::now();
    const RunSummary s = integrate_summary(u0, p, cfg, nullptr);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const bool ok = s.status == RunStatus::Valid && s.drift <= 1e-8;
    report(1, "alpha-energy equality (TG, n=32, alpha=0.1, dt=1e-3, T=0.5)", ok,
           "relative drift " + fmt(s.drift) + " <= 1e-8, runtime " + fmt(seconds) + " s");
    valid_runs.push_back(s);
    ceilings.push_back(alpha_energy(u0, p));
}

// Criterion 2: Euler energy equality with a resolved spectrum.
void criterion_euler_energy(std::vector<RunSummary>& valid_runs,
                            std::vector<double>& ceilings) {
    const Grid g(32);
    const SpectralVectorField u0 = taylor_green(g);
    const VoigtParams p(0.0, g);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 0.25;

    const RunSummary s = integrate_summary(u0, p, cfg, nullptr);
    const bool ok = s.status == RunStatus::Valid && s.drift <= 1e-8 &&
                    s.tail_fraction_max < 1e-6;
    report(2, "Euler energy equality (TG, n=32, alpha=0, dt=1e-3, T=0.25)", ok,
           "drift " + fmt(s.drift) + " <= 1e-8, tail fraction " + fmt(s.tail_fraction_max) +
               " < 1e-6");
    valid_runs.push_back(s);
    ceilings.push_back(alpha_energy(u0, p));
}

// Criterion 3: the vorticity-gradient norm identity on seeded solenoidal data.
void criterion_identity() {
    double worst = 0.0;
    for (int n : {8, 16, 32}) {
        const Grid g(n);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            InitialConditionSpec spec;
            spec.kind = IcKind::RandomSolenoidal;
            spec.k0 = 2.0;
            spec.seed = seed;
            worst = std::max(worst, identity_residual(generate_ic(spec, g)));
        }
    }
    report(3, "vorticity identity (100 seeds, n in {8,16,32})", worst <= 1e-12,
           "max residual " + fmt(worst) + " <= 1e-12");
}

// Criterion 4: the shear flow is an exact steady state with exact M.
void criterion_steady_shear(std::vector<RunSummary>& valid_runs,
                            std::vector<double>& ceilings) {
    const Grid g(16);
    InitialConditionSpec spec;
    spec.kind = IcKind::Shear;
    const SpectralVectorField u0 = generate_ic(spec, g);
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 1.0;

    bool ok = true;
    std::string detail;
    for (double alpha : {0.0, 0.1}) {
        const VoigtParams p(alpha, g);
        const IntegrationResult r = integrate(u0, p, cfg, nullptr);
        const double state_err = l2_norm(r.u_final - u0);
        const double expect = alpha * kTwoPi / std::sqrt(2.0);
        const double m_err = expect > 0.0 ? std::abs(r.summary.max_q - expect) / expect
                                          : std::abs(r.summary.max_q);
        ok = ok && r.summary.status == RunStatus::Valid && state_err <= 1e-12 &&
             m_err <= 1e-12;
        detail += "alpha=" + fmt(alpha) + ": |u(T)-u0| " + fmt(state_err) + ", M err " +
                  fmt(m_err) + "; ";
        valid_runs.push_back(r.summary);
        ceilings.push_back(alpha_energy(u0, p));
    }
    report(4, "exact steady shear (n=16, T=1)", ok, detail + "tolerance 1e-12");
}

// Criterion 5: alpha-convergence order against the same-scheme Euler run.
void criterion_convergence_order() {
    InitialConditionSpec tg;
    tg.kind = IcKind::TaylorGreen;
    const ConvergenceStudy study = convergence_study(tg, 32, 0.2, {0.1, 0.05, 0.025}, 5e-4);
    bool ok = study.valid && study.ratios.size() == 2;
    std::string detail = "error ratios";
    for (double r : study.ratios) {
        ok = ok && r >= 1.7 && r <= 2.3;
        detail += " " + fmt(r);
    }
    detail += " vs [1.7, 2.3]";
    if (!ok) {
        detail += "; measured convergence is second order in alpha (the regularization "
                  "enters through alpha^2), the pinned window assumes the first-order "
                  "bound is sharp";
    }
    report(5, "convergence order (TG, n=32, dt=5e-4, T=0.2)", ok, detail);
}

// Criteria 6-8 share the smooth-regime sweep.
void criteria_sweep(std::vector<RunSummary>& valid_runs, std::vector<double>& ceilings) {
    SweepConfig cfg;
    cfg.n = 32;
    cfg.ic.kind = IcKind::TaylorGreen;
    cfg.alphas = {0.1, 0.05, 0.025};
    cfg.integrator.dt = 5e-4;
    cfg.integrator.t_final = 0.2;
    cfg.integrator.sample_stride = 10;
    cfg.workers = 3;

    const SweepResult sweep = run_sweep(cfg);
    const SweepAnalysis analysis = analyze_sweep(sweep);

    const FitResult& fit = analysis.verdict.fit_new;
    const bool ok6 = fit.beta >= 0.9 && fit.r2 >= 0.98 &&
                     analysis.verdict.new_evidence == Evidence::Vanishes;
    report(6, "smooth-regime criterion behavior (same sweep)", ok6,
           "beta " + fmt(fit.beta) + " >= 0.9, r2 " + fmt(fit.r2) + " >= 0.98, verdict " +
               to_string(analysis.verdict.new_evidence));

    // Criterion 7 covers every sweep completed in this suite: the smooth-regime
    // sweep here and the shear determinism sweeps, which are checked by their
    // own summaries below.
    SweepConfig shear_cfg;
    shear_cfg.n = 16;
    shear_cfg.ic.kind = IcKind::Shear;
    shear_cfg.alphas = {0.2, 0.1, 0.05};
    shear_cfg.integrator.dt = 0.01;
    shear_cfg.integrator.t_final = 0.5;
    shear_cfg.integrator.sample_stride = 5;
    const SweepResult shear_sweep = run_sweep(shear_cfg);
    const SweepAnalysis shear_analysis = analyze_sweep(shear_sweep);
    const long violations =
        analysis.comparison.violations + shear_analysis.comparison.violations;
    const long checked = analysis.comparison.checked + shear_analysis.comparison.checked;
    report(7, "criterion ordering M(alpha,T) >= q(alpha,t_j) on every sweep",
           violations == 0,
           std::to_string(violations) + " violations in " + std::to_string(checked) +
               " checks (exact)");

    const Grid g32(32);
    const Grid g16(16);
    const SpectralVectorField tg_u0 = taylor_green(g32);
    InitialConditionSpec shear_ic;
    shear_ic.kind = IcKind::Shear;
    const SpectralVectorField shear_u0 = generate_ic(shear_ic, g16);
    for (const SweepRun& run : sweep.runs) {
        valid_runs.push_back(run.summary);
        ceilings.push_back(alpha_energy(tg_u0, VoigtParams(run.summary.alpha, g32)));
    }
    for (const SweepRun& run : shear_sweep.runs) {
        valid_runs.push_back(run.summary);
        ceilings.push_back(alpha_energy(shear_u0, VoigtParams(run.summary.alpha, g16)));
    }
}

// Criterion 8: conservation ceiling over every VALID run this suite produced.
void criterion_ceiling(const std::vector<RunSummary>& valid_runs,
                       const std::vector<double>& ceilings) {
    bool ok = true;
    double worst_margin = -1e300;
    for (std::size_t i = 0; i < valid_runs.size(); ++i) {
        if (valid_runs[i].status != RunStatus::Valid) continue;
        const double margin =
            valid_runs[i].max_q * valid_runs[i].max_q - ceilings[i];
        worst_margin = std::max(worst_margin, margin);
        ok = ok && margin <= 1e-10;
    }
    report(8, "Eq-ceiling M^2 <= E_alpha(0) + 1e-10 on every VALID run", ok,
           std::to_string(valid_runs.size()) + " runs, worst M^2 - E_alpha(0) = " +
               fmt(worst_margin));
}

// Criterion 9: byte-identical sweep artifacts across 1, 2, and 4 workers.
void criterion_determinism() {
    const fs::path tmp = fs::temp_directory_path() /
                         ("voigt-acc-" + std::to_string(std::random_device{}()));
    fs::create_directories(tmp);
    const fs::path config = tmp / "det.toml";
    {
        std::ofstream out(config);
        out << "[grid]\nn = 16\n[ic]\nkind = \"random-solenoidal\"\nseed = 11\nk0 = 2.0\n"
            << "[voigt]\nalphas = [0.2, 0.1, 0.05]\n"
            << "[time]\ndt = 0.005\nt_final = 0.1\nsample_stride = 4\n";
    }

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };

    bool ok = true;
    std::string detail;
    std::vector<std::string> baselines;
    const std::vector<std::string> names = {"run_00.summary.json", "run_01.summary.json",
                                            "run_02.summary.json", "sweep.summary.json",
                                            "run_00.series.csv",   "run_01.series.csv",
                                            "run_02.series.csv"};
    for (int workers : {1, 2, 4}) {
        const fs::path dir = tmp / ("w" + std::to_string(workers));
        const std::string cmd = std::string(VOIGT_CLI_PATH) + " sweep --config " +
                                config.string() + " --output " + dir.string() +
                                " --workers " + std::to_string(workers) +
                                " > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) {
            ok = false;
            detail += "sweep with " + std::to_string(workers) + " workers failed; ";
            continue;
        }
        if (baselines.empty()) {
            for (const auto& name : names) baselines.push_back(slurp(dir / name));
        } else {
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (slurp(dir / names[i]) != baselines[i]) {
                    ok = false;
                    detail += names[i] + " differs at workers=" + std::to_string(workers) +
                              "; ";
                }
            }
        }
    }
    if (ok) detail = "7 artifact files byte-identical across workers 1, 2, 4";
    std::error_code ec;
    fs::remove_all(tmp, ec);
    report(9, "determinism of sweep artifacts across worker counts", ok, detail);
}

// Criterion 10: classical RK4 order via a one-step Richardson ratio.
void criterion_rk4_order() {
    const Grid g(16);
    const SpectralVectorField u0 = taylor_green(g);
    const VoigtParams p(0.1, g);
    DynamicsWorkspace ws(g);
    const double h = 0.05;

    const SpectralVectorField coarse = rk4_step(u0, h, p, ws);
    SpectralVectorField half = rk4_step(u0, 0.5 * h, p, ws);
    half = rk4_step(half, 0.5 * h, p, ws);
    SpectralVectorField ref = u0;
    for (int i = 0; i < 10; ++i) ref = rk4_step(ref, 0.1 * h, p, ws);

    const double ratio = l2_norm(coarse - ref) / l2_norm(half - ref);
    report(10, "RK4 one-step Richardson ratio (TG, n=16)", ratio >= 12.0 && ratio <= 20.0,
           "ratio " + fmt(ratio) + " in [12, 20]");
}

}  // namespace

int main() {
    std::cout << "voigt acceptance suite\n";
    std::vector<RunSummary> valid_runs;
    std::vector<double> ceilings;

    criterion_alpha_energy(valid_runs, ceilings);
    criterion_euler_energy(valid_runs, ceilings);
    criterion_identity();
    criterion_steady_shear(valid_runs, ceilings);
    criterion_convergence_order();
    criteria_sweep(valid_runs, ceilings);
    criterion_ceiling(valid_runs, ceilings);
    criterion_determinism();
    criterion_rk4_order();

    std::cout << "acceptance: " << (criteria_total - criteria_failed) << "/"
              << criteria_total << " criteria passed\n";
    return criteria_failed;
}
