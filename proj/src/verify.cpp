#include "voigt/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "voigt/criterion.hpp"
#include "voigt/diagnostics.hpp"
#include "voigt/dynamics.hpp"
#include "voigt/errors.hpp"
#include "voigt/initial_conditions.hpp"
#include "voigt/integrate.hpp"
#include "voigt/spectral_ops.hpp"
#include "voigt/transform.hpp"

namespace voigt {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

RealScalarField random_scalar(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RealScalarField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        f[i] = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    }
    return f;
}

SpectralVectorField random_vector_spectrum(const Grid& g, std::uint64_t seed) {
    SpectralTransform fft(g);
    RealVectorField v(g);
    for (int c = 0; c < 3; ++c) v[c] = random_scalar(g, seed + static_cast<std::uint64_t>(c));
    return fft.forward(v);
}

void check_spectral(std::vector<CheckResult>& out) {
    // Transform round trip on unstructured random samples.
    {
        double worst = 0.0;
        for (int n : {8, 16, 32}) {
            const Grid g(n);
            SpectralTransform fft(g);
            const RealScalarField f = random_scalar(g, 1000 + static_cast<std::uint64_t>(n));
            const RealScalarField back = fft.inverse(fft.forward(f));
            double err = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                err = std::max(err, std::abs(back[i] - f[i]));
                scale = std::max(scale, std::abs(f[i]));
            }
            worst = std::max(worst, err / scale);
        }
        out.push_back({"transform round-trip (n=8,16,32)", worst <= 1e-12,
                       "max relative error " + fmt(worst)});
    }

    // Parseval against physical-space quadrature.
    {
        double worst = 0.0;
        for (int n : {8, 16, 32}) {
            const Grid g(n);
            SpectralTransform fft(g);
            const RealScalarField f = random_scalar(g, 2000 + static_cast<std::uint64_t>(n));
            double quad = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) quad += f[i] * f[i];
            quad /= static_cast<double>(g.size());
            const double norm = l2_norm(fft.forward(f));
            worst = std::max(worst, std::abs(norm * norm - quad) / quad);
        }
        out.push_back({"Parseval vs quadrature", worst <= 1e-10,
                       "max relative mismatch " + fmt(worst)});
    }

    // Leray projector: idempotent, annihilates gradients, solenoidal range.
    {
        double worst_idem = 0.0, worst_grad = 0.0, worst_div = 0.0;
        for (int n : {8, 16, 32}) {
            const Grid g(n);
            const SpectralVectorField v =
                random_vector_spectrum(g, 3000 + static_cast<std::uint64_t>(n));
            const SpectralVectorField pv = leray_project(v);
            const SpectralVectorField ppv = leray_project(pv);
            worst_idem = std::max(worst_idem, l2_norm(ppv - pv) / l2_norm(pv));
            worst_div = std::max(worst_div, divergence_residual(pv));

            SpectralTransform fft(g);
            const SpectralScalarField f =
                fft.forward(random_scalar(g, 4000 + static_cast<std::uint64_t>(n)));
            const SpectralVectorField grad = gradient(f);
            worst_grad = std::max(worst_grad, l2_norm(leray_project(grad)) / l2_norm(grad));
        }
        out.push_back({"Leray projector idempotent", worst_idem <= 1e-12, fmt(worst_idem)});
        out.push_back({"Leray annihilates gradients", worst_grad <= 1e-12, fmt(worst_grad)});
        out.push_back({"Leray range divergence-free", worst_div <= 1e-12, fmt(worst_div)});
    }

    // Gradient-curl norm identity on seeded solenoidal fields.
    {
        double worst = 0.0;
        for (int n : {8, 16, 32}) {
            const Grid g(n);
            for (std::uint64_t s = 0; s < 100; ++s) {
                InitialConditionSpec spec;
                spec.kind = IcKind::RandomSolenoidal;
                spec.k0 = 2.0;
                spec.seed = s;
                const SpectralVectorField u = generate_ic(spec, g);
                worst = std::max(worst, identity_residual(u));
            }
        }
        out.push_back({"gradient-curl identity (100 seeds, n=8,16,32)", worst <= 1e-12,
                       "max residual " + fmt(worst)});
    }
}

void check_conservation(std::vector<CheckResult>& out) {
    const Grid g(32);
    InitialConditionSpec tg;
    tg.kind = IcKind::TaylorGreen;
    const SpectralVectorField u0 = generate_ic(tg, g);

    // Voigt alpha-energy equality.
    {
        IntegratorConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_final = 0.5;
        cfg.sample_stride = 100;
        const VoigtParams p(0.1, g);
        const auto start = std::chrono::steady_clock::now();
        const RunSummary s = integrate_summary(u0, p, cfg, nullptr);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = s.status == RunStatus::Valid && s.drift <= 1e-8;
        out.push_back({"alpha-energy equality (TG, n=32, alpha=0.1, T=0.5)", ok,
                       "relative drift " + fmt(s.drift) + ", " + fmt(seconds) + " s"});
        const double e0 = alpha_energy(u0, p);
        out.push_back({"criterion ceiling M^2 <= E_alpha(0)",
                       s.max_q * s.max_q <= e0 + 1e-10,
                       "M^2 = " + fmt(s.max_q * s.max_q) + ", E_alpha(0) = " + fmt(e0)});
    }

    // Euler energy equality with a healthy spectrum tail.
    {
        IntegratorConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_final = 0.25;
        cfg.sample_stride = 100;
        const VoigtParams p(0.0, g);
        const RunSummary s = integrate_summary(u0, p, cfg, nullptr);
        const bool ok = s.status == RunStatus::Valid && s.drift <= 1e-8 &&
                        s.tail_fraction_max < 1e-6;
        out.push_back({"Euler energy equality (TG, n=32, alpha=0, T=0.25)", ok,
                       "drift " + fmt(s.drift) + ", tail fraction " +
                           fmt(s.tail_fraction_max)});
    }
}

void check_shear(std::vector<CheckResult>& out) {
    const Grid g(16);
    InitialConditionSpec spec;
    spec.kind = IcKind::Shear;
    spec.shear_modes = 1;
    const SpectralVectorField u0 = generate_ic(spec, g);

    IntegratorConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_final = 1.0;
    cfg.sample_stride = 10;

    for (double alpha : {0.0, 0.1}) {
        const VoigtParams p(alpha, g);
        const IntegrationResult r = integrate(u0, p, cfg, nullptr);
        const double state_err = l2_norm(r.u_final - u0);
        const double expected_m = alpha * kTwoPi / std::sqrt(2.0);
        const double m_err = expected_m > 0.0
                                 ? std::abs(r.summary.max_q - expected_m) / expected_m
                                 : std::abs(r.summary.max_q);
        const bool ok = r.summary.status == RunStatus::Valid && state_err <= 1e-12 &&
                        m_err <= 1e-12;
        out.push_back({"steady shear (alpha=" + std::to_string(alpha) + ", n=16, T=1)", ok,
                       "state error " + fmt(state_err) + ", M error " + fmt(m_err)});
    }
}

void check_convergence(std::vector<CheckResult>& out) {
    // Convergence to the Euler reference as alpha -> 0.
    {
        InitialConditionSpec tg;
        tg.kind = IcKind::TaylorGreen;
        const ConvergenceStudy study =
            convergence_study(tg, 32, 0.2, {0.1, 0.05, 0.025}, 5e-4);
        bool ratios_ok = study.valid && !study.ratios.empty();
        std::string detail = "ratios";
        for (double r : study.ratios) {
            ratios_ok = ratios_ok && r >= 1.7 && r <= 2.3;
            detail += " " + fmt(r);
        }
        detail += ", reference tail " + fmt(study.reference_tail_fraction);
        if (!ratios_ok) {
            detail += "; measured rate is second order in alpha (alpha^2 "
                      "regularization), outside the pinned first-order window";
        }
        out.push_back({"alpha-convergence order in [1.7, 2.3] (TG, n=32, T=0.2)",
                       ratios_ok, detail});

        bool monotone = study.valid;
        std::string errors_detail = "errors";
        for (std::size_t i = 0; i < study.errors.size(); ++i) {
            if (i + 1 < study.errors.size()) {
                monotone = monotone && study.errors[i] > study.errors[i + 1];
            }
            errors_detail += " " + fmt(study.errors[i]);
        }
        out.push_back({"alpha-error decreases monotonically toward the Euler run",
                       monotone, errors_detail});
    }

    // Classical RK4 order via one-step Richardson comparison.
    {
        const Grid g(16);
        InitialConditionSpec tg;
        tg.kind = IcKind::TaylorGreen;
        const SpectralVectorField u0 = generate_ic(tg, g);
        const VoigtParams p(0.1, g);
        DynamicsWorkspace ws(g);

        const double h = 0.05;
        const SpectralVectorField coarse = rk4_step(u0, h, p, ws);
        SpectralVectorField half = rk4_step(u0, 0.5 * h, p, ws);
        half = rk4_step(half, 0.5 * h, p, ws);
        SpectralVectorField ref = u0;
        for (int i = 0; i < 10; ++i) ref = rk4_step(ref, 0.1 * h, p, ws);

        const double ratio = l2_norm(coarse - ref) / l2_norm(half - ref);
        out.push_back({"RK4 one-step Richardson ratio (TG, n=16)",
                       ratio >= 12.0 && ratio <= 20.0, "ratio " + fmt(ratio)});
    }
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {"spectral", "conservation", "shear",
                                                   "convergence"};
    return names;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite) {
    std::vector<CheckResult> results;
    const bool all = suite.empty() || suite == "all";
    bool known = all;
    if (all || suite == "spectral") check_spectral(results), known = true;
    if (all || suite == "conservation") check_conservation(results), known = true;
    if (all || suite == "shear") check_shear(results), known = true;
    if (all || suite == "convergence") check_convergence(results), known = true;
    if (!known) throw ConfigError("unknown verify suite: " + suite);
    return results;
}

}  // namespace voigt
