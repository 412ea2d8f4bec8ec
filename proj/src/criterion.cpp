#include "voigt/criterion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "voigt/errors.hpp"
#include "voigt/spectral_ops.hpp"

namespace voigt {

const char* to_string(Evidence e) {
    switch (e) {
        case Evidence::Vanishes: return "VANISHES";
        case Evidence::Persists: return "PERSISTS";
        case Evidence::Inconclusive: return "INCONCLUSIVE";
    }
    return "UNKNOWN";
}

Evidence evidence_from_string(const std::string& s) {
    if (s == "VANISHES") return Evidence::Vanishes;
    if (s == "PERSISTS") return Evidence::Persists;
    if (s == "INCONCLUSIVE") return Evidence::Inconclusive;
    throw IoError("unknown evidence label: " + s);
}

namespace {

void validate_alphas(const std::vector<double>& alphas) {
    if (alphas.empty()) throw ConfigError("sweep: alpha ladder is empty");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0)) throw ConfigError("sweep: alphas must be positive");
        if (i > 0 && !(alphas[i] < alphas[i - 1])) {
            throw ConfigError("sweep: alphas must be strictly decreasing");
        }
    }
}

/// Extrapolation proxy for the fitted limit: the fitted value one ladder
/// rung below the smallest computed alpha. Distinguishes c*alpha^0 (stays
/// near c) from decaying fits without evaluating at alpha = 0 exactly.
double extrapolated_value(const FitResult& fit, double alpha_ref) {
    if (fit.trivially_vanishing) return 0.0;
    if (fit.points_used < 3) return 0.0;
    return fit.c * std::pow(alpha_ref, fit.beta);
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    validate_alphas(cfg.alphas);
    if (cfg.alphas.size() < 3) {
        throw ConfigError("sweep: need at least 3 alphas for the power-law fit");
    }
    if (cfg.workers < 1) throw ConfigError("sweep: workers must be >= 1");

    const Grid grid(cfg.n);
    const SpectralVectorField u0 = generate_ic(cfg.ic, grid);  // shared by all runs

    SweepResult result;
    result.config = cfg;
    result.runs.resize(cfg.alphas.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.alphas.size() || failed.load()) break;
            try {
                const VoigtParams params(cfg.alphas[i], grid);
                std::vector<TimeSeriesRecord> series;
                auto sink = [&series](const TimeSeriesRecord& r) { series.push_back(r); };
                RunSummary summary = integrate_summary(u0, params, cfg.integrator, sink);
                result.runs[i] = SweepRun{std::move(summary), std::move(series)};
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                failure = e.what();
                break;
            }
        }
    };

    const std::size_t thread_count =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), cfg.alphas.size());
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (std::size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw Error("sweep: run failed: " + failure);

    const bool any_valid = std::any_of(result.runs.begin(), result.runs.end(),
                                       [](const SweepRun& r) {
                                           return r.summary.status == RunStatus::Valid;
                                       });
    if (!any_valid) {
        throw Error("sweep: no VALID runs (resolution insufficient for every alpha)");
    }
    return result;
}

std::vector<std::pair<double, double>> new_criterion_curve(const SweepResult& s) {
    std::vector<std::pair<double, double>> curve;
    for (const SweepRun& run : s.runs) {
        if (run.summary.status != RunStatus::Valid) continue;
        curve.emplace_back(run.summary.alpha, run.summary.max_q);
    }
    return curve;
}

std::vector<double> make_time_grid(double t_final, int points) {
    if (points < 1) throw ConfigError("time grid needs at least one node");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    if (points == 1) {
        grid.push_back(t_final);
        return grid;
    }
    for (int j = 0; j < points; ++j) {
        grid.push_back(t_final * static_cast<double>(j) / (points - 1));
    }
    grid.back() = t_final;
    return grid;
}

namespace {

/// Linear interpolation of q at time t from a sampled series. std::lerp keeps
/// the value inside the endpoint hull, so interpolated q never exceeds the
/// running maximum. Returns false when t is outside the series range.
bool interpolate_q(const std::vector<TimeSeriesRecord>& series, double t, double* out) {
    if (series.empty()) return false;
    if (t < series.front().t || t > series.back().t) return false;
    auto upper = std::lower_bound(series.begin(), series.end(), t,
                                  [](const TimeSeriesRecord& r, double v) { return r.t < v; });
    if (upper == series.end()) return false;
    if (upper->t == t) {
        *out = upper->q;
        return true;
    }
    const auto lower = upper - 1;
    const double theta = (t - lower->t) / (upper->t - lower->t);
    *out = std::lerp(lower->q, upper->q, theta);
    return true;
}

}  // namespace

OldCriterionCurve old_criterion_curve(const SweepResult& s,
                                      const std::vector<double>& time_grid) {
    OldCriterionCurve curve;
    curve.time_grid = time_grid;
    curve.points.resize(time_grid.size());
    curve.fits.resize(time_grid.size());

    for (std::size_t j = 0; j < time_grid.size(); ++j) {
        for (const SweepRun& run : s.runs) {
            if (run.summary.status != RunStatus::Valid) continue;
            double q = 0.0;
            if (interpolate_q(run.series, time_grid[j], &q)) {
                curve.points[j].emplace_back(run.summary.alpha, q);
            }
            // Runs not covering t_j are excluded at that node.
        }
        if (curve.points[j].size() >= 3) {
            curve.fits[j] = fit_power_law(curve.points[j]);
        }
    }

    double best = -1.0;
    for (std::size_t j = 0; j < curve.fits.size(); ++j) {
        const FitResult& fit = curve.fits[j];
        if (fit.points_used < 3 && !fit.trivially_vanishing) continue;
        const double alpha_ref = 0.5 * fit.alpha_min;
        const double value = extrapolated_value(fit, alpha_ref);
        if (value > best) {
            best = value;
            curve.argmax_time_index = j;
        }
    }
    curve.sup_extrapolated = std::max(best, 0.0);
    return curve;
}

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) {
        throw Error("fit_power_law: need at least 3 points, got " +
                    std::to_string(points.size()));
    }

    FitResult fit;
    fit.points_used = points.size();
    fit.alpha_min = points.front().first;
    fit.alpha_max = points.front().first;
    bool has_zero = false;
    for (const auto& [alpha, value] : points) {
        if (!(alpha > 0.0)) throw Error("fit_power_law: alphas must be positive");
        if (value < 0.0) throw Error("fit_power_law: values must be nonnegative");
        if (value == 0.0) has_zero = true;
        fit.alpha_min = std::min(fit.alpha_min, alpha);
        fit.alpha_max = std::max(fit.alpha_max, alpha);
    }
    if (fit.alpha_min == fit.alpha_max) {
        throw Error("fit_power_law: degenerate fit, all alphas equal");
    }
    if (has_zero) {
        fit.trivially_vanishing = true;
        fit.beta = std::numeric_limits<double>::infinity();
        fit.c = 0.0;
        fit.r2 = 1.0;
        return fit;
    }

    const double count = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [alpha, value] : points) {
        sx += std::log(alpha);
        sy += std::log(value);
    }
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [alpha, value] : points) {
        const double dx = std::log(alpha) - mx;
        const double dy = std::log(value) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    fit.beta = sxy / sxx;
    fit.c = std::exp(my - fit.beta * mx);
    const double ss_res = std::max(syy - fit.beta * sxy, 0.0);
    // Constant data fitted exactly: residual and variance are both zero.
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

CriterionVerdict classify(const FitResult& fit_new, const FitResult& fit_old,
                          const FitThresholds& thresholds) {
    auto evidence = [&thresholds](const FitResult& fit) {
        if (fit.trivially_vanishing) return Evidence::Vanishes;
        if (fit.r2 < thresholds.r2_threshold) return Evidence::Inconclusive;
        if (fit.beta <= thresholds.beta_threshold) return Evidence::Persists;
        if (fit.beta >= 1.0 - thresholds.slack) return Evidence::Vanishes;
        return Evidence::Inconclusive;
    };
    CriterionVerdict verdict;
    verdict.new_evidence = evidence(fit_new);
    verdict.old_evidence = evidence(fit_old);
    verdict.fit_new = fit_new;
    verdict.fit_old = fit_old;
    verdict.thresholds = thresholds;
    return verdict;
}

ComparisonReport compare_criteria(const SweepResult& s,
                                  const std::vector<double>& time_grid) {
    ComparisonReport report;
    const OldCriterionCurve old_curve = old_criterion_curve(s, time_grid);

    for (const SweepRun& run : s.runs) {
        if (run.summary.status != RunStatus::Valid) continue;
        for (std::size_t j = 0; j < time_grid.size(); ++j) {
            double q = 0.0;
            if (!interpolate_q(run.series, time_grid[j], &q)) continue;
            ++report.checked;
            if (q > run.summary.max_q) ++report.violations;
        }
    }

    const auto new_curve = new_criterion_curve(s);
    if (new_curve.size() >= 3) report.fit_new = fit_power_law(new_curve);
    report.fit_old = old_curve.fits[old_curve.argmax_time_index];
    return report;
}

ConvergenceStudy convergence_study(const InitialConditionSpec& ic, int n, double t_final,
                                   const std::vector<double>& alphas, double dt) {
    validate_alphas(alphas);
    const Grid grid(n);
    const SpectralVectorField u0 = generate_ic(ic, grid);

    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_final = t_final;

    ConvergenceStudy study;
    study.t_final = t_final;
    study.alphas = alphas;

    const VoigtParams euler(0.0, grid);
    IntegrationResult reference = integrate(u0, euler, cfg, nullptr);
    study.reference_norm = l2_norm(reference.u_final);
    study.reference_tail_fraction = reference.summary.tail_fraction_max;
    const bool reference_ok = reference.summary.status == RunStatus::Valid &&
                              reference.summary.tail_fraction_max < 1e-6;

    bool all_valid = reference_ok;
    for (const double alpha : alphas) {
        const VoigtParams params(alpha, grid);
        IntegrationResult run = integrate(u0, params, cfg, nullptr);
        if (run.summary.status != RunStatus::Valid) all_valid = false;
        study.errors.push_back(l2_norm(run.u_final - reference.u_final));
        study.error_over_alpha.push_back(study.errors.back() / alpha);
    }
    for (std::size_t i = 0; i + 1 < study.errors.size(); ++i) {
        const double denom = study.errors[i + 1];
        study.ratios.push_back(denom > 0.0 ? study.errors[i] / denom
                                           : std::numeric_limits<double>::infinity());
    }
    study.valid = all_valid;
    return study;
}

SweepAnalysis analyze_sweep(const SweepResult& s) {
    SweepAnalysis analysis;
    double t_final = s.config.integrator.t_final;
    for (const SweepRun& run : s.runs) {
        if (run.summary.status == RunStatus::Valid) {
            t_final = run.summary.t_final;
            break;
        }
    }
    analysis.time_grid = make_time_grid(t_final, s.config.time_grid_points);
    analysis.new_curve = new_criterion_curve(s);
    analysis.old_curve = old_criterion_curve(s, analysis.time_grid);
    analysis.comparison = compare_criteria(s, analysis.time_grid);

    FitResult fit_new;
    if (analysis.new_curve.size() >= 3) {
        fit_new = fit_power_law(analysis.new_curve);
    }
    const FitResult& fit_old = analysis.old_curve.fits[analysis.old_curve.argmax_time_index];
    analysis.verdict = classify(fit_new, fit_old, s.config.thresholds);
    return analysis;
}

}  // namespace voigt
