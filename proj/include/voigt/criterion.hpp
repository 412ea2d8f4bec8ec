#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "voigt/initial_conditions.hpp"
#include "voigt/integrate.hpp"

namespace voigt {

/// Verdict thresholds for the power-law evidence classification.
struct FitThresholds {
    double beta_threshold = 0.1;  // beta <= this (with good r2) reads as PERSISTS
    double slack = 0.1;           // beta >= 1 - slack reads as VANISHES
    double r2_threshold = 0.98;
};

/// Least-squares power law M ~ c * alpha^beta in log-log coordinates.
struct FitResult {
    double c = 0.0;
    double beta = 0.0;
    double r2 = 0.0;
    std::size_t points_used = 0;
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    // Some M vanished exactly: beta is the +infinity sentinel and the limit
    // is trivially zero.
    bool trivially_vanishing = false;
};

enum class Evidence { Vanishes, Persists, Inconclusive };

const char* to_string(Evidence e);
Evidence evidence_from_string(const std::string& s);

struct CriterionVerdict {
    Evidence new_evidence = Evidence::Inconclusive;
    Evidence old_evidence = Evidence::Inconclusive;
    FitResult fit_new;
    FitResult fit_old;
    FitThresholds thresholds;
};

/// Sweep recipe: a strictly decreasing alpha ladder sharing one initial
/// condition, grid, and final time.
struct SweepConfig {
    int n = 32;
    InitialConditionSpec ic;
    std::vector<double> alphas;
    IntegratorConfig integrator;
    int workers = 1;
    FitThresholds thresholds;
    int time_grid_points = 11;  // old-criterion reconstruction grid over [0, T]
};

/// One completed run plus its sampled series (alpha-descending in a sweep).
struct SweepRun {
    RunSummary summary;
    std::vector<TimeSeriesRecord> series;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRun> runs;
};

/// Per-time reconstruction of the original criterion quantity q(alpha, t_j).
struct OldCriterionCurve {
    std::vector<double> time_grid;
    // points[j] = (alpha, q(alpha, t_j)) over VALID runs covering t_j
    std::vector<std::vector<std::pair<double, double>>> points;
    std::vector<FitResult> fits;          // one per time-grid node
    std::size_t argmax_time_index = 0;    // node with the largest extrapolated q
    double sup_extrapolated = 0.0;
};

/// Finite-alpha check of the sup-dominance ordering between the criteria.
struct ComparisonReport {
    long checked = 0;
    long violations = 0;
    FitResult fit_new;
    FitResult fit_old;
};

struct ConvergenceStudy {
    double t_final = 0.0;
    std::vector<double> alphas;
    std::vector<double> errors;            // ||u(T) - u^alpha(T)||_L2
    std::vector<double> error_over_alpha;
    std::vector<double> ratios;            // e(alpha_i) / e(alpha_{i+1})
    double reference_norm = 0.0;           // ||u(T)|| of the alpha = 0 run
    double reference_tail_fraction = 0.0;
    bool valid = false;                    // reference run resolved and VALID
};

/// Runs one integration per alpha (concurrently up to config.workers), all
/// from the same initial condition. Results are alpha-descending; INVALID or
/// DIVERGED runs are retained with their status. Throws if no run is VALID.
SweepResult run_sweep(const SweepConfig& cfg);

/// (alpha, M(alpha, T)) over VALID runs, alpha-descending.
std::vector<std::pair<double, double>> new_criterion_curve(const SweepResult& s);

/// q(alpha, t_j) over VALID runs per time node, linearly interpolated in t.
OldCriterionCurve old_criterion_curve(const SweepResult& s,
                                      const std::vector<double>& time_grid);

/// Least squares in (log alpha, log M). Requires >= 3 points with distinct
/// alphas; any M == 0 short-circuits to the trivially-vanishing sentinel.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& points);

CriterionVerdict classify(const FitResult& fit_new, const FitResult& fit_old,
                          const FitThresholds& thresholds);

/// Verifies M(alpha, T) >= q(alpha, t_j) for every VALID run and node
/// (exact; a violation is an internal running-max failure) and reports the
/// fitted limits of both criteria.
ComparisonReport compare_criteria(const SweepResult& s,
                                  const std::vector<double>& time_grid);

/// Voigt-to-Euler convergence study: same-scheme alpha = 0 reference vs each alpha;
/// first-order convergence shows as e(alpha_i)/e(alpha_{i+1}) ~ alpha ratio.
ConvergenceStudy convergence_study(const InitialConditionSpec& ic, int n, double t_final,
                                   const std::vector<double>& alphas, double dt);

/// Uniform time grid over [0, t_final] for the old-criterion reconstruction.
std::vector<double> make_time_grid(double t_final, int points);

/// Fits, comparison, and verdict derived from completed runs; pure function
/// of the run data, shared by `sweep` and `analyze`.
struct SweepAnalysis {
    std::vector<std::pair<double, double>> new_curve;
    OldCriterionCurve old_curve;
    ComparisonReport comparison;
    CriterionVerdict verdict;
    std::vector<double> time_grid;
};

SweepAnalysis analyze_sweep(const SweepResult& s);

}  // namespace voigt
