#include "voigt/run_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "voigt/errors.hpp"

namespace voigt {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view text, const std::filesystem::path& path) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw IoError("bad numeric field '" + std::string(text) + "' in " + path.string());
    }
    return value;
}

constexpr const char* kSeriesHeader = "t,energy,enstrophy,alpha_energy,q,dt";

/// JSON value that tolerates the non-finite fields of DIVERGED runs.
ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double number_or(const ordered_json& j, double fallback) {
    return j.is_number() ? j.get<double>() : fallback;
}

ordered_json fit_to_json(const FitResult& fit) {
    ordered_json j;
    j["c"] = json_number(fit.c);
    j["beta"] = json_number(fit.beta);
    j["r2"] = json_number(fit.r2);
    j["points_used"] = fit.points_used;
    j["alpha_min"] = fit.alpha_min;
    j["alpha_max"] = fit.alpha_max;
    j["trivially_vanishing"] = fit.trivially_vanishing;
    return j;
}

ordered_json run_to_json(const RunSummary& s) {
    ordered_json j;
    j["alpha"] = s.alpha;
    j["n"] = s.n;
    j["t_final"] = s.t_final;
    j["M"] = json_number(s.max_q);
    j["t_argmax"] = json_number(s.t_argmax);
    j["q_final"] = json_number(s.q_final);
    j["drift"] = json_number(s.drift);
    j["tail_fraction_max"] = json_number(s.tail_fraction_max);
    j["steps"] = s.steps;
    j["status"] = to_string(s.status);
    j["series"] = s.series_path;
    return j;
}

RunSummary run_from_json(const ordered_json& j) {
    RunSummary s;
    s.alpha = j.at("alpha").get<double>();
    s.n = j.at("n").get<int>();
    s.t_final = j.at("t_final").get<double>();
    s.max_q = number_or(j.at("M"), std::numeric_limits<double>::quiet_NaN());
    s.t_argmax = number_or(j.at("t_argmax"), 0.0);
    s.q_final = number_or(j.at("q_final"), std::numeric_limits<double>::quiet_NaN());
    s.drift = number_or(j.at("drift"), std::numeric_limits<double>::quiet_NaN());
    s.tail_fraction_max = number_or(j.at("tail_fraction_max"), 0.0);
    s.steps = j.at("steps").get<long>();
    s.status = run_status_from_string(j.at("status").get<std::string>());
    s.series_path = j.at("series").get<std::string>();
    return s;
}

}  // namespace

SeriesWriter::SeriesWriter(const std::filesystem::path& path)
    : out_(path, std::ios::trunc), path_(path), last_t_(0.0) {
    if (!out_) throw IoError("cannot open series file for writing: " + path.string());
    out_ << kSeriesHeader << '\n';
}

void SeriesWriter::append(const TimeSeriesRecord& rec) {
    if (!first_ && !(rec.t > last_t_)) {
        throw IoError("series rows must be strictly increasing in t: " + path_.string());
    }
    first_ = false;
    last_t_ = rec.t;
    out_ << format_double(rec.t) << ',' << format_double(rec.energy) << ','
         << format_double(rec.enstrophy) << ',' << format_double(rec.alpha_energy) << ','
         << format_double(rec.q) << ',' << format_double(rec.dt_used) << '\n';
    if (!out_) throw IoError("series write failed: " + path_.string());
}

std::vector<TimeSeriesRecord> read_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open series file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kSeriesHeader) {
        throw IoError("bad series header in " + path.string());
    }
    std::vector<TimeSeriesRecord> series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<std::string_view, 6> cols;
        std::string_view rest = line;
        for (std::size_t c = 0; c < 6; ++c) {
            const std::size_t comma = rest.find(',');
            if ((comma == std::string_view::npos) != (c == 5)) {
                throw IoError("bad series row in " + path.string() + ": " + line);
            }
            cols[c] = rest.substr(0, comma);
            if (comma != std::string_view::npos) rest = rest.substr(comma + 1);
        }
        TimeSeriesRecord rec;
        rec.t = parse_double(cols[0], path);
        rec.energy = parse_double(cols[1], path);
        rec.enstrophy = parse_double(cols[2], path);
        rec.alpha_energy = parse_double(cols[3], path);
        rec.q = parse_double(cols[4], path);
        rec.dt_used = parse_double(cols[5], path);
        if (!series.empty() && !(rec.t > series.back().t)) {
            throw IoError("series rows not strictly increasing in t: " + path.string());
        }
        series.push_back(rec);
    }
    return series;
}

void write_run_summary(const std::filesystem::path& path, const RunSummary& summary) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open summary for writing: " + path.string());
    out << run_to_json(summary).dump(2) << '\n';
    if (!out) throw IoError("summary write failed: " + path.string());
}

RunSummary read_run_summary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open summary: " + path.string());
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad summary JSON in " + path.string() + ": " + e.what());
    }
    return run_from_json(j);
}

void write_sweep_summary(const std::filesystem::path& path, const SweepResult& sweep,
                         const SweepAnalysis& analysis) {
    ordered_json j;
    j["schema"] = "voigt-sweep-summary/1";

    ordered_json cfg;
    cfg["n"] = sweep.config.n;
    ordered_json ic;
    ic["kind"] = to_string(sweep.config.ic.kind);
    ic["A"] = sweep.config.ic.A;
    ic["B"] = sweep.config.ic.B;
    ic["C"] = sweep.config.ic.C;
    ic["modes"] = sweep.config.ic.shear_modes;
    ic["k0"] = sweep.config.ic.k0;
    ic["seed"] = sweep.config.ic.seed;
    cfg["ic"] = ic;
    cfg["alphas"] = sweep.config.alphas;
    ordered_json time;
    time["adaptive"] = sweep.config.integrator.adaptive;
    time["dt"] = sweep.config.integrator.dt;
    time["cfl"] = sweep.config.integrator.cfl;
    time["dt_max"] = sweep.config.integrator.dt_max;
    time["t_final"] = sweep.config.integrator.t_final;
    time["sample_stride"] = sweep.config.integrator.sample_stride;
    cfg["time"] = time;
    cfg["drift_abort_tol"] = sweep.config.integrator.drift_abort_tol;
    ordered_json thresholds;
    thresholds["beta_threshold"] = sweep.config.thresholds.beta_threshold;
    thresholds["slack"] = sweep.config.thresholds.slack;
    thresholds["r2_threshold"] = sweep.config.thresholds.r2_threshold;
    cfg["fit"] = thresholds;
    cfg["time_grid_points"] = sweep.config.time_grid_points;
    j["config"] = cfg;

    ordered_json runs = ordered_json::array();
    for (const SweepRun& run : sweep.runs) runs.push_back(run_to_json(run.summary));
    j["runs"] = runs;

    ordered_json new_criterion;
    ordered_json points = ordered_json::array();
    for (const auto& [alpha, m] : analysis.new_curve) {
        points.push_back(ordered_json::array({alpha, m}));
    }
    new_criterion["points"] = points;
    new_criterion["fit"] = fit_to_json(analysis.verdict.fit_new);
    j["new_criterion"] = new_criterion;

    ordered_json old_criterion;
    old_criterion["time_grid"] = analysis.old_curve.time_grid;
    ordered_json fits = ordered_json::array();
    for (std::size_t k = 0; k < analysis.old_curve.fits.size(); ++k) {
        ordered_json f = fit_to_json(analysis.old_curve.fits[k]);
        f["t"] = analysis.old_curve.time_grid[k];
        fits.push_back(f);
    }
    old_criterion["fits"] = fits;
    old_criterion["argmax_time_index"] = analysis.old_curve.argmax_time_index;
    old_criterion["sup_extrapolated"] = json_number(analysis.old_curve.sup_extrapolated);
    j["old_criterion"] = old_criterion;

    ordered_json comparison;
    comparison["checked"] = analysis.comparison.checked;
    comparison["violations"] = analysis.comparison.violations;
    j["comparison"] = comparison;

    ordered_json verdict;
    verdict["new_criterion_evidence"] = to_string(analysis.verdict.new_evidence);
    verdict["old_criterion_evidence"] = to_string(analysis.verdict.old_evidence);
    verdict["fit_new"] = fit_to_json(analysis.verdict.fit_new);
    verdict["fit_old"] = fit_to_json(analysis.verdict.fit_old);
    verdict["thresholds"] = thresholds;
    j["verdict"] = verdict;

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open sweep summary for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("sweep summary write failed: " + path.string());
}

SweepResult read_sweep_artifacts(const std::filesystem::path& dir) {
    const std::filesystem::path summary_path = dir / "sweep.summary.json";
    std::ifstream in(summary_path);
    if (!in) throw IoError("cannot open sweep summary: " + summary_path.string());
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad sweep summary JSON in " + summary_path.string() + ": " + e.what());
    }

    SweepResult sweep;
    try {
        const auto& cfg = j.at("config");
        sweep.config.n = cfg.at("n").get<int>();
        const auto& ic = cfg.at("ic");
        sweep.config.ic.kind = ic_kind_from_string(ic.at("kind").get<std::string>());
        sweep.config.ic.A = ic.at("A").get<double>();
        sweep.config.ic.B = ic.at("B").get<double>();
        sweep.config.ic.C = ic.at("C").get<double>();
        sweep.config.ic.shear_modes = ic.at("modes").get<int>();
        sweep.config.ic.k0 = ic.at("k0").get<double>();
        sweep.config.ic.seed = ic.at("seed").get<std::uint64_t>();
        sweep.config.alphas = cfg.at("alphas").get<std::vector<double>>();
        const auto& time = cfg.at("time");
        sweep.config.integrator.adaptive = time.at("adaptive").get<bool>();
        sweep.config.integrator.dt = time.at("dt").get<double>();
        sweep.config.integrator.cfl = time.at("cfl").get<double>();
        sweep.config.integrator.dt_max = time.at("dt_max").get<double>();
        sweep.config.integrator.t_final = time.at("t_final").get<double>();
        sweep.config.integrator.sample_stride = time.at("sample_stride").get<int>();
        sweep.config.integrator.drift_abort_tol = cfg.at("drift_abort_tol").get<double>();
        const auto& fit = cfg.at("fit");
        sweep.config.thresholds.beta_threshold = fit.at("beta_threshold").get<double>();
        sweep.config.thresholds.slack = fit.at("slack").get<double>();
        sweep.config.thresholds.r2_threshold = fit.at("r2_threshold").get<double>();
        sweep.config.time_grid_points = cfg.at("time_grid_points").get<int>();

        for (const auto& run_json : j.at("runs")) {
            SweepRun run;
            run.summary = run_from_json(run_json);
            if (!run.summary.series_path.empty()) {
                run.series = read_series(dir / run.summary.series_path);
            }
            sweep.runs.push_back(std::move(run));
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError("sweep summary missing fields in " + summary_path.string() + ": " +
                      e.what());
    }
    return sweep;
}

}  // namespace voigt
