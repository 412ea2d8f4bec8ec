#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "voigt/criterion.hpp"
#include "voigt/diagnostics.hpp"
#include "voigt/integrate.hpp"

namespace voigt {

/// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string format_double(double v);

/// Streaming CSV writer for the diagnostics series
/// (header: t,energy,enstrophy,alpha_energy,q,dt). Rows must be strictly
/// increasing in t.
class SeriesWriter {
  public:
    explicit SeriesWriter(const std::filesystem::path& path);
    void append(const TimeSeriesRecord& rec);

  private:
    std::ofstream out_;
    std::filesystem::path path_;
    double last_t_;
    bool first_ = true;
};

std::vector<TimeSeriesRecord> read_series(const std::filesystem::path& path);

void write_run_summary(const std::filesystem::path& path, const RunSummary& summary);
RunSummary read_run_summary(const std::filesystem::path& path);

void write_sweep_summary(const std::filesystem::path& path, const SweepResult& sweep,
                         const SweepAnalysis& analysis);

/// Reconstructs a SweepResult (runs, series, thresholds, time grid) from the
/// artifacts under dir, written by a prior `sweep`. Series paths in the run
/// summaries are resolved relative to dir.
SweepResult read_sweep_artifacts(const std::filesystem::path& dir);

}  // namespace voigt
