#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "voigt/field.hpp"
#include "voigt/transform.hpp"

namespace voigt {

/// On-disk velocity snapshot: magic "EVCK", u32 version, u32 n, f64 alpha,
/// f64 t, then 3*n^3 little-endian f64 real-space samples, component-major,
/// x-fastest within each component. Round-trips are bit-exact.
struct Checkpoint {
    static constexpr std::uint32_t kVersion = 1;

    std::uint32_t n = 0;
    double alpha = 0.0;
    double t = 0.0;
    std::vector<double> samples;  // 3 * n^3
};

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ck);

/// Validates magic, version, payload size, and (when given) the expected n.
Checkpoint read_checkpoint(const std::filesystem::path& path,
                           std::optional<int> expected_n = std::nullopt);

Checkpoint make_checkpoint(const SpectralVectorField& u, double alpha, double t,
                           SpectralTransform& fft);

SpectralVectorField checkpoint_to_spectral(const Checkpoint& ck, SpectralTransform& fft);

}  // namespace voigt
