#pragma once

#include <complex>
#include <cstddef>

#include "voigt/field.hpp"
#include "voigt/grid.hpp"

// Forward declaration keeps fftw3.h out of the public headers.
struct fftw_plan_s;

namespace voigt {

/// Relative imaginary residue tolerated when inverting a nominally
/// Hermitian-symmetric spectrum back to real samples.
inline constexpr double kImagResidueTol = 1e-12;

/// FFTW-backed transforms between collocation samples and spectral
/// coefficients.
///
/// Normalization: the forward transform carries the 1/n^3 factor, so the
/// coefficient of mode m is (1/n^3) * sum_x f(x) exp(-i k.x) and Parseval
/// reads ||f||_L2^2 = sum_m |coeff(m)|^2 on the unit torus.
///
/// Each instance owns its FFTW plans and an aligned scratch buffer; use one
/// instance per thread. Plan creation is serialized internally (the FFTW
/// planner is not thread-safe) and uses FFTW_ESTIMATE so plan choice, and
/// hence rounding, is reproducible.
class SpectralTransform {
  public:
    explicit SpectralTransform(const Grid& g);
    ~SpectralTransform();

    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;
    SpectralTransform(SpectralTransform&& other) noexcept;
    SpectralTransform& operator=(SpectralTransform&& other) noexcept;

    const Grid& grid() const { return grid_; }

    /// Rejects non-finite samples with the offending location.
    SpectralScalarField forward(const RealScalarField& f);
    SpectralVectorField forward(const RealVectorField& f);

    /// Checks the imaginary residue against kImagResidueTol; a violation is
    /// reported as a Hermitian-symmetry error naming the worst mode pair.
    RealScalarField inverse(const SpectralScalarField& F);
    RealVectorField inverse(const SpectralVectorField& F);

  private:
    Grid grid_;
    fftw_plan_s* forward_plan_ = nullptr;
    fftw_plan_s* backward_plan_ = nullptr;
    std::complex<double>* buffer_ = nullptr;  // fftw-aligned, size n^3
};

}  // namespace voigt
