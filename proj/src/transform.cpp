#include "voigt/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>
#include <utility>

#include "voigt/errors.hpp"

namespace voigt {

namespace {

// The FFTW planner is a single shared resource; execution of distinct plans
// is thread-safe, planning and destruction are not.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::string location_string(const Grid& g, std::size_t flat) {
    const auto n = static_cast<std::size_t>(g.n());
    const std::size_t jx = flat % n;
    const std::size_t jy = (flat / n) % n;
    const std::size_t jz = flat / (n * n);
    return "(" + std::to_string(jx) + "," + std::to_string(jy) + "," + std::to_string(jz) + ")";
}

}  // namespace

SpectralTransform::SpectralTransform(const Grid& g) : grid_(g) {
    const int n = grid_.n();
    buffer_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(grid_.size()));
    if (buffer_ == nullptr) throw std::bad_alloc();
    auto* raw = reinterpret_cast<fftw_complex*>(buffer_);
    std::lock_guard<std::mutex> lock(planner_mutex());
    forward_plan_ = reinterpret_cast<fftw_plan_s*>(
        fftw_plan_dft_3d(n, n, n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE));
    backward_plan_ = reinterpret_cast<fftw_plan_s*>(
        fftw_plan_dft_3d(n, n, n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE));
}

SpectralTransform::~SpectralTransform() {
    if (buffer_ == nullptr) return;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(reinterpret_cast<fftw_plan>(forward_plan_));
        fftw_destroy_plan(reinterpret_cast<fftw_plan>(backward_plan_));
    }
    fftw_free(buffer_);
    buffer_ = nullptr;
}

SpectralTransform::SpectralTransform(SpectralTransform&& other) noexcept
    : grid_(other.grid_),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr)),
      buffer_(std::exchange(other.buffer_, nullptr)) {}

SpectralTransform& SpectralTransform::operator=(SpectralTransform&& other) noexcept {
    if (this != &other) {
        this->~SpectralTransform();
        new (this) SpectralTransform(std::move(other));
    }
    return *this;
}

SpectralScalarField SpectralTransform::forward(const RealScalarField& f) {
    const std::size_t size = grid_.size();
    const auto& in = f.samples();
    for (std::size_t i = 0; i < size; ++i) {
        if (!std::isfinite(in[i])) {
            throw NumericsError("forward transform: non-finite sample at " +
                                location_string(grid_, i));
        }
        buffer_[i] = {in[i], 0.0};
    }
    fftw_execute(reinterpret_cast<fftw_plan>(forward_plan_));
    SpectralScalarField out(grid_);
    const double scale = 1.0 / static_cast<double>(size);
    for (std::size_t i = 0; i < size; ++i) out[i] = buffer_[i] * scale;
    return out;
}

SpectralVectorField SpectralTransform::forward(const RealVectorField& f) {
    SpectralVectorField out(grid_);
    for (int c = 0; c < 3; ++c) out[c] = forward(f[c]);
    return out;
}

RealScalarField SpectralTransform::inverse(const SpectralScalarField& F) {
    const std::size_t size = grid_.size();
    for (std::size_t i = 0; i < size; ++i) buffer_[i] = F[i];
    fftw_execute(reinterpret_cast<fftw_plan>(backward_plan_));

    double max_re = 0.0;
    double max_im = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        max_re = std::max(max_re, std::abs(buffer_[i].real()));
        max_im = std::max(max_im, std::abs(buffer_[i].imag()));
    }
    if (max_im > kImagResidueTol * std::max(max_re, 1e-300)) {
        // Locate the worst Hermitian-symmetry violation for the diagnostic.
        const int n = grid_.n();
        double worst = -1.0;
        int wx = 0, wy = 0, wz = 0;
        for (int jz = 0; jz < n; ++jz) {
            for (int jy = 0; jy < n; ++jy) {
                for (int jx = 0; jx < n; ++jx) {
                    const int cx = jx == 0 ? 0 : n - jx;
                    const int cy = jy == 0 ? 0 : n - jy;
                    const int cz = jz == 0 ? 0 : n - jz;
                    const auto mismatch =
                        F[grid_.index(jx, jy, jz)] - std::conj(F[grid_.index(cx, cy, cz)]);
                    if (std::abs(mismatch) > worst) {
                        worst = std::abs(mismatch);
                        wx = grid_.mode(jx);
                        wy = grid_.mode(jy);
                        wz = grid_.mode(jz);
                    }
                }
            }
        }
        throw NumericsError(
            "inverse transform: Hermitian symmetry violated, worst mode (" +
            std::to_string(wx) + "," + std::to_string(wy) + "," + std::to_string(wz) +
            "), imaginary residue " + std::to_string(max_im / std::max(max_re, 1e-300)));
    }

    RealScalarField out(grid_);
    for (std::size_t i = 0; i < size; ++i) out[i] = buffer_[i].real();
    return out;
}

RealVectorField SpectralTransform::inverse(const SpectralVectorField& F) {
    RealVectorField out(grid_);
    for (int c = 0; c < 3; ++c) out[c] = inverse(F[c]);
    return out;
}

}  // namespace voigt
