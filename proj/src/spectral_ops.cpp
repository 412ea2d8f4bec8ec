#include "voigt/spectral_ops.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>

#include "voigt/reduction.hpp"

namespace voigt {

namespace {

constexpr std::complex<double> kImagUnit{0.0, 1.0};

template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
    const int n = g.n();
    std::size_t flat = 0;
    for (int jz = 0; jz < n; ++jz) {
        const double kz = g.wavenumber(jz);
        for (int jy = 0; jy < n; ++jy) {
            const double ky = g.wavenumber(jy);
            for (int jx = 0; jx < n; ++jx, ++flat) {
                fn(flat, g.wavenumber(jx), ky, kz);
            }
        }
    }
}

}  // namespace

SpectralScalarField dealias(SpectralScalarField F) {
    const Grid& g = F.grid();
    const int n = g.n();
    std::size_t flat = 0;
    for (int jz = 0; jz < n; ++jz) {
        const bool cz = 3 * std::abs(g.mode(jz)) > n;
        for (int jy = 0; jy < n; ++jy) {
            const bool cy = cz || 3 * std::abs(g.mode(jy)) > n;
            for (int jx = 0; jx < n; ++jx, ++flat) {
                if (cy || 3 * std::abs(g.mode(jx)) > n) F[flat] = {0.0, 0.0};
            }
        }
    }
    return F;
}

SpectralVectorField dealias(SpectralVectorField F) {
    for (int c = 0; c < 3; ++c) F[c] = dealias(std::move(F[c]));
    return F;
}

SpectralScalarField derivative(const SpectralScalarField& F, int axis) {
    const Grid& g = F.grid();
    SpectralScalarField out(g);
    for_each_mode(g, [&](std::size_t i, double kx, double ky, double kz) {
        const double k = axis == 0 ? kx : (axis == 1 ? ky : kz);
        out[i] = kImagUnit * k * F[i];
    });
    return out;
}

SpectralVectorField gradient(const SpectralScalarField& F) {
    const Grid& g = F.grid();
    SpectralVectorField out(g);
    for_each_mode(g, [&](std::size_t i, double kx, double ky, double kz) {
        const auto v = kImagUnit * F[i];
        out[0][i] = kx * v;
        out[1][i] = ky * v;
        out[2][i] = kz * v;
    });
    return out;
}

SpectralScalarField divergence(const SpectralVectorField& V) {
    const Grid& g = V.grid();
    SpectralScalarField out(g);
    for_each_mode(g, [&](std::size_t i, double kx, double ky, double kz) {
        out[i] = kImagUnit * (kx * V[0][i] + ky * V[1][i] + kz * V[2][i]);
    });
    return out;
}

SpectralVectorField curl(const SpectralVectorField& V) {
    const Grid& g = V.grid();
    SpectralVectorField out(g);
    for_each_mode(g, [&](std::size_t i, double kx, double ky, double kz) {
        out[0][i] = kImagUnit * (ky * V[2][i] - kz * V[1][i]);
        out[1][i] = kImagUnit * (kz * V[0][i] - kx * V[2][i]);
        out[2][i] = kImagUnit * (kx * V[1][i] - ky * V[0][i]);
    });
    return out;
}

SpectralVectorField leray_project(SpectralVectorField V) {
    const Grid& g = V.grid();
    for_each_mode(g, [&](std::size_t i, double kx, double ky, double kz) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) return;  // zero and Nyquist-only modes: gradient part is empty
        const auto kdotv = (kx * V[0][i] + ky * V[1][i] + kz * V[2][i]) / k2;
        V[0][i] -= kx * kdotv;
        V[1][i] -= ky * kdotv;
        V[2][i] -= kz * kdotv;
    });
    for (int c = 0; c < 3; ++c) V[c][0] = {0.0, 0.0};
    return V;
}

void zero_mean(SpectralVectorField& V) {
    for (int c = 0; c < 3; ++c) V[c][0] = {0.0, 0.0};
}

double l2_norm(const SpectralScalarField& F) {
    const double s = pairwise_sum(0, F.grid().size(),
                                  [&](std::size_t i) { return std::norm(F[i]); });
    return std::sqrt(s);
}

double l2_norm(const SpectralVectorField& V) {
    const double s = pairwise_sum(0, V.grid().size(), [&](std::size_t i) {
        return std::norm(V[0][i]) + std::norm(V[1][i]) + std::norm(V[2][i]);
    });
    return std::sqrt(s);
}

namespace {

template <class Field>
double grad_sq_sum(const Field& F, int ncomp) {
    const Grid& g = F.grid();
    const int n = g.n();
    // Flatten |k|^2 per mode into the pairwise reduction via index decode;
    // decode cost is trivial next to the FFTs this supports.
    return pairwise_sum(0, g.size(), [&](std::size_t i) {
        const int jx = static_cast<int>(i % static_cast<std::size_t>(n));
        const int jy = static_cast<int>((i / static_cast<std::size_t>(n)) % n);
        const int jz = static_cast<int>(i / (static_cast<std::size_t>(n) * n));
        const double kx = g.wavenumber(jx);
        const double ky = g.wavenumber(jy);
        const double kz = g.wavenumber(jz);
        const double k2 = kx * kx + ky * ky + kz * kz;
        if constexpr (std::is_same_v<Field, SpectralScalarField>) {
            (void)ncomp;
            return k2 * std::norm(F[i]);
        } else {
            double s = 0.0;
            for (int c = 0; c < ncomp; ++c) s += std::norm(F[c][i]);
            return k2 * s;
        }
    });
}

}  // namespace

double grad_l2_norm(const SpectralScalarField& F) { return std::sqrt(grad_sq_sum(F, 1)); }

double grad_l2_norm(const SpectralVectorField& V) { return std::sqrt(grad_sq_sum(V, 3)); }

double divergence_residual(const SpectralVectorField& V) {
    const double norm = l2_norm(V);
    if (norm == 0.0) return 0.0;
    double worst = 0.0;
    for_each_mode(V.grid(), [&](std::size_t i, double kx, double ky, double kz) {
        worst = std::max(worst, std::abs(kx * V[0][i] + ky * V[1][i] + kz * V[2][i]));
    });
    return worst / norm;
}

}  // namespace voigt
