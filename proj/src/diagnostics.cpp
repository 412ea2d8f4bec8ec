#include "voigt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "voigt/reduction.hpp"
#include "voigt/spectral_ops.hpp"

namespace voigt {

double energy(const SpectralVectorField& u) {
    const double n = l2_norm(u);
    return n * n;
}

double enstrophy(const SpectralVectorField& u) {
    const double n = grad_l2_norm(u);
    return n * n;
}

double alpha_energy(const SpectralVectorField& u, const VoigtParams& p) {
    // 1/w(k) = 1 + alpha^2 |k|^2, so the conserved quantity is the
    // weight-inverse-weighted Parseval sum.
    return pairwise_sum(0, u.grid().size(), [&](std::size_t i) {
        const double mode_sq = std::norm(u[0][i]) + std::norm(u[1][i]) + std::norm(u[2][i]);
        return mode_sq / p.weight(i);
    });
}

double q_value(const SpectralVectorField& u, const VoigtParams& p) {
    return p.alpha() * grad_l2_norm(u);
}

double identity_residual(const SpectralVectorField& u) {
    const double grad_norm = grad_l2_norm(u);
    const double curl_norm = l2_norm(curl(u));
    return std::abs(grad_norm - curl_norm) / std::max(grad_norm, 1e-300);
}

std::vector<double> energy_spectrum(const SpectralVectorField& u) {
    const Grid& g = u.grid();
    const int n = g.n();
    const int shell_count = n / 2 + 1;
    std::vector<double> shells(static_cast<std::size_t>(shell_count), 0.0);
    std::size_t flat = 0;
    for (int jz = 0; jz < n; ++jz) {
        const int mz = g.mode(jz);
        for (int jy = 0; jy < n; ++jy) {
            const int my = g.mode(jy);
            for (int jx = 0; jx < n; ++jx, ++flat) {
                const int mx = g.mode(jx);
                const double mag = std::sqrt(double(mx) * mx + double(my) * my + double(mz) * mz);
                int kappa = static_cast<int>(std::ceil(mag - 0.5));
                kappa = std::clamp(kappa, 0, shell_count - 1);
                shells[static_cast<std::size_t>(kappa)] +=
                    std::norm(u[0][flat]) + std::norm(u[1][flat]) + std::norm(u[2][flat]);
            }
        }
    }
    return shells;
}

double spectrum_tail_fraction(const std::vector<double>& shells) {
    const std::size_t count = shells.size();
    const std::size_t tail_start = count - count / 3;
    double total = 0.0;
    double tail = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        total += shells[k];
        if (k >= tail_start) tail += shells[k];
    }
    return total > 0.0 ? tail / total : 0.0;
}

TimeSeriesRecord sample_diagnostics(const SpectralVectorField& u, const VoigtParams& p,
                                    double t, double dt_used) {
    TimeSeriesRecord rec;
    rec.t = t;
    rec.energy = energy(u);
    rec.enstrophy = enstrophy(u);
    const double alpha = p.alpha();
    rec.alpha_energy = alpha_energy(u, p);
    rec.q = alpha * std::sqrt(rec.enstrophy);
    rec.dt_used = dt_used;
    return rec;
}

}  // namespace voigt
