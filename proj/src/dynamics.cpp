#include "voigt/dynamics.hpp"

#include <cmath>
#include <complex>

#include "voigt/errors.hpp"
#include "voigt/spectral_ops.hpp"

namespace voigt {

SpectralVectorField nonlinear_term(const SpectralVectorField& u, DynamicsWorkspace& ws) {
    const Grid& g = u.grid();
    const std::size_t size = g.size();
    SpectralTransform& fft = ws.transform();

    RealVectorField u_phys = fft.inverse(u);

    RealVectorField product(g);
    for (int i = 0; i < 3; ++i) {
        auto& acc = product[i].samples();
        for (int j = 0; j < 3; ++j) {
            const RealScalarField du_ij = fft.inverse(derivative(u[i], j));
            const auto& uj = u_phys[j].samples();
            for (std::size_t x = 0; x < size; ++x) acc[x] += uj[x] * du_ij[x];
        }
        for (std::size_t x = 0; x < size; ++x) {
            if (!std::isfinite(acc[x])) {
                throw NumericsError("nonlinear term: non-finite physical product "
                                    "(discretization unstable)");
            }
        }
    }

    return dealias(fft.forward(product));
}

SpectralVectorField voigt_rhs(const SpectralVectorField& u, const VoigtParams& p,
                              DynamicsWorkspace& ws) {
    SpectralVectorField rhs = leray_project(nonlinear_term(u, ws));
    const std::size_t size = u.grid().size();
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < size; ++i) rhs[c][i] *= -p.weight(i);
    }
    return rhs;
}

SpectralScalarField pressure_field(const SpectralVectorField& u, DynamicsWorkspace& ws) {
    const Grid& g = u.grid();
    const SpectralVectorField nl = nonlinear_term(u, ws);
    SpectralScalarField p(g);
    const int n = g.n();
    constexpr std::complex<double> imag_unit{0.0, 1.0};
    std::size_t flat = 0;
    for (int jz = 0; jz < n; ++jz) {
        const double kz = g.wavenumber(jz);
        for (int jy = 0; jy < n; ++jy) {
            const double ky = g.wavenumber(jy);
            for (int jx = 0; jx < n; ++jx, ++flat) {
                const double kx = g.wavenumber(jx);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;  // zero mode: pressure gauge
                p[flat] = imag_unit *
                          (kx * nl[0][flat] + ky * nl[1][flat] + kz * nl[2][flat]) / k2;
            }
        }
    }
    return p;
}

}  // namespace voigt
