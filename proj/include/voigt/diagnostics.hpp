#pragma once

#include <vector>

#include "voigt/field.hpp"
#include "voigt/voigt_params.hpp"

namespace voigt {

/// One sampled row of the per-run diagnostics series.
struct TimeSeriesRecord {
    double t = 0.0;
    double energy = 0.0;        // ||u||_L2^2
    double enstrophy = 0.0;     // ||curl u||_L2^2 == ||grad u||_L2^2 for solenoidal u
    double alpha_energy = 0.0;  // ||u||^2 + alpha^2 ||grad u||^2
    double q = 0.0;             // alpha * ||grad u||_L2
    double dt_used = 0.0;
};

double energy(const SpectralVectorField& u);

/// ||grad u||^2; equals the squared vorticity norm for solenoidal fields,
/// so no curl is evaluated here. identity_residual keeps the equality
/// independently testable.
double enstrophy(const SpectralVectorField& u);

/// sum_k (1 + alpha^2 |k|^2) |u(k)|^2, the exactly conserved Voigt quantity.
double alpha_energy(const SpectralVectorField& u, const VoigtParams& p);

/// q = alpha * ||grad u||_L2, the blow-up criterion integrand.
double q_value(const SpectralVectorField& u, const VoigtParams& p);

/// | ||grad u|| - ||curl u|| | / max(||grad u||, eps). Near zero only for
/// divergence-free mean-free fields; a pure gradient field scores 1.
double identity_residual(const SpectralVectorField& u);

/// Shell-averaged spectrum E(kappa), kappa = 0..n/2, binned by nearest
/// integer |m| with the boundary |m| = kappa + 1/2 assigned downward and
/// super-Nyquist corner modes clamped into the last shell so the shells
/// partition the energy exactly.
std::vector<double> energy_spectrum(const SpectralVectorField& u);

/// Fraction of energy in the top third of the shells; resolution health
/// indicator (reported, not enforced).
double spectrum_tail_fraction(const std::vector<double>& shells);

TimeSeriesRecord sample_diagnostics(const SpectralVectorField& u, const VoigtParams& p,
                                    double t, double dt_used);

}  // namespace voigt
