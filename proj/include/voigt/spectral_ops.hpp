#pragma once

#include "voigt/field.hpp"
#include "voigt/grid.hpp"

namespace voigt {

/// 2/3-rule sharp cutoff: zeroes every coefficient with max_i |m_i| > n/3.
SpectralScalarField dealias(SpectralScalarField F);
SpectralVectorField dealias(SpectralVectorField F);

/// Spectral derivative along one axis (mode-wise ik multiply).
SpectralScalarField derivative(const SpectralScalarField& F, int axis);

SpectralVectorField gradient(const SpectralScalarField& F);
SpectralScalarField divergence(const SpectralVectorField& V);
SpectralVectorField curl(const SpectralVectorField& V);

/// Projects onto divergence-free fields: V <- V - k (k.V)/|k|^2 per mode,
/// with the zero mode set to 0 (mean-free convention).
SpectralVectorField leray_project(SpectralVectorField V);

/// Zeroes the spatial-average mode of every component.
void zero_mean(SpectralVectorField& V);

/// Parseval L2 norms with a deterministic pairwise reduction.
double l2_norm(const SpectralScalarField& F);
double l2_norm(const SpectralVectorField& V);
double grad_l2_norm(const SpectralScalarField& F);
double grad_l2_norm(const SpectralVectorField& V);

/// max_k |k . u(k)| / ||u||, the divergence residual used by contracts.
double divergence_residual(const SpectralVectorField& V);

}  // namespace voigt
