#pragma once

#include "voigt/field.hpp"
#include "voigt/grid.hpp"
#include "voigt/transform.hpp"
#include "voigt/voigt_params.hpp"

namespace voigt {

/// Per-thread transform context for the right-hand-side evaluation. One
/// workspace serves one integration; never share across threads.
class DynamicsWorkspace {
  public:
    explicit DynamicsWorkspace(const Grid& g) : transform_(g) {}

    const Grid& grid() const { return transform_.grid(); }
    SpectralTransform& transform() { return transform_; }

  private:
    SpectralTransform transform_;
};

/// Convective term (u.grad)u, evaluated pseudospectrally: u and the nine
/// derivatives d_j u_i go to physical space, the products are formed
/// pointwise, and the result is transformed back and dealiased.
SpectralVectorField nonlinear_term(const SpectralVectorField& u, DynamicsWorkspace& ws);

/// du/dt = -w(k) * P[(u.grad)u] with P the Leray projection; alpha = 0 is
/// exactly the incompressible Euler right-hand side.
SpectralVectorField voigt_rhs(const SpectralVectorField& u, const VoigtParams& p,
                              DynamicsWorkspace& ws);

/// Pressure recovered from the divergence of the momentum equation:
/// p(k) = i k.N(k) / |k|^2 for k != 0, p(0) = 0. Diagnostic only; the
/// evolution uses the projected form.
SpectralScalarField pressure_field(const SpectralVectorField& u, DynamicsWorkspace& ws);

}  // namespace voigt
