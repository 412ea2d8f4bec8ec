#pragma once

#include <cstdint>
#include <string>

#include "voigt/field.hpp"
#include "voigt/grid.hpp"

namespace voigt {

enum class IcKind { TaylorGreen, Abc, Shear, RandomSolenoidal };

const char* to_string(IcKind k);
IcKind ic_kind_from_string(const std::string& s);

/// Initial-condition recipe. Every generated field is mean-free,
/// divergence-free, and confined to the dealiased band |m_i| <= n/3.
struct InitialConditionSpec {
    IcKind kind = IcKind::TaylorGreen;
    // abc amplitudes
    double A = 1.0;
    double B = 1.0;
    double C = 1.0;
    // shear: phi(x3) = sum_{j=1..modes} sin(2 pi j x3) / j
    int shear_modes = 1;
    // random-solenoidal: shell spectrum E(kappa) ~ kappa^4 exp(-2 kappa^2 / k0^2),
    // rescaled to unit energy
    double k0 = 3.0;
    std::uint64_t seed = 0;
};

/// Generates the requested field on g. Rejects parameters whose modes
/// exceed the dealias band n/3.
SpectralVectorField generate_ic(const InitialConditionSpec& spec, const Grid& g);

}  // namespace voigt
