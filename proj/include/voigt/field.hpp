#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "voigt/grid.hpp"

namespace voigt {

/// Real scalar samples at the n^3 collocation points, x-fastest.
class RealScalarField {
  public:
    explicit RealScalarField(const Grid& g) : grid_(g), samples_(g.size(), 0.0) {}

    const Grid& grid() const { return grid_; }
    double& operator[](std::size_t i) { return samples_[i]; }
    double operator[](std::size_t i) const { return samples_[i]; }
    double& at(int jx, int jy, int jz) { return samples_[grid_.index(jx, jy, jz)]; }
    double at(int jx, int jy, int jz) const { return samples_[grid_.index(jx, jy, jz)]; }
    std::vector<double>& samples() { return samples_; }
    const std::vector<double>& samples() const { return samples_; }

  private:
    Grid grid_;
    std::vector<double> samples_;
};

/// Three-component real vector field.
class RealVectorField {
  public:
    explicit RealVectorField(const Grid& g)
        : components_{RealScalarField(g), RealScalarField(g), RealScalarField(g)} {}

    const Grid& grid() const { return components_[0].grid(); }
    RealScalarField& operator[](int c) { return components_[static_cast<std::size_t>(c)]; }
    const RealScalarField& operator[](int c) const {
        return components_[static_cast<std::size_t>(c)];
    }

  private:
    std::array<RealScalarField, 3> components_;
};

/// Full-cube spectral coefficients of a real scalar field.
///
/// Contract: Hermitian symmetry coeff(-m) = conj(coeff(m)) within roundoff;
/// producers (forward transform, spectral calculus) preserve it, and the
/// inverse transform checks the resulting imaginary residue.
class SpectralScalarField {
  public:
    explicit SpectralScalarField(const Grid& g) : grid_(g), coeff_(g.size(), {0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }
    std::complex<double>& operator[](std::size_t i) { return coeff_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return coeff_[i]; }
    std::complex<double>& at(int jx, int jy, int jz) {
        return coeff_[grid_.index(jx, jy, jz)];
    }
    const std::complex<double>& at(int jx, int jy, int jz) const {
        return coeff_[grid_.index(jx, jy, jz)];
    }
    /// Coefficient of the signed mode triple (mx, my, mz).
    const std::complex<double>& mode(int mx, int my, int mz) const {
        return coeff_[grid_.index(grid_.index_of_mode(mx), grid_.index_of_mode(my),
                                  grid_.index_of_mode(mz))];
    }
    std::complex<double>& mode(int mx, int my, int mz) {
        return coeff_[grid_.index(grid_.index_of_mode(mx), grid_.index_of_mode(my),
                                  grid_.index_of_mode(mz))];
    }
    std::vector<std::complex<double>>& coefficients() { return coeff_; }
    const std::vector<std::complex<double>>& coefficients() const { return coeff_; }

  private:
    Grid grid_;
    std::vector<std::complex<double>> coeff_;
};

/// Three-component spectral vector field; houses the solver state u.
class SpectralVectorField {
  public:
    explicit SpectralVectorField(const Grid& g)
        : components_{SpectralScalarField(g), SpectralScalarField(g), SpectralScalarField(g)} {}

    const Grid& grid() const { return components_[0].grid(); }
    SpectralScalarField& operator[](int c) { return components_[static_cast<std::size_t>(c)]; }
    const SpectralScalarField& operator[](int c) const {
        return components_[static_cast<std::size_t>(c)];
    }

  private:
    std::array<SpectralScalarField, 3> components_;
};

// Small linear-algebra helpers used by the time stepper and analysis.

inline void add_scaled(SpectralScalarField& y, double a, const SpectralScalarField& x) {
    for (std::size_t i = 0; i < y.coefficients().size(); ++i) y[i] += a * x[i];
}

inline void add_scaled(SpectralVectorField& y, double a, const SpectralVectorField& x) {
    for (int c = 0; c < 3; ++c) add_scaled(y[c], a, x[c]);
}

inline SpectralVectorField scaled_sum(const SpectralVectorField& u, double a,
                                      const SpectralVectorField& v) {
    SpectralVectorField out = u;
    add_scaled(out, a, v);
    return out;
}

inline SpectralVectorField operator-(const SpectralVectorField& a,
                                     const SpectralVectorField& b) {
    SpectralVectorField out = a;
    add_scaled(out, -1.0, b);
    return out;
}

}  // namespace voigt
