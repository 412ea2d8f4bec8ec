#pragma once

#include <stdexcept>
#include <vector>

#include "voigt/grid.hpp"

namespace voigt {

/// Regularization length alpha >= 0 and the mode-wise inverse Helmholtz
/// weights w(k) = 1/(1 + alpha^2 |k|^2) it induces on the grid.
///
/// w(0) = 1, 0 < w <= 1 everywhere, and alpha = 0 gives w == 1, which turns
/// the Voigt right-hand side into the plain Euler one.
class VoigtParams {
  public:
    VoigtParams(double alpha, const Grid& g) : alpha_(alpha), weights_(g.size(), 1.0) {
        if (!(alpha >= 0.0)) throw std::invalid_argument("VoigtParams: alpha must be >= 0");
        if (alpha == 0.0) return;
        const int n = g.n();
        const double a2 = alpha * alpha;
        std::size_t flat = 0;
        for (int jz = 0; jz < n; ++jz) {
            const double kz = g.wavenumber(jz);
            for (int jy = 0; jy < n; ++jy) {
                const double ky = g.wavenumber(jy);
                for (int jx = 0; jx < n; ++jx, ++flat) {
                    const double kx = g.wavenumber(jx);
                    weights_[flat] = 1.0 / (1.0 + a2 * (kx * kx + ky * ky + kz * kz));
                }
            }
        }
    }

    double alpha() const { return alpha_; }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

  private:
    double alpha_;
    std::vector<double> weights_;
};

}  // namespace voigt
