#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace voigt {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Collocation and spectral layout for the periodic unit torus [0,1]^3.
///
/// Real fields hold n^3 samples at x_j = j/n, x-fastest. Spectral fields hold
/// the full cube of n^3 complex coefficients; storage index j in [0,n) maps to
/// the signed integer mode m = j for j < n/2 and m = j - n otherwise, so
/// m ranges over [-n/2, n/2). Wavevectors are k = 2*pi*m. The derivative
/// wavenumber of the Nyquist plane (m = -n/2) is zeroed, the usual convention
/// for spectral derivatives of real fields; dealiasing removes all Nyquist
/// content before it could matter.
class Grid {
  public:
    explicit Grid(int n) : n_(n) {
        if (n < 8 || n % 2 != 0) {
            throw std::invalid_argument("Grid: n must be even and >= 8, got " +
                                        std::to_string(n));
        }
        wavenumbers_.resize(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const int m = mode(j);
            wavenumbers_[static_cast<std::size_t>(j)] =
                (2 * m == -n) ? 0.0 : kTwoPi * m;
        }
    }

    int n() const { return n_; }
    std::size_t size() const {
        const auto n = static_cast<std::size_t>(n_);
        return n * n * n;
    }

    /// Signed integer mode for storage index j (m in [-n/2, n/2)).
    int mode(int j) const { return j < n_ / 2 ? j : j - n_; }

    /// Storage index for a signed mode (m in [-n/2, n/2)).
    int index_of_mode(int m) const { return m >= 0 ? m : m + n_; }

    /// Derivative wavenumber k = 2*pi*m for index j, zero at Nyquist.
    double wavenumber(int j) const {
        return wavenumbers_[static_cast<std::size_t>(j)];
    }

    std::size_t index(int jx, int jy, int jz) const {
        return (static_cast<std::size_t>(jz) * n_ + jy) * n_ + jx;
    }

    /// Largest |m_i| kept by the 2/3-rule dealias cutoff.
    int dealias_limit() const { return n_ / 3; }

    friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_; }

  private:
    int n_;
    std::vector<double> wavenumbers_;
};

}  // namespace voigt
