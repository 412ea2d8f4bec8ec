#include "voigt/initial_conditions.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "voigt/errors.hpp"
#include "voigt/spectral_ops.hpp"
#include "voigt/transform.hpp"

namespace voigt {

const char* to_string(IcKind k) {
    switch (k) {
        case IcKind::TaylorGreen: return "taylor-green";
        case IcKind::Abc: return "abc";
        case IcKind::Shear: return "shear";
        case IcKind::RandomSolenoidal: return "random-solenoidal";
    }
    return "unknown";
}

IcKind ic_kind_from_string(const std::string& s) {
    if (s == "taylor-green") return IcKind::TaylorGreen;
    if (s == "abc") return IcKind::Abc;
    if (s == "shear") return IcKind::Shear;
    if (s == "random-solenoidal") return IcKind::RandomSolenoidal;
    throw ConfigError("unknown initial-condition kind: " + s);
}

namespace {

/// Standard normal via Box-Muller on mt19937_64 output, so the draw sequence
/// is identical across standard libraries.
class NormalDraw {
  public:
    explicit NormalDraw(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // (0,1] to keep log() finite
        const double u1 =
            (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

  private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

SpectralVectorField sampled_field(const Grid& g,
                                  double (*fx)(double, double, double, const double*),
                                  double (*fy)(double, double, double, const double*),
                                  double (*fz)(double, double, double, const double*),
                                  const double* params) {
    const int n = g.n();
    RealVectorField u(g);
    for (int jz = 0; jz < n; ++jz) {
        const double z = static_cast<double>(jz) / n;
        for (int jy = 0; jy < n; ++jy) {
            const double y = static_cast<double>(jy) / n;
            for (int jx = 0; jx < n; ++jx) {
                const double x = static_cast<double>(jx) / n;
                const std::size_t i = g.index(jx, jy, jz);
                u[0][i] = fx(x, y, z, params);
                u[1][i] = fy(x, y, z, params);
                u[2][i] = fz(x, y, z, params);
            }
        }
    }
    SpectralTransform fft(g);
    return fft.forward(u);
}

SpectralVectorField taylor_green(const Grid& g) {
    return sampled_field(
        g,
        [](double x, double y, double z, const double*) {
            return std::sin(kTwoPi * x) * std::cos(kTwoPi * y) * std::cos(kTwoPi * z);
        },
        [](double x, double y, double z, const double*) {
            return -std::cos(kTwoPi * x) * std::sin(kTwoPi * y) * std::cos(kTwoPi * z);
        },
        [](double, double, double, const double*) { return 0.0; }, nullptr);
}

SpectralVectorField abc_flow(const Grid& g, double A, double B, double C) {
    const double params[3] = {A, B, C};
    return sampled_field(
        g,
        [](double, double y, double z, const double* p) {
            return p[0] * std::sin(kTwoPi * z) + p[2] * std::cos(kTwoPi * y);
        },
        [](double x, double, double z, const double* p) {
            return p[1] * std::sin(kTwoPi * x) + p[0] * std::cos(kTwoPi * z);
        },
        [](double x, double y, double, const double* p) {
            return p[2] * std::sin(kTwoPi * y) + p[1] * std::cos(kTwoPi * x);
        },
        params);
}

SpectralVectorField shear_flow(const Grid& g, int modes) {
    if (modes < 1) throw ConfigError("shear: mode count must be >= 1");
    if (modes > g.dealias_limit()) {
        throw ConfigError("shear: profile mode count " + std::to_string(modes) +
                          " exceeds the dealias band n/3 = " +
                          std::to_string(g.dealias_limit()));
    }
    const double params[1] = {static_cast<double>(modes)};
    return sampled_field(
        g,
        [](double, double, double z, const double* p) {
            const int modes = static_cast<int>(p[0]);
            double phi = 0.0;
            for (int j = 1; j <= modes; ++j) phi += std::sin(kTwoPi * j * z) / j;
            return phi;
        },
        [](double, double, double, const double*) { return 0.0; },
        [](double, double, double, const double*) { return 0.0; }, params);
}

SpectralVectorField random_solenoidal(const Grid& g, double k0, std::uint64_t seed) {
    if (!(k0 > 0.0)) throw ConfigError("random-solenoidal: k0 must be positive");
    const int limit = g.dealias_limit();
    if (k0 > limit) {
        throw ConfigError("random-solenoidal: peak wavenumber k0 exceeds the dealias "
                          "band n/3 = " + std::to_string(limit));
    }

    NormalDraw draw(seed);
    SpectralVectorField u(g);
    const int n = g.n();
    // Canonical half-spectrum walk in storage order keeps the draw sequence
    // deterministic; the mirror mode gets the conjugate.
    for (int jz = 0; jz < n; ++jz) {
        const int mz = g.mode(jz);
        for (int jy = 0; jy < n; ++jy) {
            const int my = g.mode(jy);
            for (int jx = 0; jx < n; ++jx) {
                const int mx = g.mode(jx);
                const bool canonical = (mz > 0) || (mz == 0 && my > 0) ||
                                       (mz == 0 && my == 0 && mx > 0);
                if (!canonical) continue;
                if (std::abs(mx) > limit || std::abs(my) > limit || std::abs(mz) > limit)
                    continue;
                const double m2 = double(mx) * mx + double(my) * my + double(mz) * mz;
                // Per-mode variance ~ E(kappa)/(4 pi kappa^2) ~ kappa^2 exp(-2 kappa^2/k0^2)
                const double sigma = std::sqrt(m2) * std::exp(-m2 / (k0 * k0));
                const std::size_t i = g.index(jx, jy, jz);
                const std::size_t mirror =
                    g.index(g.index_of_mode(-mx), g.index_of_mode(-my), g.index_of_mode(-mz));
                for (int c = 0; c < 3; ++c) {
                    const double re = draw();
                    const double im = draw();
                    const std::complex<double> val{sigma * re, sigma * im};
                    u[c][i] = val;
                    u[c][mirror] = std::conj(val);
                }
            }
        }
    }

    u = dealias(leray_project(std::move(u)));
    const double norm = l2_norm(u);
    if (norm == 0.0) throw NumericsError("random-solenoidal: generated field is zero");
    const double rescale = 1.0 / norm;
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < g.size(); ++i) u[c][i] *= rescale;
    }
    return u;
}

}  // namespace

SpectralVectorField generate_ic(const InitialConditionSpec& spec, const Grid& g) {
    SpectralVectorField u(g);
    switch (spec.kind) {
        case IcKind::TaylorGreen: u = taylor_green(g); break;
        case IcKind::Abc: u = abc_flow(g, spec.A, spec.B, spec.C); break;
        case IcKind::Shear: u = shear_flow(g, spec.shear_modes); break;
        case IcKind::RandomSolenoidal: u = random_solenoidal(g, spec.k0, spec.seed); break;
    }
    u = dealias(leray_project(std::move(u)));
    zero_mean(u);
    return u;
}

}  // namespace voigt
