#include "admhd/initial_conditions.hpp"

#include "admhd/errors.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace admhd {

SpectralVectorField abc_field(const GridSpec& grid, double a, double b, double c) {
    SpectralVectorField f(grid);
    const std::complex<double> i{0.0, 1.0};
    // sin t = -i/2 e^{it} + i/2 e^{-it};  cos t = 1/2 e^{it} + 1/2 e^{-it}
    f.set_pair(0, 0, 1, 0, -0.5 * i * a); // A sin z -> x component
    f.set_pair(0, 1, 0, 0, {0.5 * c, 0.0}); // C cos y
    f.set_pair(1, 0, 0, 1, -0.5 * i * b); // B sin x -> y component
    f.set_pair(0, 0, 1, 1, {0.5 * a, 0.0}); // A cos z
    f.set_pair(0, 1, 0, 2, -0.5 * i * c); // C sin y -> z component
    f.set_pair(1, 0, 0, 2, {0.5 * b, 0.0}); // B cos x
    return f;
}

SpectralVectorField random_solenoidal_field(const GridSpec& grid, unsigned long long seed,
                                            double slope, double band_lo, double band_hi) {
    SpectralVectorField f(grid);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double lo_sq = band_lo * band_lo;
    const double hi_sq = band_hi * band_hi;

    // Draw on the canonical half lattice only and mirror, so the reality
    // invariant holds exactly and the draw order is reproducible.
    for_each_mode(grid, [&](int kx, int ky, int kz, std::size_t) {
        const bool canonical =
            kx > 0 || (kx == 0 && ky > 0) || (kx == 0 && ky == 0 && kz > 0);
        if (!canonical) return;
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (k_sq < lo_sq || k_sq > hi_sq) return;
        const double amp = std::pow(k_sq, 0.5 * slope);
        for (int comp = 0; comp < 3; ++comp) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            f.set_pair(kx, ky, kz, comp, amp * std::complex<double>(re, im));
        }
    });

    leray_project_in_place(f);
    const double norm = f.l2_norm();
    if (norm == 0.0)
        throw config_error("random_solenoidal_field: no modes inside band [" +
                           std::to_string(band_lo) + ", " + std::to_string(band_hi) + "]");
    f.scale(1.0 / norm);
    return f;
}

} // namespace admhd
