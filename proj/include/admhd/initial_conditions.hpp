#pragma once

#include "admhd/spectral_field.hpp"

namespace admhd {

/// The ABC velocity field
///   u = (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x)
/// assembled directly from its Fourier coefficients on the |k| = 1 shell.
/// Divergence-free and an eigenfunction of curl, so its self-advection is a
/// pure gradient.
SpectralVectorField abc_field(const GridSpec& grid, double a, double b, double c);

/// Seeded Gaussian modes with amplitude |k|^{slope} inside band_lo <= |k| <=
/// band_hi, Leray-projected and normalized to unit L2 norm. Deterministic in
/// the seed; conjugate symmetry by construction. Throws config_error if the
/// band holds no modes.
SpectralVectorField random_solenoidal_field(const GridSpec& grid, unsigned long long seed,
                                            double slope, double band_lo, double band_hi);

} // namespace admhd
