#pragma once

#include "admhd/spectral_field.hpp"

#include <iosfwd>
#include <vector>

namespace admhd {

/// Fractional Helmholtz filter parameters: width alpha > 0 and fractional
/// exponent theta in [0, 1]. theta = 1 is the classical Helmholtz filter.
/// theta = 0 is applied literally, so the symbol is the constant 2 rather
/// than the identity.
struct FilterParams {
    double alpha = 1.0;
    double theta = 1.0;
    bool operator==(const FilterParams&) const = default;
};

/// Van Cittert deconvolution order N >= 0. N = 0 is the identity.
struct DeconvParams {
    int order_n = 0;
    bool operator==(const DeconvParams&) const = default;
};

/// Symbol of the fractional Helmholtz power: (1 + alpha^{2 theta} |k|^{2 theta})^p.
/// p = -1 is the filter, p = 1 its inverse; half powers give the square roots.
double helmholtz_symbol(double k_sq, const FilterParams& fp, double p);

/// Closed-form symbol of the order-N deconvolution operator,
///   D_hat = A_hat * (1 - r^{N+1}),  r = alpha^{2 theta}|k|^{2 theta} / A_hat,
/// equal to the truncated geometric series sum_{i=0}^{N} (1 - 1/A_hat)^i.
/// Satisfies 1 <= D_hat <= N+1 and D_hat <= A_hat for every mode.
double deconv_symbol(double k_sq, const FilterParams& fp, const DeconvParams& dp);

/// The per-mode deconvolution defect A_hat - D_hat = A_hat r^{N+1},
/// evaluated without cancellation.
double deconv_defect(double k_sq, const FilterParams& fp, const DeconvParams& dp);

/// Per-mode multiplication by helmholtz_symbol(|k|^2, fp, p).
SpectralVectorField apply_helmholtz_power(SpectralVectorField f, const FilterParams& fp, double p);

/// Per-mode multiplication by deconv_symbol. Commutes with leray_project
/// and galerkin_truncate.
SpectralVectorField apply_deconvolution(SpectralVectorField f, const FilterParams& fp,
                                        const DeconvParams& dp);

/// L2 distance || D_N f - A f ||_2; per mode the error is
/// A_hat * r^{N+1} * |c_k|, so it decays geometrically in N.
double deconv_limit_error(const SpectralVectorField& f, const FilterParams& fp,
                          const DeconvParams& dp);

/// Relative residual of the norm identity
///   ||A f||^2 = ||f||^2 + 2 a ||f||_{theta,2}^2 + a^2 ||f||_{2 theta,2}^2,
/// a = alpha^{2 theta}. Diagnostic only; ~1e-16 for any field.
double helmholtz_norm_identity_residual(const SpectralVectorField& f, const FilterParams& fp);

/// Fills per-mode multiplier tables over the retained lattice (k = 0 slot
/// gets the k_sq = 0 value).
std::vector<double> helmholtz_symbol_table(const GridSpec& grid, const FilterParams& fp, double p);
std::vector<double> deconv_symbol_table(const GridSpec& grid, const FilterParams& fp,
                                        const DeconvParams& dp);

/// Per-mode multiplication by a precomputed table.
void apply_mode_multiplier(SpectralVectorField& f, const std::vector<double>& table);

/// CSV dump for external plotting: columns k_sq, theta, alpha, N, A_hat, D_hat,
/// one row per requested k_sq.
void write_symbol_table_csv(std::ostream& os, const std::vector<double>& k_sq_values,
                            const FilterParams& fp, const DeconvParams& dp);

} // namespace admhd
