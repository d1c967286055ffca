#pragma once

#include "admhd/grid.hpp"

#include <complex>
#include <vector>

namespace admhd {

/// Mean-free periodic 3-component vector field stored as complex Fourier
/// coefficients on the retained lattice, three components per lattice point,
/// lexicographic k order. Invariants maintained by every operation:
///   coeffs(-k) = conj(coeffs(k))   (reality of the physical field)
///   coeffs(0)  = 0                 (zero mean; the slot is stored but pinned)
class SpectralVectorField {
public:
    SpectralVectorField() = default;
    explicit SpectralVectorField(const GridSpec& grid)
        : grid_(grid), coeffs_(3 * grid.mode_count()) {}

    const GridSpec& grid() const { return grid_; }

    std::complex<double>* mode(std::size_t flat) { return coeffs_.data() + 3 * flat; }
    const std::complex<double>* mode(std::size_t flat) const { return coeffs_.data() + 3 * flat; }

    std::complex<double>& at(int kx, int ky, int kz, int component) {
        return coeffs_[3 * grid_.flat_index(kx, ky, kz) + static_cast<std::size_t>(component)];
    }
    const std::complex<double>& at(int kx, int ky, int kz, int component) const {
        return coeffs_[3 * grid_.flat_index(kx, ky, kz) + static_cast<std::size_t>(component)];
    }

    /// Sets the conjugate pair c(k) = value, c(-k) = conj(value).
    void set_pair(int kx, int ky, int kz, int component, std::complex<double> value) {
        at(kx, ky, kz, component) = value;
        at(-kx, -ky, -kz, component) = std::conj(value);
    }

    std::vector<std::complex<double>>& raw() { return coeffs_; }
    const std::vector<std::complex<double>>& raw() const { return coeffs_; }

    void set_zero() { coeffs_.assign(coeffs_.size(), {0.0, 0.0}); }
    void scale(double a);
    /// this += a * x (grids must match).
    void axpy(double a, const SpectralVectorField& x);

    double l2_norm() const;
    bool all_finite() const;

private:
    GridSpec grid_;
    std::vector<std::complex<double>> coeffs_;
};

/// Mean-free periodic scalar field (same storage conventions, one component).
class SpectralScalarField {
public:
    SpectralScalarField() = default;
    explicit SpectralScalarField(const GridSpec& grid) : grid_(grid), coeffs_(grid.mode_count()) {}

    const GridSpec& grid() const { return grid_; }
    std::complex<double>& at(int kx, int ky, int kz) { return coeffs_[grid_.flat_index(kx, ky, kz)]; }
    const std::complex<double>& at(int kx, int ky, int kz) const {
        return coeffs_[grid_.flat_index(kx, ky, kz)];
    }
    std::vector<std::complex<double>>& raw() { return coeffs_; }
    const std::vector<std::complex<double>>& raw() const { return coeffs_; }

    double l2_norm() const;

private:
    GridSpec grid_;
    std::vector<std::complex<double>> coeffs_;
};

/// Sobolev norm (sum_k |k|^{2s} |c_k|^2)^{1/2} over the retained lattice,
/// both members of each conjugate pair counted. Defined for s >= -1 on
/// mean-free fields; the k = 0 slot never contributes.
double sobolev_norm(const SpectralVectorField& f, double s);
double sobolev_norm(const SpectralScalarField& f, double s);

/// L2 inner product sum_k Re(f_k . conj(g_k)).
double l2_inner(const SpectralVectorField& f, const SpectralVectorField& g);

/// Orthogonal projection onto divergence-free fields: c <- c - k (k.c)/|k|^2
/// per mode. Idempotent and norm-nonincreasing in every Sobolev norm.
void leray_project_in_place(SpectralVectorField& f);
SpectralVectorField leray_project(SpectralVectorField f);

/// Sharp spherical truncation: zeroes every coefficient with |k| > cutoff.
SpectralVectorField galerkin_truncate(SpectralVectorField f, int cutoff);

/// max_k |k . c_k| — diagnostic, never mutates.
double divergence_residual(const SpectralVectorField& f);

/// |c_0| — diagnostic, never mutates.
double mean_residual(const SpectralVectorField& f);

/// max_k |c(-k) - conj(c(k))| — diagnostic for the reality invariant.
double conjugate_symmetry_residual(const SpectralVectorField& f);

} // namespace admhd
