#pragma once

#include "admhd/grid.hpp"
#include "admhd/spectral_field.hpp"

#include <vector>

// Opaque FFTW handles; fftw3.h stays out of the public headers.
struct fftw_plan_s;

namespace admhd {

/// Transforms between retained-lattice coefficients and real samples on the
/// padded physical grid. Built on FFTW real-to-complex transforms, so inverse
/// output is real by construction and forward output gets exact conjugate
/// symmetry (the canonical half-spectrum is read and mirrored).
///
/// One engine per thread; FFTW plan creation is serialized internally.
/// Physical arrays are row-major (x, y, z) with z fastest, padded_n^3 points.
class TransformEngine {
public:
    explicit TransformEngine(const GridSpec& grid);
    ~TransformEngine();
    TransformEngine(const TransformEngine&) = delete;
    TransformEngine& operator=(const TransformEngine&) = delete;

    const GridSpec& grid() const { return grid_; }

    /// Synthesizes one component onto the padded grid: out[x] = sum_k c_k e^{ik.x}.
    void inverse_component(const SpectralVectorField& f, int component, double* out);

    /// Analyzes padded-grid samples into retained coefficients for one
    /// component: c_k = (1/M^3) sum_x f(x) e^{-ik.x}, k = 0 dropped.
    void forward_component(const double* samples, SpectralVectorField& f, int component);

    /// Scalar-lane versions used for products and pressure work.
    void inverse_scalar(const SpectralScalarField& f, double* out);
    void forward_scalar(const double* samples, SpectralScalarField& f);

private:
    void scatter(const std::complex<double>* coeffs, std::size_t stride);
    void gather(std::complex<double>* coeffs, std::size_t stride);

    GridSpec grid_;
    double* real_buf_ = nullptr;
    void* cplx_buf_ = nullptr; // fftw_complex[M*M*(M/2+1)]
    fftw_plan_s* fwd_ = nullptr;
    fftw_plan_s* bwd_ = nullptr;
};

/// Full-field transforms matching the on-disk sample layout: samples are
/// component-major, 3 * padded_n^3 doubles. Throws config_error on a size
/// mismatch and invariant_error if a field to synthesize has broken
/// conjugate symmetry.
SpectralVectorField forward_transform(TransformEngine& engine, const std::vector<double>& samples);
std::vector<double> inverse_transform(TransformEngine& engine, const SpectralVectorField& f);

} // namespace admhd
