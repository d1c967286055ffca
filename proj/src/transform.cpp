#include "admhd/transform.hpp"

#include "admhd/errors.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace admhd {

namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

TransformEngine::TransformEngine(const GridSpec& grid) : grid_(grid) {
    grid_.validate();
    const int m = grid_.padded_n;
    const std::size_t n_real = grid_.physical_point_count();
    const std::size_t n_cplx = static_cast<std::size_t>(m) * m * (m / 2 + 1);

    std::lock_guard<std::mutex> lock(planner_mutex());
    real_buf_ = fftw_alloc_real(n_real);
    cplx_buf_ = fftw_alloc_complex(n_cplx);
    auto* cbuf = static_cast<fftw_complex*>(cplx_buf_);
    // FFTW_ESTIMATE keeps plan selection deterministic across runs.
    fwd_ = fftw_plan_dft_r2c_3d(m, m, m, real_buf_, cbuf, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_3d(m, m, m, cbuf, real_buf_, FFTW_ESTIMATE);
    if (fwd_ == nullptr || bwd_ == nullptr) throw config_error("FFTW plan creation failed");
}

TransformEngine::~TransformEngine() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd_ != nullptr) fftw_destroy_plan(fwd_);
    if (bwd_ != nullptr) fftw_destroy_plan(bwd_);
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

// Places retained coefficients into the half-complex padded spectrum, all
// other entries zero. Only kz >= 0 is stored; the kz = 0 plane receives both
// members of each conjugate pair, which is consistent because the field
// invariant guarantees c(-k) = conj(c(k)).
void TransformEngine::scatter(const std::complex<double>* coeffs, std::size_t stride) {
    const int m = grid_.padded_n;
    const int half = m / 2 + 1;
    const std::size_t n_cplx = static_cast<std::size_t>(m) * m * half;
    auto* cbuf = static_cast<fftw_complex*>(cplx_buf_);
    std::memset(cbuf, 0, n_cplx * sizeof(fftw_complex));

    const int kmax = grid_.max_wave();
    for (int kx = -kmax; kx <= kmax; ++kx) {
        const int ix = kx >= 0 ? kx : kx + m;
        for (int ky = -kmax; ky <= kmax; ++ky) {
            const int iy = ky >= 0 ? ky : ky + m;
            const std::size_t row = (static_cast<std::size_t>(ix) * m + iy) * half;
            for (int kz = 0; kz <= kmax; ++kz) {
                const std::complex<double> c = coeffs[stride * grid_.flat_index(kx, ky, kz)];
                cbuf[row + kz][0] = c.real();
                cbuf[row + kz][1] = c.imag();
            }
        }
    }
}

// Reads the canonical half-spectrum (kz > 0; kz = 0 and ky > 0; kz = ky = 0
// and kx >= 0) and mirrors the rest, so the gathered field has exact
// conjugate symmetry independent of FFT rounding.
void TransformEngine::gather(std::complex<double>* coeffs, std::size_t stride) {
    const int m = grid_.padded_n;
    const int half = m / 2 + 1;
    const auto* cbuf = static_cast<const fftw_complex*>(cplx_buf_);
    const double scale = 1.0 / static_cast<double>(grid_.physical_point_count());

    const int kmax = grid_.max_wave();
    for (int kx = -kmax; kx <= kmax; ++kx) {
        const int ix = kx >= 0 ? kx : kx + m;
        for (int ky = -kmax; ky <= kmax; ++ky) {
            const int iy = ky >= 0 ? ky : ky + m;
            const std::size_t row = (static_cast<std::size_t>(ix) * m + iy) * half;
            const bool canonical_plane = ky > 0 || (ky == 0 && kx >= 0);
            for (int kz = 0; kz <= kmax; ++kz) {
                if (kz == 0 && !canonical_plane) continue;
                const std::complex<double> c(cbuf[row + kz][0] * scale, cbuf[row + kz][1] * scale);
                coeffs[stride * grid_.flat_index(kx, ky, kz)] = c;
                coeffs[stride * grid_.flat_index(-kx, -ky, -kz)] = std::conj(c);
            }
        }
    }
    coeffs[stride * grid_.flat_index(0, 0, 0)] = {0.0, 0.0}; // mean removed
}

void TransformEngine::inverse_component(const SpectralVectorField& f, int component, double* out) {
    scatter(f.raw().data() + component, 3);
    fftw_execute_dft_c2r(bwd_, static_cast<fftw_complex*>(cplx_buf_), out);
}

void TransformEngine::forward_component(const double* samples, SpectralVectorField& f,
                                        int component) {
    std::memcpy(real_buf_, samples, grid_.physical_point_count() * sizeof(double));
    fftw_execute_dft_r2c(fwd_, real_buf_, static_cast<fftw_complex*>(cplx_buf_));
    gather(f.raw().data() + component, 3);
}

void TransformEngine::inverse_scalar(const SpectralScalarField& f, double* out) {
    scatter(f.raw().data(), 1);
    fftw_execute_dft_c2r(bwd_, static_cast<fftw_complex*>(cplx_buf_), out);
}

void TransformEngine::forward_scalar(const double* samples, SpectralScalarField& f) {
    std::memcpy(real_buf_, samples, grid_.physical_point_count() * sizeof(double));
    fftw_execute_dft_r2c(fwd_, real_buf_, static_cast<fftw_complex*>(cplx_buf_));
    gather(f.raw().data(), 1);
}

SpectralVectorField forward_transform(TransformEngine& engine, const std::vector<double>& samples) {
    const std::size_t n = engine.grid().physical_point_count();
    if (samples.size() != 3 * n)
        throw config_error("forward_transform: expected 3 * padded_n^3 = " +
                           std::to_string(3 * n) + " samples, got " +
                           std::to_string(samples.size()));
    SpectralVectorField f(engine.grid());
    for (int c = 0; c < 3; ++c)
        engine.forward_component(samples.data() + static_cast<std::size_t>(c) * n, f, c);
    return f;
}

std::vector<double> inverse_transform(TransformEngine& engine, const SpectralVectorField& f) {
    if (!(f.grid() == engine.grid())) throw config_error("inverse_transform: grid mismatch");
    const double tol = 1e-12 * std::max(f.l2_norm(), 1e-300);
    if (conjugate_symmetry_residual(f) > tol)
        throw invariant_error("inverse_transform: broken conjugate symmetry");
    const std::size_t n = engine.grid().physical_point_count();
    std::vector<double> out(3 * n);
    for (int c = 0; c < 3; ++c)
        engine.inverse_component(f, c, out.data() + static_cast<std::size_t>(c) * n);
    return out;
}

} // namespace admhd
