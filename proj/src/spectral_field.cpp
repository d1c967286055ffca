#include "admhd/spectral_field.hpp"

#include "admhd/errors.hpp"

#include <algorithm>
#include <cmath>

namespace admhd {

void SpectralVectorField::scale(double a) {
    for (auto& c : coeffs_) c *= a;
}

void SpectralVectorField::axpy(double a, const SpectralVectorField& x) {
    if (!(grid_ == x.grid_)) throw config_error("axpy: grid mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * x.coeffs_[i];
}

double SpectralVectorField::l2_norm() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

bool SpectralVectorField::all_finite() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const std::complex<double>& c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

double SpectralScalarField::l2_norm() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

double sobolev_norm(const SpectralVectorField& f, double s) {
    double acc = 0.0;
    for_each_mode(f.grid(), [&](int kx, int ky, int kz, std::size_t m) {
        if (kx == 0 && ky == 0 && kz == 0) return;
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const std::complex<double>* c = f.mode(m);
        const double e = std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
        acc += std::pow(k_sq, s) * e;
    });
    return std::sqrt(acc);
}

double sobolev_norm(const SpectralScalarField& f, double s) {
    double acc = 0.0;
    for_each_mode(f.grid(), [&](int kx, int ky, int kz, std::size_t m) {
        if (kx == 0 && ky == 0 && kz == 0) return;
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        acc += std::pow(k_sq, s) * std::norm(f.raw()[m]);
    });
    return std::sqrt(acc);
}

double l2_inner(const SpectralVectorField& f, const SpectralVectorField& g) {
    if (!(f.grid() == g.grid())) throw config_error("l2_inner: grid mismatch");
    double acc = 0.0;
    const auto& a = f.raw();
    const auto& b = g.raw();
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return acc;
}

void leray_project_in_place(SpectralVectorField& f) {
    for_each_mode(f.grid(), [&](int kx, int ky, int kz, std::size_t m) {
        if (kx == 0 && ky == 0 && kz == 0) return;
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        std::complex<double>* c = f.mode(m);
        const std::complex<double> k_dot_c =
            double(kx) * c[0] + double(ky) * c[1] + double(kz) * c[2];
        const std::complex<double> factor = k_dot_c / k_sq;
        c[0] -= double(kx) * factor;
        c[1] -= double(ky) * factor;
        c[2] -= double(kz) * factor;
    });
}

SpectralVectorField leray_project(SpectralVectorField f) {
    leray_project_in_place(f);
    return f;
}

SpectralVectorField galerkin_truncate(SpectralVectorField f, int cutoff) {
    const double cutoff_sq = double(cutoff) * cutoff;
    for_each_mode(f.grid(), [&](int kx, int ky, int kz, std::size_t m) {
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (k_sq > cutoff_sq) {
            std::complex<double>* c = f.mode(m);
            c[0] = c[1] = c[2] = {0.0, 0.0};
        }
    });
    return f;
}

double divergence_residual(const SpectralVectorField& f) {
    double worst = 0.0;
    for_each_mode(f.grid(), [&](int kx, int ky, int kz, std::size_t m) {
        const std::complex<double>* c = f.mode(m);
        const std::complex<double> k_dot_c =
            double(kx) * c[0] + double(ky) * c[1] + double(kz) * c[2];
        worst = std::max(worst, std::abs(k_dot_c));
    });
    return worst;
}

double mean_residual(const SpectralVectorField& f) {
    const std::complex<double>* c0 = f.mode(f.grid().flat_index(0, 0, 0));
    return std::sqrt(std::norm(c0[0]) + std::norm(c0[1]) + std::norm(c0[2]));
}

double conjugate_symmetry_residual(const SpectralVectorField& f) {
    double worst = 0.0;
    for_each_mode(f.grid(), [&](int kx, int ky, int kz, std::size_t m) {
        const std::complex<double>* c = f.mode(m);
        const std::complex<double>* cm = f.mode(f.grid().flat_index(-kx, -ky, -kz));
        for (int comp = 0; comp < 3; ++comp)
            worst = std::max(worst, std::abs(cm[comp] - std::conj(c[comp])));
    });
    return worst;
}

} // namespace admhd
