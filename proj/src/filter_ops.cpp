#include "admhd/filter_ops.hpp"

#include <cmath>
#include <ostream>

namespace admhd {

double helmholtz_symbol(double k_sq, const FilterParams& fp, double p) {
    // pow(0, 0) = 1, so theta = 0 yields the literal constant symbol 2^p.
    const double a = std::pow(fp.alpha, 2.0 * fp.theta) * std::pow(k_sq, fp.theta);
    return std::pow(1.0 + a, p);
}

namespace {

// (N+1) log(r) with r = 1 - 1/A_hat, evaluated without forming r. Feeds both
// the symbol (via expm1) and the defect A_hat - D_hat (via exp); the naive
// 1 - r^{N+1} cancels catastrophically when r is close to 1.
double deconv_log_tail(double a_hat, int order_n) {
    return double(order_n + 1) * std::log1p(-1.0 / a_hat);
}

} // namespace

double deconv_symbol(double k_sq, const FilterParams& fp, const DeconvParams& dp) {
    const double a_hat = helmholtz_symbol(k_sq, fp, 1.0);
    return a_hat * -std::expm1(deconv_log_tail(a_hat, dp.order_n));
}

/// A_hat - D_hat = A_hat r^{N+1}, the per-mode deconvolution defect.
double deconv_defect(double k_sq, const FilterParams& fp, const DeconvParams& dp) {
    const double a_hat = helmholtz_symbol(k_sq, fp, 1.0);
    return a_hat * std::exp(deconv_log_tail(a_hat, dp.order_n));
}

SpectralVectorField apply_helmholtz_power(SpectralVectorField f, const FilterParams& fp,
                                          double p) {
    for_each_mode(f.grid(), [&](int kx, int ky, int kz, std::size_t m) {
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const double s = helmholtz_symbol(k_sq, fp, p);
        std::complex<double>* c = f.mode(m);
        c[0] *= s;
        c[1] *= s;
        c[2] *= s;
    });
    // keep the pinned mean exact
    std::complex<double>* c0 = f.mode(f.grid().flat_index(0, 0, 0));
    c0[0] = c0[1] = c0[2] = {0.0, 0.0};
    return f;
}

SpectralVectorField apply_deconvolution(SpectralVectorField f, const FilterParams& fp,
                                        const DeconvParams& dp) {
    for_each_mode(f.grid(), [&](int kx, int ky, int kz, std::size_t m) {
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const double s = deconv_symbol(k_sq, fp, dp);
        std::complex<double>* c = f.mode(m);
        c[0] *= s;
        c[1] *= s;
        c[2] *= s;
    });
    std::complex<double>* c0 = f.mode(f.grid().flat_index(0, 0, 0));
    c0[0] = c0[1] = c0[2] = {0.0, 0.0};
    return f;
}

double deconv_limit_error(const SpectralVectorField& f, const FilterParams& fp,
                          const DeconvParams& dp) {
    double acc = 0.0;
    for_each_mode(f.grid(), [&](int kx, int ky, int kz, std::size_t m) {
        if (kx == 0 && ky == 0 && kz == 0) return;
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const double gap = deconv_defect(k_sq, fp, dp);
        const std::complex<double>* c = f.mode(m);
        acc += gap * gap * (std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]));
    });
    return std::sqrt(acc);
}

double helmholtz_norm_identity_residual(const SpectralVectorField& f, const FilterParams& fp) {
    const double a = std::pow(fp.alpha, 2.0 * fp.theta);
    const double lhs_norm = sobolev_norm(apply_helmholtz_power(f, fp, 1.0), 0.0);
    const double lhs = lhs_norm * lhs_norm;
    const double l2 = sobolev_norm(f, 0.0);
    const double h_theta = sobolev_norm(f, fp.theta);
    const double h_2theta = sobolev_norm(f, 2.0 * fp.theta);
    const double rhs = l2 * l2 + 2.0 * a * h_theta * h_theta + a * a * h_2theta * h_2theta;
    return std::abs(lhs - rhs) / std::max(lhs, 1e-300);
}

std::vector<double> helmholtz_symbol_table(const GridSpec& grid, const FilterParams& fp,
                                           double p) {
    std::vector<double> table(grid.mode_count());
    for_each_mode(grid, [&](int kx, int ky, int kz, std::size_t m) {
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        table[m] = helmholtz_symbol(k_sq, fp, p);
    });
    return table;
}

std::vector<double> deconv_symbol_table(const GridSpec& grid, const FilterParams& fp,
                                        const DeconvParams& dp) {
    std::vector<double> table(grid.mode_count());
    for_each_mode(grid, [&](int kx, int ky, int kz, std::size_t m) {
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        table[m] = deconv_symbol(k_sq, fp, dp);
    });
    return table;
}

void apply_mode_multiplier(SpectralVectorField& f, const std::vector<double>& table) {
    auto& raw = f.raw();
    for (std::size_t m = 0; m < table.size(); ++m) {
        raw[3 * m] *= table[m];
        raw[3 * m + 1] *= table[m];
        raw[3 * m + 2] *= table[m];
    }
}

void write_symbol_table_csv(std::ostream& os, const std::vector<double>& k_sq_values,
                            const FilterParams& fp, const DeconvParams& dp) {
    os << "k_sq,theta,alpha,N,A_hat,D_hat\n";
    for (double k_sq : k_sq_values) {
        os << k_sq << ',' << fp.theta << ',' << fp.alpha << ',' << dp.order_n << ','
           << helmholtz_symbol(k_sq, fp, 1.0) << ',' << deconv_symbol(k_sq, fp, dp) << '\n';
    }
}

} // namespace admhd
