#include "admhd/mhd_model.hpp"

#include "admhd/errors.hpp"

#include <cmath>

namespace admhd {

const char* to_string(ModelCase c) {
    switch (c) {
    case ModelCase::DoubleViscous: return "double_viscous";
    case ModelCase::InviscidMomentum: return "inviscid_momentum";
    case ModelCase::DeconvEuler: return "deconv_euler";
    case ModelCase::LimitModel: return "limit_model";
    }
    return "?";
}

void PhysicalParams::collect_violations(std::vector<std::string>& v) const {
    if (nu < 0.0) v.push_back("physics.nu must be >= 0");
    if (mu < 0.0) v.push_back("physics.mu must be >= 0");
    switch (model_case) {
    case ModelCase::DoubleViscous:
        if (!(nu > 0.0)) v.push_back("case double_viscous requires nu > 0");
        if (!(mu > 0.0)) v.push_back("case double_viscous requires mu > 0");
        break;
    case ModelCase::InviscidMomentum:
        if (nu != 0.0) v.push_back("case inviscid_momentum requires nu = 0");
        if (!(mu > 0.0)) v.push_back("case inviscid_momentum requires mu > 0");
        break;
    case ModelCase::DeconvEuler:
        if (nu != 0.0) v.push_back("case deconv_euler requires nu = 0");
        break;
    case ModelCase::LimitModel: break;
    }
}

void PhysicalParams::validate() const {
    std::vector<std::string> v;
    collect_violations(v);
    if (v.empty()) return;
    std::string msg = "invalid physical parameters:";
    for (const auto& s : v) msg += "\n  - " + s;
    throw config_error(msg);
}

MhdModel::MhdModel(const GridSpec& grid, const FilterParams& fp, const DeconvParams& dp,
                   const PhysicalParams& pp)
    : grid_(grid), fp_(fp), dp_(dp), pp_(pp), engine_(std::make_unique<TransformEngine>(grid)) {
    inv_helmholtz_ = helmholtz_symbol_table(grid_, fp_, -1.0);
    deconv_mult_ = pp_.model_case == ModelCase::LimitModel
                       ? helmholtz_symbol_table(grid_, fp_, 1.0)
                       : deconv_symbol_table(grid_, fp_, dp_);
    energy_weight_.resize(grid_.mode_count());
    const auto a_hat = helmholtz_symbol_table(grid_, fp_, 1.0);
    for (std::size_t m = 0; m < energy_weight_.size(); ++m)
        energy_weight_[m] = a_hat[m] * deconv_mult_[m];

    const std::size_t n = grid_.physical_point_count();
    for (auto& lane : u_phys_) lane.resize(n);
    for (auto& lane : b_phys_) lane.resize(n);
    prod_.resize(n);
    for (auto& t : sym_tensor_) t = SpectralScalarField(grid_);
    for (auto& t : full_tensor_) t = SpectralScalarField(grid_);
    u_spec_ = SpectralVectorField(grid_);
}

void MhdModel::to_physical(const SpectralVectorField& f, std::array<std::vector<double>, 3>& lanes) {
    for (int c = 0; c < 3; ++c) engine_->inverse_component(f, c, lanes[c].data());
}

void MhdModel::divergence_of_symmetric(const std::array<SpectralScalarField, 6>& t, double sign,
                                       bool apply_bar, SpectralVectorField& out) const {
    // symmetric storage: 00,01,02,11,12,22
    static constexpr int sym_index[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    for_each_mode(grid_, [&](int kx, int ky, int kz, std::size_t m) {
        const double k[3] = {double(kx), double(ky), double(kz)};
        const double bar = apply_bar ? inv_helmholtz_[m] : 1.0;
        std::complex<double>* o = out.mode(m);
        for (int i = 0; i < 3; ++i) {
            std::complex<double> acc{0.0, 0.0};
            for (int j = 0; j < 3; ++j) acc += k[j] * t[sym_index[i][j]].raw()[m];
            // i k_j T_ij
            o[i] = sign * bar * std::complex<double>(-acc.imag(), acc.real());
        }
    });
    std::complex<double>* c0 = out.mode(grid_.flat_index(0, 0, 0));
    c0[0] = c0[1] = c0[2] = {0.0, 0.0};
}

void MhdModel::nonlinear_rhs(const MhdState& s, SpectralVectorField& rhs_w,
                             SpectralVectorField& rhs_b) {
    const bool with_b = pp_.model_case != ModelCase::DeconvEuler;
    const std::size_t n = grid_.physical_point_count();

    u_spec_ = s.w;
    apply_mode_multiplier(u_spec_, deconv_mult_);
    to_physical(u_spec_, u_phys_);
    if (with_b) to_physical(s.b, b_phys_);

    // stress difference D w x D w - B x B, six symmetric components
    static constexpr int si[6] = {0, 0, 0, 1, 1, 2};
    static constexpr int sj[6] = {0, 1, 2, 1, 2, 2};
    for (int c = 0; c < 6; ++c) {
        const double* a = u_phys_[si[c]].data();
        const double* b = u_phys_[sj[c]].data();
        if (with_b) {
            const double* p = b_phys_[si[c]].data();
            const double* q = b_phys_[sj[c]].data();
            for (std::size_t x = 0; x < n; ++x) prod_[x] = a[x] * b[x] - p[x] * q[x];
        } else {
            for (std::size_t x = 0; x < n; ++x) prod_[x] = a[x] * b[x];
        }
        engine_->forward_scalar(prod_.data(), sym_tensor_[c]);
    }
    if (!(rhs_w.grid() == grid_)) rhs_w = SpectralVectorField(grid_);
    divergence_of_symmetric(sym_tensor_, -1.0, true, rhs_w);
    leray_project_in_place(rhs_w);

    if (!(rhs_b.grid() == grid_)) rhs_b = SpectralVectorField(grid_);
    if (!with_b) rhs_b.set_zero();
    if (with_b) {
        // P_ij = B_i (D w)_j; rhs_b_i = i k_j (P_ji - P_ij)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double* a = b_phys_[i].data();
                const double* b = u_phys_[j].data();
                for (std::size_t x = 0; x < n; ++x) prod_[x] = a[x] * b[x];
                engine_->forward_scalar(prod_.data(), full_tensor_[3 * i + j]);
            }
        for_each_mode(grid_, [&](int kx, int ky, int kz, std::size_t m) {
            const double k[3] = {double(kx), double(ky), double(kz)};
            std::complex<double>* o = rhs_b.mode(m);
            for (int i = 0; i < 3; ++i) {
                std::complex<double> acc{0.0, 0.0};
                for (int j = 0; j < 3; ++j)
                    acc += k[j] * (full_tensor_[3 * j + i].raw()[m] - full_tensor_[3 * i + j].raw()[m]);
                o[i] = std::complex<double>(-acc.imag(), acc.real());
            }
        });
        std::complex<double>* c0 = rhs_b.mode(grid_.flat_index(0, 0, 0));
        c0[0] = c0[1] = c0[2] = {0.0, 0.0};
        leray_project_in_place(rhs_b);
    }
}

SpectralVectorField MhdModel::momentum_rhs(const MhdState& s) {
    SpectralVectorField rhs_w, rhs_b;
    nonlinear_rhs(s, rhs_w, rhs_b);
    if (pp_.nu > 0.0) {
        for_each_mode(grid_, [&](int kx, int ky, int kz, std::size_t m) {
            const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
            const std::complex<double>* w = s.w.mode(m);
            std::complex<double>* o = rhs_w.mode(m);
            for (int i = 0; i < 3; ++i) o[i] -= pp_.nu * k_sq * w[i];
        });
    }
    return rhs_w;
}

SpectralVectorField MhdModel::induction_rhs(const MhdState& s) {
    SpectralVectorField rhs_w, rhs_b;
    nonlinear_rhs(s, rhs_w, rhs_b);
    if (pp_.mu > 0.0 && pp_.model_case != ModelCase::DeconvEuler) {
        for_each_mode(grid_, [&](int kx, int ky, int kz, std::size_t m) {
            const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
            const std::complex<double>* b = s.b.mode(m);
            std::complex<double>* o = rhs_b.mode(m);
            for (int i = 0; i < 3; ++i) o[i] -= pp_.mu * k_sq * b[i];
        });
    }
    return rhs_b;
}

SpectralVectorField MhdModel::filtered_divergence_of_product(const SpectralVectorField& u,
                                                             const SpectralVectorField& v,
                                                             bool apply_bar) {
    if (!(u.grid() == grid_) || !(v.grid() == grid_))
        throw config_error("filtered_divergence_of_product: grid mismatch");
    const std::size_t n = grid_.physical_point_count();
    to_physical(u, u_phys_);
    to_physical(v, b_phys_);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double* a = u_phys_[i].data();
            const double* b = b_phys_[j].data();
            for (std::size_t x = 0; x < n; ++x) prod_[x] = a[x] * b[x];
            engine_->forward_scalar(prod_.data(), full_tensor_[3 * i + j]);
        }
    SpectralVectorField out(grid_);
    for_each_mode(grid_, [&](int kx, int ky, int kz, std::size_t m) {
        const double k[3] = {double(kx), double(ky), double(kz)};
        const double bar = apply_bar ? inv_helmholtz_[m] : 1.0;
        std::complex<double>* o = out.mode(m);
        for (int i = 0; i < 3; ++i) {
            std::complex<double> acc{0.0, 0.0};
            for (int j = 0; j < 3; ++j) acc += k[j] * full_tensor_[3 * i + j].raw()[m];
            o[i] = bar * std::complex<double>(-acc.imag(), acc.real());
        }
    });
    std::complex<double>* c0 = out.mode(grid_.flat_index(0, 0, 0));
    c0[0] = c0[1] = c0[2] = {0.0, 0.0};
    return out;
}

SpectralScalarField MhdModel::recover_pressure(const MhdState& s) {
    const bool with_b = pp_.model_case != ModelCase::DeconvEuler;
    const std::size_t n = grid_.physical_point_count();
    u_spec_ = s.w;
    apply_mode_multiplier(u_spec_, deconv_mult_);
    to_physical(u_spec_, u_phys_);
    if (with_b) to_physical(s.b, b_phys_);

    static constexpr int si[6] = {0, 0, 0, 1, 1, 2};
    static constexpr int sj[6] = {0, 1, 2, 1, 2, 2};
    for (int c = 0; c < 6; ++c) {
        const double* a = u_phys_[si[c]].data();
        const double* b = u_phys_[sj[c]].data();
        if (with_b) {
            const double* p = b_phys_[si[c]].data();
            const double* q = b_phys_[sj[c]].data();
            for (std::size_t x = 0; x < n; ++x) prod_[x] = a[x] * b[x] - p[x] * q[x];
        } else {
            for (std::size_t x = 0; x < n; ++x) prod_[x] = a[x] * b[x];
        }
        engine_->forward_scalar(prod_.data(), sym_tensor_[c]);
    }

    static constexpr int sym_index[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    SpectralScalarField q(grid_);
    for_each_mode(grid_, [&](int kx, int ky, int kz, std::size_t m) {
        if (kx == 0 && ky == 0 && kz == 0) return;
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const double k[3] = {double(kx), double(ky), double(kz)};
        std::complex<double> kk_s{0.0, 0.0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) kk_s += k[i] * k[j] * sym_tensor_[sym_index[i][j]].raw()[m];
        q.raw()[m] = -inv_helmholtz_[m] * kk_s / k_sq;
    });
    return q;
}

double MhdModel::energy_cancellation_residual(const MhdState& s) {
    const bool with_b = pp_.model_case != ModelCase::DeconvEuler;
    SpectralVectorField rhs_w, rhs_b;
    nonlinear_rhs(s, rhs_w, rhs_b);

    SpectralVectorField test_w = s.w;
    apply_mode_multiplier(test_w, energy_weight_); // A D w

    const double t_momentum = l2_inner(rhs_w, test_w);
    const double t_induction = with_b ? l2_inner(rhs_b, s.b) : 0.0;
    const double scale = rhs_w.l2_norm() * test_w.l2_norm() +
                         (with_b ? rhs_b.l2_norm() * s.b.l2_norm() : 0.0);
    if (scale == 0.0) return 0.0;
    return std::abs(t_momentum + t_induction) / scale;
}

double MhdModel::model_energy(const MhdState& s) const {
    double acc = 0.0;
    const auto& w = s.w.raw();
    for (std::size_t m = 0; m < energy_weight_.size(); ++m)
        acc += energy_weight_[m] *
               (std::norm(w[3 * m]) + std::norm(w[3 * m + 1]) + std::norm(w[3 * m + 2]));
    if (pp_.model_case != ModelCase::DeconvEuler) {
        const double b = s.b.l2_norm();
        acc += b * b;
    }
    return 0.5 * acc;
}

double MhdModel::viscous_dissipation_rate(const MhdState& s) const {
    if (pp_.nu == 0.0) return 0.0;
    double acc = 0.0;
    for_each_mode(grid_, [&](int kx, int ky, int kz, std::size_t m) {
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const std::complex<double>* w = s.w.mode(m);
        acc += k_sq * energy_weight_[m] * (std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]));
    });
    return pp_.nu * acc;
}

double MhdModel::magnetic_dissipation_rate(const MhdState& s) const {
    if (pp_.mu == 0.0 || pp_.model_case == ModelCase::DeconvEuler) return 0.0;
    const double h1 = sobolev_norm(s.b, 1.0);
    return pp_.mu * h1 * h1;
}

double model_energy(const MhdState& s, const FilterParams& fp, const DeconvParams& dp,
                    ModelCase model_case) {
    double acc = 0.0;
    for_each_mode(s.w.grid(), [&](int kx, int ky, int kz, std::size_t m) {
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const double a_hat = helmholtz_symbol(k_sq, fp, 1.0);
        const double d_hat =
            model_case == ModelCase::LimitModel ? a_hat : deconv_symbol(k_sq, fp, dp);
        const std::complex<double>* w = s.w.mode(m);
        acc += a_hat * d_hat * (std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]));
    });
    if (model_case != ModelCase::DeconvEuler) {
        const double b = s.b.l2_norm();
        acc += b * b;
    }
    return 0.5 * acc;
}

} // namespace admhd
