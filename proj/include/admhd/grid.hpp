#pragma once

#include <cstddef>
#include <cstdint>

namespace admhd {

/// Truncated Fourier lattice on the periodic box [0, 2pi)^3.
///
/// Retained wavenumbers per axis are |k_j| <= n_per_axis/2 - 1; quadratic
/// products are evaluated on a padded physical grid of padded_n points per
/// axis so that the truncated product equals the exact Galerkin projection
/// (3/2 rule). The box period is fixed at 2pi, so wavenumbers are integers.
struct GridSpec {
    int n_per_axis = 0;
    int padded_n = 0;

    /// GridSpec with the minimal alias-free padding 3n/2.
    static GridSpec with_default_padding(int n_per_axis);

    /// Throws config_error if the invariants do not hold
    /// (even n >= 4, even padded_n >= 3n/2).
    void validate() const;

    /// Largest retained wavenumber component K = n/2 - 1.
    int max_wave() const { return n_per_axis / 2 - 1; }

    /// Retained lattice points per axis (2K + 1).
    int modes_per_axis() const { return 2 * max_wave() + 1; }

    /// Total retained lattice points (including the pinned k = 0 slot).
    std::size_t mode_count() const {
        const std::size_t l = static_cast<std::size_t>(modes_per_axis());
        return l * l * l;
    }

    /// Lexicographic flat index of (kx, ky, kz), each in [-K, K].
    std::size_t flat_index(int kx, int ky, int kz) const {
        const int k = max_wave();
        const std::size_t l = static_cast<std::size_t>(modes_per_axis());
        return (static_cast<std::size_t>(kx + k) * l + static_cast<std::size_t>(ky + k)) * l +
               static_cast<std::size_t>(kz + k);
    }

    std::size_t physical_point_count() const {
        const std::size_t m = static_cast<std::size_t>(padded_n);
        return m * m * m;
    }

    /// Physical grid spacing 2pi / padded_n.
    double dx() const;

    bool operator==(const GridSpec&) const = default;
};

/// Calls fn(kx, ky, kz, flat_index) for every retained lattice point in
/// lexicographic order, k = 0 included.
template <typename Fn>
void for_each_mode(const GridSpec& grid, Fn&& fn) {
    const int k = grid.max_wave();
    std::size_t m = 0;
    for (int kx = -k; kx <= k; ++kx)
        for (int ky = -k; ky <= k; ++ky)
            for (int kz = -k; kz <= k; ++kz)
                fn(kx, ky, kz, m++);
}

} // namespace admhd
