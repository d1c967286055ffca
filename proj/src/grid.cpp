#include "admhd/grid.hpp"

#include "admhd/errors.hpp"

#include <cmath>
#include <string>

namespace admhd {

GridSpec GridSpec::with_default_padding(int n_per_axis) {
    GridSpec g;
    g.n_per_axis = n_per_axis;
    g.padded_n = 3 * n_per_axis / 2;
    if (g.padded_n % 2 != 0) ++g.padded_n;
    return g;
}

void GridSpec::validate() const {
    if (n_per_axis < 4 || n_per_axis % 2 != 0)
        throw config_error("grid.n must be an even integer >= 4, got " +
                           std::to_string(n_per_axis));
    const int min_padded = (3 * n_per_axis + 1) / 2;
    if (padded_n < min_padded || padded_n % 2 != 0)
        throw config_error("grid.padded_n must be an even integer >= ceil(3n/2) = " +
                           std::to_string(min_padded) + ", got " + std::to_string(padded_n));
}

double GridSpec::dx() const { return 2.0 * M_PI / static_cast<double>(padded_n); }

} // namespace admhd
