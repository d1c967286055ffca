#pragma once

#include "admhd/mhd_model.hpp"
#include "admhd/spectral_field.hpp"

#include <string>

namespace admhd {

/// Binary snapshot format, little-endian throughout:
///   magic "ADMHD1" (6 bytes)
///   n_per_axis  : uint32
///   padded_n    : uint32
///   field_count : uint32
///   time        : float64
/// then per field:
///   component_count : uint32 (3 for vector fields, 1 for scalars)
///   coefficients    : per lattice point in lexicographic k order, per
///                     component, (re, im) as float64
///
/// State snapshots hold two vector fields (w, then B). Round trips are
/// bit-identical.
void write_state_snapshot(const std::string& path, const MhdState& state);

/// Reads a state snapshot. If expected_grid is non-null its dimensions must
/// match the header (config_error otherwise). Broken reality/mean invariants
/// in the coefficient payload raise invariant_error.
MhdState read_state_snapshot(const std::string& path, const GridSpec* expected_grid = nullptr);

void write_scalar_snapshot(const std::string& path, const SpectralScalarField& f, double time);
SpectralScalarField read_scalar_snapshot(const std::string& path, double* time_out = nullptr);

} // namespace admhd
