#pragma once

#include "admhd/mhd_model.hpp"
#include "admhd/time_integrator.hpp"

#include <string>

namespace admhd {

enum class InitialKind { Abc, RandomSolenoidal, FromSnapshot };

struct AbcInit {
    double a = 1.0, b = 1.0, c = 1.0;
    bool operator==(const AbcInit&) const = default;
};

struct RandomInit {
    unsigned long long seed = 1;
    double slope = -2.0;
    double band_lo = 1.0;
    double band_hi = 4.0;
    bool operator==(const RandomInit&) const = default;
};

struct InitialCondition {
    InitialKind kind = InitialKind::Abc;
    AbcInit abc;
    RandomInit random;
    std::string snapshot_path;
    bool operator==(const InitialCondition&) const = default;
};

struct OutputConfig {
    std::string directory = "out";
    int record_interval = 1;   // steps between diagnostics records
    int snapshot_interval = 0; // steps between snapshots; 0 = final only
    bool operator==(const OutputConfig&) const = default;
};

/// Full simulation configuration, parsed from a flat key = value document.
/// The model is nondimensional: dt and t_end are in box-time units, lengths
/// in units of the 2pi box.
struct SimConfig {
    GridSpec grid;
    FilterParams filter;
    DeconvParams deconv;
    PhysicalParams physics;
    IntegratorConfig integrator;
    InitialCondition initial;
    OutputConfig output;

    bool operator==(const SimConfig&) const = default;
};

/// Parses and fully validates a config document. Unknown keys, unparsable
/// values and violated constraints are all collected and reported together
/// in one config_error.
SimConfig parse_config(const std::string& text);

/// Reads the file and delegates to parse_config.
SimConfig load_config_file(const std::string& path);

/// Writes every effective key (defaults materialized) so that
/// parse_config(render_config(cfg)) == cfg exactly.
std::string render_config(const SimConfig& cfg);

/// Builds the initial state:
///   abc               v0 = ABC(a, b, c), w0 = A^{-1} v0, B0 = 0
///   random_solenoidal v0 = unit random solenoidal field, w0 = A^{-1} v0,
///                     B0 = independent unit random solenoidal field
///   from_snapshot     (w, B, t) read back verbatim (grid must match)
/// For the deconv_euler case B is pinned to zero. Deterministic in the seed.
MhdState make_initial_state(const SimConfig& cfg);

} // namespace admhd
