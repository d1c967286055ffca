#include "admhd/snapshot.hpp"

#include "admhd/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>

namespace admhd {

static_assert(std::endian::native == std::endian::little,
              "snapshot io assumes a little-endian host");

namespace {

constexpr char kMagic[6] = {'A', 'D', 'M', 'H', 'D', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

double get_f64(std::istream& is) {
    double v = 0.0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

void write_coeffs(std::ostream& os, const std::vector<std::complex<double>>& coeffs,
                  std::uint32_t components) {
    put_u32(os, components);
    os.write(reinterpret_cast<const char*>(coeffs.data()),
             static_cast<std::streamsize>(coeffs.size() * sizeof(std::complex<double>)));
}

void read_coeffs(std::istream& is, std::vector<std::complex<double>>& coeffs,
                 std::uint32_t expected_components, const std::string& path) {
    const std::uint32_t components = get_u32(is);
    if (components != expected_components)
        throw config_error("snapshot " + path + ": expected " +
                           std::to_string(expected_components) + "-component field, got " +
                           std::to_string(components));
    is.read(reinterpret_cast<char*>(coeffs.data()),
            static_cast<std::streamsize>(coeffs.size() * sizeof(std::complex<double>)));
    if (!is) throw config_error("snapshot " + path + ": truncated coefficient payload");
}

std::ifstream open_and_check_header(const std::string& path, GridSpec& grid,
                                    std::uint32_t& field_count, double& time) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open snapshot " + path);
    char magic[6];
    is.read(magic, 6);
    if (!is || !std::equal(magic, magic + 6, kMagic))
        throw config_error("snapshot " + path + ": bad magic");
    grid.n_per_axis = static_cast<int>(get_u32(is));
    grid.padded_n = static_cast<int>(get_u32(is));
    field_count = get_u32(is);
    time = get_f64(is);
    grid.validate();
    return is;
}

void check_vector_invariants(const SpectralVectorField& f, const std::string& path) {
    if (mean_residual(f) != 0.0)
        throw invariant_error("snapshot " + path + ": nonzero mean coefficient");
    const double tol = 1e-12 * std::max(f.l2_norm(), 1e-300);
    if (conjugate_symmetry_residual(f) > tol)
        throw invariant_error("snapshot " + path + ": broken conjugate symmetry");
}

} // namespace

void write_state_snapshot(const std::string& path, const MhdState& state) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw config_error("cannot write snapshot " + path);
    os.write(kMagic, 6);
    put_u32(os, static_cast<std::uint32_t>(state.w.grid().n_per_axis));
    put_u32(os, static_cast<std::uint32_t>(state.w.grid().padded_n));
    put_u32(os, 2);
    put_f64(os, state.t);
    write_coeffs(os, state.w.raw(), 3);
    write_coeffs(os, state.b.raw(), 3);
    if (!os) throw config_error("short write on snapshot " + path);
}

MhdState read_state_snapshot(const std::string& path, const GridSpec* expected_grid) {
    GridSpec grid;
    std::uint32_t field_count = 0;
    double time = 0.0;
    std::ifstream is = open_and_check_header(path, grid, field_count, time);
    if (field_count != 2)
        throw config_error("snapshot " + path + ": expected 2 fields (w, B), got " +
                           std::to_string(field_count));
    if (expected_grid != nullptr && !(grid == *expected_grid))
        throw config_error("snapshot " + path + ": grid " + std::to_string(grid.n_per_axis) +
                           "/" + std::to_string(grid.padded_n) + " does not match configured " +
                           std::to_string(expected_grid->n_per_axis) + "/" +
                           std::to_string(expected_grid->padded_n));

    MhdState state;
    state.t = time;
    state.w = SpectralVectorField(grid);
    state.b = SpectralVectorField(grid);
    read_coeffs(is, state.w.raw(), 3, path);
    read_coeffs(is, state.b.raw(), 3, path);
    check_vector_invariants(state.w, path);
    check_vector_invariants(state.b, path);
    return state;
}

void write_scalar_snapshot(const std::string& path, const SpectralScalarField& f, double time) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw config_error("cannot write snapshot " + path);
    os.write(kMagic, 6);
    put_u32(os, static_cast<std::uint32_t>(f.grid().n_per_axis));
    put_u32(os, static_cast<std::uint32_t>(f.grid().padded_n));
    put_u32(os, 1);
    put_f64(os, time);
    write_coeffs(os, f.raw(), 1);
    if (!os) throw config_error("short write on snapshot " + path);
}

SpectralScalarField read_scalar_snapshot(const std::string& path, double* time_out) {
    GridSpec grid;
    std::uint32_t field_count = 0;
    double time = 0.0;
    std::ifstream is = open_and_check_header(path, grid, field_count, time);
    if (field_count != 1)
        throw config_error("snapshot " + path + ": expected 1 scalar field, got " +
                           std::to_string(field_count));
    SpectralScalarField f(grid);
    read_coeffs(is, f.raw(), 1, path);
    if (time_out != nullptr) *time_out = time;
    return f;
}

} // namespace admhd
