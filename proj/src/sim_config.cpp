#include "admhd/sim_config.hpp"

#include "admhd/errors.hpp"
#include "admhd/initial_conditions.hpp"
#include "admhd/snapshot.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace admhd {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

/// Raw key/value view of the document plus a violation collector.
class KeyValueDoc {
public:
    KeyValueDoc(const std::string& text, std::vector<std::string>& violations)
        : violations_(violations) {
        std::istringstream is(text);
        std::string line;
        int line_no = 0;
        while (std::getline(is, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                violations_.push_back("line " + std::to_string(line_no) +
                                      ": expected 'key = value', got '" + line + "'");
                continue;
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (!entries_.emplace(key, value).second)
                violations_.push_back("duplicate key '" + key + "'");
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    double get_double(const std::string& key, double fallback, bool required = false) {
        const std::string* raw = lookup(key, required);
        if (raw == nullptr) return fallback;
        try {
            std::size_t pos = 0;
            const double v = std::stod(*raw, &pos);
            if (pos != raw->size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            violations_.push_back("key '" + key + "': cannot parse value '" + *raw + "'");
            return fallback;
        }
    }

    long long get_int(const std::string& key, long long fallback, bool required = false) {
        const std::string* raw = lookup(key, required);
        if (raw == nullptr) return fallback;
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(*raw, &pos, 10);
            if (pos != raw->size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            violations_.push_back("key '" + key + "': cannot parse value '" + *raw + "'");
            return fallback;
        }
    }

    std::string get_string(const std::string& key, const std::string& fallback,
                           bool required = false) {
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            if (required) violations_.push_back("missing required key '" + key + "'");
            return fallback;
        }
        consumed_.insert(key);
        return it->second;
    }

    void report_unknown_keys() {
        for (const auto& [key, value] : entries_)
            if (consumed_.count(key) == 0) violations_.push_back("unknown key '" + key + "'");
    }

private:
    const std::string* lookup(const std::string& key, bool required) {
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            if (required) violations_.push_back("missing required key '" + key + "'");
            return nullptr;
        }
        consumed_.insert(key);
        return &it->second;
    }

    std::map<std::string, std::string> entries_;
    std::set<std::string> consumed_;
    std::vector<std::string>& violations_;
};

const char* to_string(InitialKind k) {
    switch (k) {
    case InitialKind::Abc: return "abc";
    case InitialKind::RandomSolenoidal: return "random_solenoidal";
    case InitialKind::FromSnapshot: return "from_snapshot";
    }
    return "?";
}

} // namespace

SimConfig parse_config(const std::string& text) {
    std::vector<std::string> violations;
    KeyValueDoc doc(text, violations);
    SimConfig cfg;

    cfg.grid.n_per_axis = static_cast<int>(doc.get_int("grid.n", 0, true));
    const int default_padded = cfg.grid.n_per_axis > 0
                                   ? GridSpec::with_default_padding(cfg.grid.n_per_axis).padded_n
                                   : 0;
    cfg.grid.padded_n = static_cast<int>(doc.get_int("grid.padded_n", default_padded));

    cfg.filter.alpha = doc.get_double("filter.alpha", 1.0, true);
    cfg.filter.theta = doc.get_double("filter.theta", 1.0, true);
    cfg.deconv.order_n = static_cast<int>(doc.get_int("deconv.order_n", 0, true));

    const std::string case_name = doc.get_string("physics.case", "", true);
    if (case_name == "double_viscous") cfg.physics.model_case = ModelCase::DoubleViscous;
    else if (case_name == "inviscid_momentum") cfg.physics.model_case = ModelCase::InviscidMomentum;
    else if (case_name == "deconv_euler") cfg.physics.model_case = ModelCase::DeconvEuler;
    else if (case_name == "limit_model") cfg.physics.model_case = ModelCase::LimitModel;
    else if (!case_name.empty())
        violations.push_back("physics.case must be one of double_viscous, inviscid_momentum, "
                             "deconv_euler, limit_model; got '" + case_name + "'");
    cfg.physics.nu = doc.get_double("physics.nu", 0.0, true);
    cfg.physics.mu = doc.get_double("physics.mu", 0.0, true);

    cfg.integrator.dt = doc.get_double("integrator.dt", 1e-3);
    cfg.integrator.t_end = doc.get_double("integrator.t_end", 1.0, true);
    cfg.integrator.cfl_safety = doc.get_double("integrator.cfl_safety", 0.5);

    const std::string kind = doc.get_string("initial.kind", "", true);
    if (kind == "abc") cfg.initial.kind = InitialKind::Abc;
    else if (kind == "random_solenoidal") cfg.initial.kind = InitialKind::RandomSolenoidal;
    else if (kind == "from_snapshot") cfg.initial.kind = InitialKind::FromSnapshot;
    else if (!kind.empty())
        violations.push_back(
            "initial.kind must be one of abc, random_solenoidal, from_snapshot; got '" + kind +
            "'");
    cfg.initial.abc.a = doc.get_double("initial.abc.a", 1.0);
    cfg.initial.abc.b = doc.get_double("initial.abc.b", 1.0);
    cfg.initial.abc.c = doc.get_double("initial.abc.c", 1.0);
    cfg.initial.random.seed =
        static_cast<unsigned long long>(doc.get_int("initial.random.seed", 1));
    cfg.initial.random.slope = doc.get_double("initial.random.slope", -2.0);
    cfg.initial.random.band_lo = doc.get_double("initial.random.band_lo", 1.0);
    cfg.initial.random.band_hi = doc.get_double("initial.random.band_hi", 4.0);
    cfg.initial.snapshot_path = doc.get_string("initial.snapshot.path", "");
    if (cfg.initial.kind == InitialKind::FromSnapshot && cfg.initial.snapshot_path.empty())
        violations.push_back("initial.kind = from_snapshot requires initial.snapshot.path");

    cfg.output.directory = doc.get_string("output.directory", "out");
    cfg.output.record_interval = static_cast<int>(doc.get_int("output.record_interval", 1));
    cfg.output.snapshot_interval = static_cast<int>(doc.get_int("output.snapshot_interval", 0));

    doc.report_unknown_keys();

    // structural constraints, reported together with the parse problems
    try {
        cfg.grid.validate();
    } catch (const config_error& e) {
        violations.push_back(e.what());
    }
    if (!(cfg.filter.alpha > 0.0)) violations.push_back("filter.alpha must be > 0");
    if (!(cfg.filter.theta >= 0.0 && cfg.filter.theta <= 1.0))
        violations.push_back("filter.theta must be in [0, 1]");
    if (cfg.deconv.order_n < 0) violations.push_back("deconv.order_n must be >= 0");
    cfg.physics.collect_violations(violations);
    cfg.integrator.collect_violations(violations);
    if (cfg.output.record_interval < 1) violations.push_back("output.record_interval must be >= 1");
    if (cfg.output.snapshot_interval < 0)
        violations.push_back("output.snapshot_interval must be >= 0");
    if (cfg.initial.kind == InitialKind::RandomSolenoidal) {
        if (!(cfg.initial.random.band_lo >= 1.0))
            violations.push_back("initial.random.band_lo must be >= 1");
        if (!(cfg.initial.random.band_hi >= cfg.initial.random.band_lo))
            violations.push_back("initial.random.band_hi must be >= band_lo");
    }

    if (!violations.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw config_error(msg);
    }
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::string render_config(const SimConfig& cfg) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "grid.n = " << cfg.grid.n_per_axis << '\n';
    os << "grid.padded_n = " << cfg.grid.padded_n << '\n';
    os << "filter.alpha = " << cfg.filter.alpha << '\n';
    os << "filter.theta = " << cfg.filter.theta << '\n';
    os << "deconv.order_n = " << cfg.deconv.order_n << '\n';
    os << "physics.case = " << to_string(cfg.physics.model_case) << '\n';
    os << "physics.nu = " << cfg.physics.nu << '\n';
    os << "physics.mu = " << cfg.physics.mu << '\n';
    os << "integrator.dt = " << cfg.integrator.dt << '\n';
    os << "integrator.t_end = " << cfg.integrator.t_end << '\n';
    os << "integrator.cfl_safety = " << cfg.integrator.cfl_safety << '\n';
    os << "initial.kind = " << to_string(cfg.initial.kind) << '\n';
    os << "initial.abc.a = " << cfg.initial.abc.a << '\n';
    os << "initial.abc.b = " << cfg.initial.abc.b << '\n';
    os << "initial.abc.c = " << cfg.initial.abc.c << '\n';
    os << "initial.random.seed = " << cfg.initial.random.seed << '\n';
    os << "initial.random.slope = " << cfg.initial.random.slope << '\n';
    os << "initial.random.band_lo = " << cfg.initial.random.band_lo << '\n';
    os << "initial.random.band_hi = " << cfg.initial.random.band_hi << '\n';
    if (!cfg.initial.snapshot_path.empty())
        os << "initial.snapshot.path = " << cfg.initial.snapshot_path << '\n';
    os << "output.directory = " << cfg.output.directory << '\n';
    os << "output.record_interval = " << cfg.output.record_interval << '\n';
    os << "output.snapshot_interval = " << cfg.output.snapshot_interval << '\n';
    return os.str();
}

MhdState make_initial_state(const SimConfig& cfg) {
    MhdState state;
    switch (cfg.initial.kind) {
    case InitialKind::Abc: {
        SpectralVectorField v0 =
            abc_field(cfg.grid, cfg.initial.abc.a, cfg.initial.abc.b, cfg.initial.abc.c);
        state.w = apply_helmholtz_power(std::move(v0), cfg.filter, -1.0);
        state.b = SpectralVectorField(cfg.grid);
        break;
    }
    case InitialKind::RandomSolenoidal: {
        const auto& r = cfg.initial.random;
        SpectralVectorField v0 =
            random_solenoidal_field(cfg.grid, r.seed, r.slope, r.band_lo, r.band_hi);
        state.w = apply_helmholtz_power(std::move(v0), cfg.filter, -1.0);
        state.b = random_solenoidal_field(cfg.grid, r.seed ^ 0x9e3779b97f4a7c15ULL, r.slope,
                                          r.band_lo, r.band_hi);
        break;
    }
    case InitialKind::FromSnapshot:
        state = read_state_snapshot(cfg.initial.snapshot_path, &cfg.grid);
        break;
    }
    if (cfg.physics.model_case == ModelCase::DeconvEuler) state.b.set_zero();
    return state;
}

} // namespace admhd
