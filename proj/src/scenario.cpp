#include "dce/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>

#include "dce/constants.hpp"
#include "dce/errors.hpp"

namespace dce::scenario {

using json = nlohmann::json;

namespace {

constexpr double kTwoPi = constants::two_pi;

double hz_to_rad(double hz) { return hz * kTwoPi; }

// Inverse of hz_to_rad that reproduces the original Hz value whenever one exists.
double rad_to_hz(double omega) {
    const double guess = omega / kTwoPi;
    double lo = guess;
    double hi = guess;
    for (int k = 0; k < 4; ++k) {
        if (hz_to_rad(lo) == omega) {
            return lo;
        }
        if (hz_to_rad(hi) == omega) {
            return hi;
        }
        lo = std::nextafter(lo, -INFINITY);
        hi = std::nextafter(hi, INFINITY);
    }
    return guess;
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

// Path-aware view of one JSON object. Every key must be consumed.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError(path_, "expected an object");
        }
    }

    double number(const std::string& key) {
        const json& v = field(key);
        if (!v.is_number()) {
            throw ConfigError(join(path_, key), "expected a number");
        }
        const double x = v.get<double>();
        if (!std::isfinite(x)) {
            throw ConfigError(join(path_, key), "must be finite");
        }
        return x;
    }

    std::optional<double> optional_number(const std::string& key) {
        if (!j_.contains(key)) {
            return std::nullopt;
        }
        return number(key);
    }

    int integer(const std::string& key) {
        const json& v = field(key);
        if (!v.is_number_integer()) {
            throw ConfigError(join(path_, key), "expected an integer");
        }
        return v.get<int>();
    }

    std::string string(const std::string& key) {
        const json& v = field(key);
        if (!v.is_string()) {
            throw ConfigError(join(path_, key), "expected a string");
        }
        return v.get<std::string>();
    }

    Section object(const std::string& key) { return {field(key), join(path_, key)}; }

    void finish() const {
        for (const auto& [key, _] : j_.items()) {
            if (seen_.count(key) == 0) {
                throw ConfigError(join(path_, key), "unknown field");
            }
        }
    }

    [[nodiscard]] const std::string& path() const { return path_; }

private:
    const json& field(const std::string& key) {
        auto it = j_.find(key);
        if (it == j_.end()) {
            throw ConfigError(join(path_, key), "missing required field");
        }
        seen_.insert(key);
        return *it;
    }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename Fn>
void checked(const std::string& path, Fn&& fn) {
    try {
        fn();
    } catch (const InvalidArgument& e) {
        throw ConfigError(path, e.what());
    }
}

bool is_resonant(const Scenario& s) {
    return std::abs(s.drive.omega_d - s.geometry.omega_m) <= 1e-9 * s.geometry.omega_m;
}

json low_q_json() {
    const double eps = 9.2 * constants::vacuum_permittivity;
    const double t = 3.5e-7;
    const double c_plate = 0.4e-12;
    return json{
        {"name", "low-q"},
        {"material",
         {{"youngs_modulus_pa", 308e9},
          {"density_kg_per_m3", 3230.0},
          {"d33_m_per_v", 5.1e-12},
          {"poisson_ratio", 0.287},
          {"sound_speed_m_per_s", 9100.0},
          {"permittivity_f_per_m", eps}}},
        {"geometry",
         {{"thickness_m", t},
          {"area_m2", piezo::area_for_capacitance({0, 0, 0, 0, 0, eps}, t, c_plate)},
          {"quality_factor", 300.0},
          {"resonance_hz", 4.2e9}}},
        {"drive", {{"v_pp_volts", 5e-4}, {"phase_rad", constants::pi / 2.0}, {"frequency_hz", 4.2e9}}},
        {"mbvd",
         {{"c_m_farads", 0.655e-15},
          {"l_m_henries", 1.043e-6},
          {"r_m_ohms", 146.0},
          {"r_0_ohms", 8.0},
          {"r_s_ohms", 0.0},
          {"c_plate_farads", c_plate}}},
        {"cavity", {{"length_m", 0.033}, {"v_light_m_per_s", 1e8}, {"coupling_hz", 29.1e9}}},
        {"line", {{"z0_ohms", 55.0}, {"v_light_m_per_s", 1e8}}},
        {"environment", {{"temperature_k", 0.01}}},
        {"window_time_s", 1e-6},
        {"grid", {{"min_hz", 4.2e7}, {"max_hz", 4.158e9}, {"points", 2000}}},
    };
}

}  // namespace

std::vector<double> FrequencyGrid::values() const {
    std::vector<double> out(static_cast<std::size_t>(points));
    const double span = omega_max - omega_min;
    for (int i = 0; i < points; ++i) {
        out[static_cast<std::size_t>(i)] =
            i + 1 == points ? omega_max
                            : omega_min + span * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return out;
}

void Scenario::validate() const {
    checked("material", [&] { material.validate(); });
    checked("geometry", [&] { geometry.validate(); });
    checked("drive", [&] { drive.validate(); });
    checked("mbvd", [&] { mbvd.validate(); });
    checked("line", [&] { line.validate(); });
    checked("environment", [&] { env.validate(); });
    checked("cavity", [&] {
        cavity::CavityParams{cavity.length_d, cavity.v_light, line.z0, cavity.omega_coupling, 0.0}
            .validate();
    });
    if (!(grid.points >= 2)) {
        throw ConfigError("grid.points", "need at least 2 points");
    }
    if (!(grid.omega_min > 0.0 && grid.omega_min < grid.omega_max &&
          grid.omega_max < geometry.omega_m)) {
        throw ConfigError("grid", "grid must satisfy 0 < min < max < mechanical resonance");
    }
    try {
        (void)build_model(*this);
    } catch (const ValidityError& e) {
        throw ConfigError("drive.v_pp_volts", e.what());
    } catch (const InvalidArgument& e) {
        throw ConfigError("window_time_s", e.what());
    }
}

Model build_model(const Scenario& s, const ModelOverrides& overrides) {
    Model m{};
    m.omega_m = s.geometry.omega_m;
    if (overrides.delta_x) {
        m.delta_x = *overrides.delta_x;
    } else {
        m.delta_x = is_resonant(s) ? piezo::driven_amplitude(s.material, s.geometry, s.drive)
                                   : piezo::response_amplitude(s.material, s.geometry, s.drive);
    }
    m.plate = piezo::delta_capacitance(s.material, s.geometry, m.delta_x);
    if (overrides.no_mechanics) {
        m.plate.delta_c = 0.0;
    }
    m.source = scatter::SourceConfig{s.drive,
                                     {m.plate.c0, m.plate.delta_c, m.omega_m},
                                     overrides.window_time.value_or(s.window_time)};
    m.source.validate();
    m.line = s.line;
    m.cavity = cavity::CavityParams{s.cavity.length_d, s.cavity.v_light, s.line.z0,
                                    s.cavity.omega_coupling,
                                    scatter::effective_length(m.plate.c0, s.line)};
    m.cavity.validate();
    m.env = s.env;
    m.omega_0_bare = kTwoPi * s.cavity.v_light / s.cavity.length_d;
    return m;
}

std::vector<std::string> preset_names() { return {"low-q", "high-q", "metamaterial"}; }

json preset_json(std::string_view name) {
    json j = low_q_json();
    if (name == "low-q") {
        return j;
    }
    if (name == "high-q") {
        j["name"] = "high-q";
        j["geometry"]["quality_factor"] = 3e6;
        j["drive"]["v_pp_volts"] = 5e-6;
        return j;
    }
    if (name == "metamaterial") {
        j["name"] = "metamaterial";
        const double z0 = 1e4;
        // same capacitance per length as the 55 Ohm line
        j["line"]["z0_ohms"] = z0;
        j["line"]["v_light_m_per_s"] = 1e8 * 55.0 / z0;
        return j;
    }
    throw ConfigError("", "unknown preset '" + std::string(name) + "'");
}

Scenario preset(std::string_view name) { return scenario_from_json(preset_json(name)); }

Scenario scenario_from_json(const json& j) {
    Section root(j, "");
    Scenario s;
    s.name = root.string("name");

    {
        Section m = root.object("material");
        s.material.youngs_modulus = m.number("youngs_modulus_pa");
        s.material.density = m.number("density_kg_per_m3");
        s.material.d33 = m.number("d33_m_per_v");
        s.material.poisson = m.number("poisson_ratio");
        s.material.sound_speed = m.number("sound_speed_m_per_s");
        s.material.permittivity = m.number("permittivity_f_per_m");
        m.finish();
    }
    {
        Section g = root.object("geometry");
        s.geometry.t_piezo = g.number("thickness_m");
        s.geometry.area = g.number("area_m2");
        s.geometry.quality = g.number("quality_factor");
        s.geometry.omega_m = hz_to_rad(g.number("resonance_hz"));
        g.finish();
    }
    {
        Section d = root.object("drive");
        s.drive.v_pp = d.number("v_pp_volts");
        s.drive.phase = d.number("phase_rad");
        s.drive.omega_d = hz_to_rad(d.number("frequency_hz"));
        d.finish();
    }
    {
        Section b = root.object("mbvd");
        s.mbvd.c_m = b.number("c_m_farads");
        s.mbvd.l_m = b.number("l_m_henries");
        s.mbvd.r_m = b.number("r_m_ohms");
        s.mbvd.r_0 = b.number("r_0_ohms");
        s.mbvd.r_s = b.number("r_s_ohms");
        s.mbvd.c_plate = b.number("c_plate_farads");
        b.finish();
    }
    {
        Section c = root.object("cavity");
        s.cavity.length_d = c.number("length_m");
        s.cavity.v_light = c.number("v_light_m_per_s");
        s.cavity.omega_coupling = hz_to_rad(c.number("coupling_hz"));
        c.finish();
    }
    {
        Section l = root.object("line");
        const double z0 = l.number("z0_ohms");
        const double v = l.number("v_light_m_per_s");
        const auto cap = l.optional_number("cap_density_f_per_m");
        l.finish();
        if (!(z0 > 0.0) || !(v > 0.0)) {
            throw ConfigError("line", "z0 and v_light must be > 0");
        }
        s.line = scatter::LineParams::from_impedance(z0, v);
        if (cap && std::abs(*cap / s.line.cap_density - 1.0) > 1e-9) {
            throw ConfigError("line.cap_density_f_per_m", "inconsistent with 1/(z0 v_light)");
        }
    }
    {
        Section e = root.object("environment");
        s.env.temperature = e.number("temperature_k");
        e.finish();
    }
    s.window_time = root.number("window_time_s");
    {
        Section g = root.object("grid");
        s.grid.omega_min = hz_to_rad(g.number("min_hz"));
        s.grid.omega_max = hz_to_rad(g.number("max_hz"));
        s.grid.points = g.integer("points");
        g.finish();
    }
    root.finish();
    s.validate();
    return s;
}

json scenario_to_json(const Scenario& s) {
    return json{
        {"name", s.name},
        {"material",
         {{"youngs_modulus_pa", s.material.youngs_modulus},
          {"density_kg_per_m3", s.material.density},
          {"d33_m_per_v", s.material.d33},
          {"poisson_ratio", s.material.poisson},
          {"sound_speed_m_per_s", s.material.sound_speed},
          {"permittivity_f_per_m", s.material.permittivity}}},
        {"geometry",
         {{"thickness_m", s.geometry.t_piezo},
          {"area_m2", s.geometry.area},
          {"quality_factor", s.geometry.quality},
          {"resonance_hz", rad_to_hz(s.geometry.omega_m)}}},
        {"drive",
         {{"v_pp_volts", s.drive.v_pp},
          {"phase_rad", s.drive.phase},
          {"frequency_hz", rad_to_hz(s.drive.omega_d)}}},
        {"mbvd",
         {{"c_m_farads", s.mbvd.c_m},
          {"l_m_henries", s.mbvd.l_m},
          {"r_m_ohms", s.mbvd.r_m},
          {"r_0_ohms", s.mbvd.r_0},
          {"r_s_ohms", s.mbvd.r_s},
          {"c_plate_farads", s.mbvd.c_plate}}},
        {"cavity",
         {{"length_m", s.cavity.length_d},
          {"v_light_m_per_s", s.cavity.v_light},
          {"coupling_hz", rad_to_hz(s.cavity.omega_coupling)}}},
        {"line", {{"z0_ohms", s.line.z0}, {"v_light_m_per_s", s.line.v_light}}},
        {"environment", {{"temperature_k", s.env.temperature}}},
        {"window_time_s", s.window_time},
        {"grid",
         {{"min_hz", rad_to_hz(s.grid.omega_min)},
          {"max_hz", rad_to_hz(s.grid.omega_max)},
          {"points", s.grid.points}}},
    };
}

std::string scenario_hash(const Scenario& s) {
    const std::string text = scenario_to_json(s).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

json read_json_file(std::string_view path) {
    std::ifstream in{std::string(path)};
    if (!in) {
        throw ConfigError("", "cannot open '" + std::string(path) + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Scenario load_scenario(std::string_view path_or_preset) {
    for (const auto& name : preset_names()) {
        if (name == path_or_preset) {
            return preset(name);
        }
    }
    return scenario_from_json(read_json_file(path_or_preset));
}

SqueezeConfig default_squeeze_config() {
    SqueezeConfig c;
    c.name = "default";
    const double omega = kTwoPi * 2.1e9;
    c.lc.cap_cavity = 0.4e-12;
    c.lc.cap_mirror = 0.4e-12;
    c.lc.inductance = 1.0 / (omega * omega * c.lc.total_capacitance());
    c.lc.gap = 3.5e-7;
    c.lc.delta_x = 8.5e-13;
    c.lc.omega_m = hz_to_rad(4.2e9);
    c.t_max = 1.0 / (2.0 * squeeze::squeeze_coupling(c.lc));
    c.samples = 21;
    c.dim = 60;
    return c;
}

SqueezeConfig squeeze_config_from_json(const json& j) {
    Section root(j, "");
    SqueezeConfig c;
    c.name = root.string("name");
    c.lc.inductance = root.number("inductance_henries");
    c.lc.cap_cavity = root.number("cap_cavity_farads");
    c.lc.cap_mirror = root.number("cap_mirror_farads");
    c.lc.gap = root.number("gap_m");
    c.lc.delta_x = root.number("delta_x_m");
    c.lc.omega_m = hz_to_rad(root.number("modulation_hz"));
    c.t_max = root.number("t_max_s");
    c.samples = root.integer("samples");
    c.dim = root.integer("dim");
    root.finish();
    checked("", [&] { c.lc.validate(); });
    if (!(c.t_max >= 0.0)) {
        throw ConfigError("t_max_s", "must be >= 0");
    }
    if (c.samples < 2) {
        throw ConfigError("samples", "need at least 2 samples");
    }
    if (c.dim < 16) {
        throw ConfigError("dim", "truncation dimension must be >= 16");
    }
    return c;
}

json squeeze_config_to_json(const SqueezeConfig& c) {
    return json{
        {"name", c.name},
        {"inductance_henries", c.lc.inductance},
        {"cap_cavity_farads", c.lc.cap_cavity},
        {"cap_mirror_farads", c.lc.cap_mirror},
        {"gap_m", c.lc.gap},
        {"delta_x_m", c.lc.delta_x},
        {"modulation_hz", rad_to_hz(c.lc.omega_m)},
        {"t_max_s", c.t_max},
        {"samples", c.samples},
        {"dim", c.dim},
    };
}

SqueezeConfig load_squeeze_config(std::string_view path_or_preset) {
    if (path_or_preset == "default") {
        return default_squeeze_config();
    }
    return squeeze_config_from_json(read_json_file(path_or_preset));
}

}  // namespace dce::scenario
