#pragma once

// Scenario configuration: JSON ingestion with SI units and unit-suffixed keys,
// the built-in presets, and assembly of the derived simulation model.
// Frequencies are given in Hz in JSON and held as rad/s in memory.

#include "json.hpp"
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dce/cavity.hpp"
#include "dce/flux.hpp"
#include "dce/mbvd.hpp"
#include "dce/piezo.hpp"
#include "dce/scatter.hpp"
#include "dce/squeeze.hpp"

namespace dce::scenario {

struct FrequencyGrid {
    double omega_min;  ///< rad/s
    double omega_max;  ///< rad/s
    int points;

    /// Evenly spaced points including both ends.
    [[nodiscard]] std::vector<double> values() const;
};

struct CavityConfig {
    double length_d;        ///< m
    double v_light;         ///< m/s
    double omega_coupling;  ///< rad/s
};

struct Scenario {
    std::string name;
    piezo::MaterialProps material{};
    piezo::FbarGeometry geometry{};
    piezo::DriveParams drive{};
    mbvd::MbvdParams mbvd{};
    CavityConfig cavity{};
    scatter::LineParams line{};
    flux::ThermalEnv env{};
    double window_time{};
    FrequencyGrid grid{};

    /// Throws ConfigError naming the violated invariant.
    void validate() const;
};

/// Everything the solvers need, derived once from a Scenario.
struct Model {
    double omega_m;
    double delta_x;
    piezo::PlateCapacitance plate;
    scatter::SourceConfig source;
    scatter::LineParams line;
    cavity::CavityParams cavity;
    flux::ThermalEnv env;
    /// Fundamental from the bare length d (2 pi v / d), reported next to omega_0.
    double omega_0_bare;
};

struct ModelOverrides {
    std::optional<double> delta_x;
    std::optional<double> window_time;
    bool no_mechanics = false;  ///< pin delta_c to zero
};

[[nodiscard]] Model build_model(const Scenario& s, const ModelOverrides& overrides = {});

[[nodiscard]] std::vector<std::string> preset_names();
[[nodiscard]] nlohmann::json preset_json(std::string_view name);
[[nodiscard]] Scenario preset(std::string_view name);

/// Preset name or path to a JSON file.
[[nodiscard]] Scenario load_scenario(std::string_view path_or_preset);

[[nodiscard]] Scenario scenario_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json scenario_to_json(const Scenario& s);

/// FNV-1a 64 of the canonical JSON form, as 16 hex digits.
[[nodiscard]] std::string scenario_hash(const Scenario& s);

/// LC parameters plus integration settings for the squeeze command.
struct SqueezeConfig {
    std::string name;
    squeeze::LcParams lc{};
    double t_max{};
    int samples{};
    int dim{};
};

[[nodiscard]] SqueezeConfig default_squeeze_config();
[[nodiscard]] SqueezeConfig squeeze_config_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json squeeze_config_to_json(const SqueezeConfig& c);
/// "default" or a path to a JSON file.
[[nodiscard]] SqueezeConfig load_squeeze_config(std::string_view path_or_preset);

}  // namespace dce::scenario
