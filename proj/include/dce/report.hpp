#pragma once

// Command runners behind the dce_sim tool. Each writes a '#'-prefixed metadata
// block followed by a CSV table with every number printed as %.17g, so equal
// inputs give byte-identical output.

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "dce/scenario.hpp"

namespace dce::report {

struct RunOptions {
    std::optional<int> points;
    std::optional<double> window_time;
    unsigned threads = 1;
};

enum class SweepAxis { v_pp, q, z0, delta_x };

/// Throws ConfigError for an unknown axis name.
[[nodiscard]] SweepAxis parse_axis(std::string_view name);
[[nodiscard]] std::string axis_name(SweepAxis axis);

/// Rows or roots that hit a numerical failure; non-zero maps to exit code 3.
struct RunStatus {
    std::size_t numerical_failures = 0;
};

[[nodiscard]] std::string format_number(double x);

/// Applies --points / --window-time and re-validates.
[[nodiscard]] scenario::Scenario apply_options(const scenario::Scenario& s, const RunOptions& opt);

RunStatus write_spectrum(std::ostream& out, const scenario::Scenario& s, const RunOptions& opt,
                         bool decompose);
RunStatus write_resonances(std::ostream& out, const scenario::Scenario& s, const RunOptions& opt);
/// One row per value at omega = W/2. With no_mechanics the capacitance
/// modulation is pinned to zero.
RunStatus write_sweep(std::ostream& out, const scenario::Scenario& s, SweepAxis axis,
                      std::span<const double> values, const RunOptions& opt, bool no_mechanics);
RunStatus write_squeeze(std::ostream& out, const scenario::SqueezeConfig& cfg);

}  // namespace dce::report
