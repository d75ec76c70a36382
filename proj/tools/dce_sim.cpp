// dce_sim: spectrum, decompose, resonances, sweep and squeeze runs.
// Exit codes: 0 success, 2 configuration or schema error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dce/errors.hpp"
#include "dce/report.hpp"
#include "dce/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Writes to --out (or stdout) only after the whole table is built.
int emit(const std::string& path, const std::string& text, const dce::report::RunStatus& status) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << path << "'\n";
            return kExitConfig;
        }
        out << text;
    }
    if (status.numerical_failures > 0) {
        std::cerr << "error: " << status.numerical_failures << " row(s) failed numerically\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-domain simulator for photon generation by an electro-mechanically "
                 "modulated transmission-line cavity"};
    app.require_subcommand(1);

    std::string scenario_arg = "low-q";
    std::string out_path;
    int points = 0;
    double window_time = 0.0;
    unsigned threads = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_arg, "Preset (low-q, high-q, metamaterial) or JSON path");
        cmd->add_option("--out", out_path, "Output CSV path (default stdout)");
        cmd->add_option("--points", points, "Override grid point count")->check(CLI::PositiveNumber);
        cmd->add_option("--window-time", window_time, "Override window time in seconds")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* spectrum = app.add_subcommand("spectrum", "Output photon spectrum");
    add_common(spectrum);
    auto* decompose = app.add_subcommand("decompose", "Spectrum with the mechanical-only share");
    add_common(decompose);
    auto* resonances = app.add_subcommand("resonances", "Cavity resonances in the grid band");
    add_common(resonances);

    auto* sweep = app.add_subcommand("sweep", "Flux at half the modulation frequency per axis value");
    add_common(sweep);
    std::string axis;
    std::vector<double> values;
    bool no_mechanics = false;
    sweep->add_option("--axis", axis, "v_pp, q, z0 or delta_x")->required();
    sweep->add_option("--values", values, "Axis values (SI units)")->required()->delimiter(',');
    sweep->add_flag("--no-mechanics", no_mechanics, "Pin the capacitance modulation to zero");

    auto* squeeze = app.add_subcommand("squeeze", "Truncated squeezing evolution against sinh^2");
    std::string squeeze_cfg = "default";
    squeeze->add_option("--config,--scenario", squeeze_cfg, "\"default\" or JSON path");
    squeeze->add_option("--out", out_path, "Output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    dce::report::RunOptions opt;
    if (points > 0) opt.points = points;
    if (window_time > 0.0) opt.window_time = window_time;
    opt.threads = threads;

    try {
        std::ostringstream buf;
        dce::report::RunStatus status;
        if (squeeze->parsed()) {
            status = dce::report::write_squeeze(buf, dce::scenario::load_squeeze_config(squeeze_cfg));
        } else {
            const auto s = dce::scenario::load_scenario(scenario_arg);
            if (spectrum->parsed()) {
                status = dce::report::write_spectrum(buf, s, opt, false);
            } else if (decompose->parsed()) {
                status = dce::report::write_spectrum(buf, s, opt, true);
            } else if (resonances->parsed()) {
                status = dce::report::write_resonances(buf, s, opt);
            } else {
                status = dce::report::write_sweep(buf, s, dce::report::parse_axis(axis), values, opt,
                                                  no_mechanics);
            }
        }
        return emit(out_path, buf.str(), status);
    } catch (const dce::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const dce::InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const dce::GuardBandError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const dce::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
