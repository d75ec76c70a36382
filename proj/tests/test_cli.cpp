#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dce/constants.hpp"
#include "dce/scenario.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kWork = fs::temp_directory_path() / "dce_cli_test";

struct Result {
    int code;
    std::string err;
};

Result run(const std::string& args) {
    fs::create_directories(kWork);
    const fs::path err = kWork / "stderr.txt";
    const std::string cmd = std::string(DCE_SIM_PATH) + " " + args + " > /dev/null 2> " + err.string();
    const int status = std::system(cmd.c_str());
    std::ifstream in(err);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_json(const std::string& name, const json& j) {
    fs::create_directories(kWork);
    const fs::path p = kWork / name;
    std::ofstream(p) << j.dump(2);
    return p;
}

}  // namespace

TEST_CASE("successful runs exit 0 and are byte-identical") {
    const auto a = kWork / "a.csv";
    const auto b = kWork / "b.csv";
    const auto c = kWork / "c.csv";
    CHECK(run("spectrum --scenario low-q --out " + a.string()).code == 0);
    CHECK(run("spectrum --scenario low-q --out " + b.string()).code == 0);
    CHECK(run("spectrum --scenario low-q --threads 3 --out " + c.string()).code == 0);
    CHECK(!slurp(a).empty());
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == slurp(c));

    for (const std::string cmd : {"decompose --points 50", "resonances", "sweep --axis z0 --values 55,1e4",
                                  "squeeze"}) {
        const auto x = kWork / "x.csv";
        const auto y = kWork / "y.csv";
        INFO(cmd);
        CHECK(run(cmd + " --out " + x.string()).code == 0);
        CHECK(run(cmd + " --out " + y.string()).code == 0);
        CHECK(slurp(x) == slurp(y));
    }
}

TEST_CASE("configuration errors exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("spectrum --bogus-flag").code == 2);
    CHECK(run("spectrum --scenario /nonexistent/scenario.json").code == 2);
    CHECK(run("spectrum --scenario no-such-preset").code == 2);
    CHECK(run("spectrum --points 1").code == 2);
    CHECK(run("sweep --axis voltage --values 1").code == 2);
    CHECK(run("sweep --axis q --values -3").code == 2);

    json j = dce::scenario::preset_json("low-q");
    j["drive"].erase("v_pp_volts");
    const auto r = run("spectrum --scenario " + write_json("missing.json", j).string());
    CHECK(r.code == 2);
    CHECK(r.err.find("drive.v_pp_volts") != std::string::npos);

    std::ofstream(kWork / "broken.json") << "{ not json";
    CHECK(run("spectrum --scenario " + (kWork / "broken.json").string()).code == 2);

    json sq = dce::scenario::squeeze_config_to_json(dce::scenario::default_squeeze_config());
    sq["modulation_hz"] = 5e9;  // breaks the rotating-wave condition
    CHECK(run("squeeze --config " + write_json("detuned.json", sq).string()).code == 2);
}

TEST_CASE("numerical failure exits 3") {
    // Vanishing cavity denominator: very strong coupling and a grid point at k d_eff = pi/2.
    json j = dce::scenario::preset_json("low-q");
    j["cavity"]["coupling_hz"] = 1e30;
    const auto model = dce::scenario::build_model(dce::scenario::scenario_from_json(j));
    const double w = dce::constants::pi / 2.0 * model.cavity.v_light / model.cavity.d_eff();
    j["grid"]["min_hz"] = w / dce::constants::two_pi;
    j["grid"]["points"] = 2;
    const auto path = write_json("singular.json", j);
    const auto out = kWork / "singular.csv";
    const auto r = run("spectrum --scenario " + path.string() + " --out " + out.string());
    CHECK(r.code == 3);
    CHECK(slurp(out).find(",numerical") != std::string::npos);
}
