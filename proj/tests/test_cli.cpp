#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "phasequant_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_path = scratch_dir() / ("out_" + std::to_string(counter++) + ".txt");
    const std::string cmd =
        std::string(PHASEQUANT_BIN) + " " + args + " > " + out_path.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(out_path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    result.out = ss.str();
    return result;
}

bool all_numbers_finite(const json& j) {
    if (j.is_number_float()) return std::isfinite(j.get<double>());
    if (j.is_object() || j.is_array()) {
        for (const auto& item : j)
            if (!all_numbers_finite(item)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("spectrum command emits the level table") {
    const RunResult r =
        run_cli("spectrum --potential harmonic --mass 1 --omega 1 --n-max 2");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["tool"] == "phasequant");
    CHECK(doc["command"] == "spectrum");
    CHECK(doc["config"]["potential"]["kind"] == "harmonic");
    REQUIRE(doc["levels"].size() == 3);
    CHECK(std::abs(doc["levels"][0]["energy"].get<double>() - 0.5) <= 1e-8);
    CHECK(std::abs(doc["levels"][1]["energy"].get<double>() - 1.5) <= 1e-8);
    CHECK(std::abs(doc["levels"][2]["energy"].get<double>() - 2.5) <= 1e-8);
    CHECK(all_numbers_finite(doc));
}

TEST_CASE("non-confining expression exits with the domain code") {
    const RunResult r = run_cli("spectrum --potential-expr \"-x^2\" --n-max 0");
    CHECK(r.exit_code == 3);
    const json doc = json::parse(r.out);
    CHECK(doc["error"]["type"] == "domain");
}

TEST_CASE("bad usage exits with code 1") {
    CHECK(run_cli("spectrum --potential nosuch").exit_code == 1);
    CHECK(run_cli("spectrum --potential custom").exit_code == 1);
    CHECK(run_cli("spectrum --format csv").exit_code == 1);
    CHECK(run_cli("nosuchcommand").exit_code != 0);
}

TEST_CASE("config files are validated strictly") {
    const fs::path good = scratch_dir() / "good.json";
    std::ofstream(good) << R"({"potential":{"kind":"harmonic","omega":1.0},"mass":1.0})";
    CHECK(run_cli("spectrum --config " + good.string() + " --n-max 0").exit_code == 0);

    const fs::path bad = scratch_dir() / "bad.json";
    std::ofstream(bad) << R"({"potential":{"kind":"harmonic"},"massq":1.0})";
    const RunResult r = run_cli("spectrum --config " + bad.string() + " --n-max 0");
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.out)["error"]["type"] == "usage");
}

TEST_CASE("identical config and seed give byte-identical output") {
    const std::string args = "identity-check --sweeps 3 --seed 42";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const std::string spec_args = "spectrum --potential coulomb --l 0 --n-max 1";
    CHECK(run_cli(spec_args).out == run_cli(spec_args).out);
}

TEST_CASE("cornell verify-identity reports the max residual") {
    const RunResult r = run_cli("cornell verify-identity --sweeps 5 --seed 42");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc.contains("max_residual"));
    CHECK(doc["max_normalized_residual"].get<double>() < 1e-4);
    CHECK(doc["sweeps"].size() == 5);
    CHECK(all_numbers_finite(doc));
}

TEST_CASE("cornell table in csv") {
    const RunResult r =
        run_cli("cornell --kappa 0.2 --alpha-tilde 0.5 --l 0 --l-max 1 --n-r-max 1 "
                "--format csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "n_r,l,E_squared,E");
    int rows = 0;
    for (std::string line; std::getline(lines, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("alpha-s flag scales alpha_tilde by 4/3") {
    const RunResult a = run_cli("cornell --kappa 0.2 --alpha-s 0.375 --n-r-max 0");
    const RunResult b = run_cli("cornell --kappa 0.2 --alpha-tilde 0.5 --n-r-max 0");
    REQUIRE(a.exit_code == 0);
    const json da = json::parse(a.out), db = json::parse(b.out);
    CHECK(da["table"][0]["E_squared"] == db["table"][0]["E_squared"]);
}

TEST_CASE("wavefunction csv samples") {
    const RunResult r = run_cli(
        "wavefunction --potential harmonic --n 1 --samples 50 --format csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "x,psi,region");
    int rows = 0;
    bool saw_allowed = false, saw_left = false, saw_right = false;
    for (std::string line; std::getline(lines, line);) {
        if (line.empty()) continue;
        ++rows;
        std::istringstream cells(line);
        std::string x, psi, region;
        std::getline(cells, x, ',');
        std::getline(cells, psi, ',');
        std::getline(cells, region, ',');
        CHECK(std::isfinite(std::stod(x)));
        CHECK(std::isfinite(std::stod(psi)));
        if (region == "II") saw_allowed = true;
        if (region == "I") saw_left = true;
        if (region == "III") saw_right = true;
    }
    CHECK(rows == 50);
    CHECK(saw_allowed);
    CHECK(saw_left);
    CHECK(saw_right);
}

TEST_CASE("verify compares the semiclassical spectrum against the oracle") {
    const RunResult r =
        run_cli("verify --potential harmonic --n-max 1 --grid-h 2e-3");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["semiclassical"].size() == 2);
    REQUIRE(doc["oracle"].size() == 2);
    CHECK(doc["deviations"]["max_rel_dev"].get<double>() <= 1e-6);
    CHECK(all_numbers_finite(doc));
}

TEST_CASE("json goes to --out when asked") {
    const fs::path out = scratch_dir() / "direct.json";
    const RunResult r = run_cli("spectrum --potential harmonic --n-max 0 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream f(out);
    json doc;
    f >> doc;
    CHECK(doc["levels"].size() == 1);
}
