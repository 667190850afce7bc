#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "polariton/config.hpp"
#include "polariton/runner.hpp"

using namespace polariton;
namespace fs = std::filesystem;

namespace {

const char* kCompare = R"({
  "molecule": {"two_level": {"omega0": 1, "lambda": 0.1, "mu": 1}},
  "cavity": {"omega_c": 1},
  "ensemble": {"n_molecules": 4},
  "pulse": {"e0": 0.01, "omega": 1, "t_center": 10, "tau": 3},
  "grid": {"time": {"t_end": 30, "dt": 0.01, "output_every": 50}},
  "run": {"rwa": true}
})";

const char* kSpectrum = R"({
  "molecule": {"two_level": {"omega0": 1, "lambda": 0.1}},
  "cavity": {"omega_c": 1, "kappa": 0.005},
  "grid": {"frequency": {"omega_min": 0.7, "omega_max": 1.3, "n_points": 601}}
})";

std::string error_of(const std::string& text, std::optional<RunMode> mode = std::nullopt) {
    try {
        parse_config(text, mode);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("polariton_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args) {
    const int status = std::system((std::string(POLARITON_CLI) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("valid configurations parse with documented defaults") {
    const RunConfig c = parse_config(kCompare, RunMode::compare);
    CHECK(c.mode == RunMode::compare);
    CHECK(c.rwa_lambda() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(std::abs(c.molecule->coupling(1, 0)) == doctest::Approx(0.1 * std::sqrt(2.0)));
    CHECK(c.coupling_form == CouplingForm::rwa);
    CHECK(c.n_max == 4);
    CHECK(c.time_grid->t_start == 0.0);
    CHECK(c.output_every == 50);

    const RunConfig s = parse_config(kSpectrum, RunMode::spectrum);
    CHECK(s.frequency_grid->eta == doctest::Approx(1e-4));
    CHECK(s.ensemble.disorder.gamma == doctest::Approx(1e-4));
    CHECK(s.rwa_molecule().coupling(1, 0).real() == doctest::Approx(0.1));

    // dt defaults to 0.01 / max(omega_c, energy span)
    const RunConfig d = parse_config(R"({"molecule": {"two_level": {"omega0": 2, "lambda": 0.1}},
        "cavity": {"omega_c": 1}, "grid": {"time": {"t_end": 1}}})", RunMode::dynamics);
    CHECK(d.time_grid->dt == doctest::Approx(0.005));

    const RunConfig f = parse_config(R"({"molecule": {"two_level": {"omega0": 1, "lambda": 0.2},
        "coupling_convention": "field"}, "cavity": {"omega_c": 1}, "grid": {"time": {"t_end": 1}}})",
                                     RunMode::dynamics);
    CHECK(f.molecule->coupling(1, 0).real() == doctest::Approx(0.2));
}

TEST_CASE("validation errors name the key and the constraint") {
    CHECK(error_of(R"({"cavity": {"omega_c": 1, "kappa": -0.1}})", RunMode::spectrum).find("cavity.kappa must be >= 0") !=
          std::string::npos);
    CHECK(error_of(R"({"cavity": {"omega_c": 1, "colour": 2}})", RunMode::spectrum) == "unknown key cavity.colour");
    CHECK(error_of(R"({"molecule": {"energies": [0, 1], "coupling": [[0, 0.1], [0.2, 0]]}})", RunMode::spectrum)
              .find("molecule.coupling must be Hermitian: entry (0, 1)") != std::string::npos);
    CHECK(error_of(R"({"molecule": {"energies": [0, 1], "coupling": [[0, [0, 0.1]], [[0, 0.1], 0]]}})",
                   RunMode::spectrum)
              .find("Hermitian") != std::string::npos);
    CHECK(error_of(R"({"molecule": {"energies": [1, 0], "coupling": [[0, 0], [0, 0]]}})", RunMode::spectrum)
              .find("molecule.energies must be sorted") != std::string::npos);
    CHECK(error_of(kSpectrum, RunMode::dynamics).find("grid.time") != std::string::npos);
    CHECK(error_of(R"({"pulse": {"e0": 1, "omega": 1, "t_center": 0, "tau": 0}})", RunMode::spectrum) ==
          "pulse.tau must be > 0 (got 0)");
    CHECK(error_of("{not json").find("malformed") != std::string::npos);
    CHECK(error_of(kSpectrum).find("run.mode") != std::string::npos);
    std::string with_kappa = kCompare;
    with_kappa.replace(with_kappa.find("\"omega_c\": 1}"), 13, "\"omega_c\": 1, \"kappa\": 0.1}");
    CHECK(error_of(with_kappa, RunMode::compare).find("cavity.kappa must be 0") != std::string::npos);
    CHECK(error_of(R"({"run": {"mode": "spectrum"}})", RunMode::exact).find("disagrees") != std::string::npos);
}

TEST_CASE("sweep parameters rewrite the document") {
    const std::string t = with_parameter(kSpectrum, "cavity.kappa", 0.02);
    CHECK(parse_config(t, RunMode::spectrum).cavity->kappa == 0.02);
    CHECK_THROWS_AS(with_parameter(kSpectrum, "nowhere.kappa", 1.0), ConfigError);
    const std::string n = with_parameter(kCompare, "ensemble.n_molecules", 8);
    CHECK(parse_config(n, RunMode::compare).ensemble.n_molecules == 8);
    CHECK_THROWS_AS(with_parameter(kCompare, "ensemble.n_molecules", 2.5), ConfigError);
}

TEST_CASE("config hash follows the document content") {
    const RunConfig a = parse_config(kSpectrum, RunMode::spectrum);
    const RunConfig b = parse_config(with_parameter(kSpectrum, "cavity.kappa", 0.005), RunMode::spectrum);
    const RunConfig c = parse_config(with_parameter(kSpectrum, "cavity.kappa", 0.006), RunMode::spectrum);
    CHECK(config_hash(a).size() == 16);
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("reruns produce byte-identical output") {
    for (const auto& [text, mode] : {std::pair{kCompare, RunMode::compare}, std::pair{kSpectrum, RunMode::spectrum}}) {
        const RunConfig cfg = parse_config(text, mode);
        const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
        std::ostringstream la, lb;
        CHECK(run(cfg, RunOptions{a, 1, 3}, la) == exit_success);
        CHECK(run(cfg, RunOptions{b, 1, 3}, lb) == exit_success);
        CHECK(la.str() == lb.str());
        int files = 0;
        for (const auto& entry : fs::directory_iterator(a)) {
            CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
            ++files;
        }
        CHECK(files >= 1);
    }
}

TEST_CASE("outputs carry metadata and round-trip precision") {
    const fs::path dir = scratch("meta");
    std::ostringstream log;
    REQUIRE(run(parse_config(kSpectrum, RunMode::spectrum), RunOptions{dir, 1, 0}, log) == exit_success);
    const std::string text = slurp(dir / "spectrum.csv");
    CHECK(text.find("# version=") == 0);
    CHECK(text.find("# config_hash=") != std::string::npos);
    CHECK(text.find("omega,re_Pi,im_Pi,re_F,im_F,A,T\n") != std::string::npos);
    const std::string peaks = slurp(dir / "peaks.csv");
    CHECK(peaks.find("# splitting=0.2") != std::string::npos);

    // Every numeric cell parses back to the value it was written from.
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line) && (line[0] == '#' || line[0] == 'o')) {}
    const double w = std::stod(line.substr(0, line.find(',')));
    CHECK(w == 0.7);
}

TEST_CASE("sweep writes one directory per point and an index") {
    std::string text = kSpectrum;
    text.insert(text.rfind('}'), R"(, "run": {"sweep": {"mode": "spectrum", "parameter": "cavity.kappa", "values": [0.005, 0.01, 0.02]}})");
    const RunConfig cfg = parse_config(text, RunMode::sweep);
    const fs::path a = scratch("sweep_a"), b = scratch("sweep_b");
    std::ostringstream la, lb;
    CHECK(run(cfg, RunOptions{a, 3, 0}, la) == exit_success);
    CHECK(run(cfg, RunOptions{b, 1, 0}, lb) == exit_success);
    CHECK(fs::exists(a / "point_002" / "spectrum.csv"));
    CHECK(slurp(a / "index.csv") == slurp(b / "index.csv"));
    CHECK(slurp(a / "point_001" / "peaks.csv") == slurp(b / "point_001" / "peaks.csv"));
    CHECK(la.str() == lb.str());
}

TEST_CASE("command line exit codes") {
    const fs::path dir = scratch("cli");
    auto write = [&](const std::string& name, const std::string& body) {
        std::ofstream(dir / name) << body;
        return (dir / name).string();
    };
    const std::string good = write("good.json", kSpectrum);
    CHECK(run_cli("spectrum --config " + good + " --out " + (dir / "o1").string()) == 0);
    CHECK(run_cli("spectrum --config " + (dir / "missing.json").string()) == 1);
    CHECK(run_cli("spectrum --config " + write("bad.json", R"({"cavity": {"omega_c": -1}})")) == 1);
    CHECK(run_cli("frobnicate") == 1);

    std::string strict = kCompare;
    strict.replace(strict.find("\"rwa\": true"), 11, "\"rwa\": true, \"tolerances\": {\"purity\": 1e-300}");
    CHECK(run_cli("dynamics --config " + write("strict.json", strict) + " --out " + (dir / "o2").string()) == 2);

    std::string small = kCompare;
    small.replace(small.find("\"e0\": 0.01"), 10, "\"e0\": 0.5");
    small.replace(small.find("\"rwa\": true"), 11, "\"rwa\": true, \"n_max\": 1");
    CHECK(run_cli("exact --config " + write("small.json", small) + " --out " + (dir / "o3").string()) == 3);
    CHECK(fs::exists(dir / "o3" / "exact.csv"));
}
