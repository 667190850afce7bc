// polariton — command-line driver: one subcommand per run mode.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polariton/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw polariton::ConfigError("cannot read configuration file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace polariton;

    CLI::App app{"Mean-field, exact and spectral calculations for molecular polaritons"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::string config_path;
    std::string out_dir;
    int threads = 1;
    std::uint64_t seed = 0;

    struct Entry {
        const char* name;
        RunMode mode;
        const char* help;
    };
    const Entry entries[] = {
        {"dynamics", RunMode::dynamics, "mean-field time evolution"},
        {"exact", RunMode::exact, "exact Tavis-Cummings reference in the symmetric subspace"},
        {"compare", RunMode::compare, "mean-field against exact and bare-molecule dynamics"},
        {"spectrum", RunMode::spectrum, "cavity transmission and photon spectral function"},
        {"disorder-scan", RunMode::disorder_scan, "spectra over a list of disorder widths"},
        {"sweep", RunMode::sweep, "one parameter swept over a list of values"},
    };
    std::vector<std::pair<CLI::App*, RunMode>> subs;
    for (const Entry& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (default: run.output)");
        sub->add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "seed for random disorder draws");
        subs.emplace_back(sub, e.mode);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_validation;
    }

    RunMode mode = RunMode::dynamics;
    for (const auto& [sub, m] : subs)
        if (sub->parsed()) mode = m;

    try {
        const RunConfig cfg = parse_config(read_file(config_path), mode);
        RunOptions opts;
        opts.out_dir = out_dir;
        opts.threads = threads;
        opts.seed = seed;
        const int code = run(cfg, opts, std::cout);
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_validation;
    } catch (const InvariantViolation& e) {
        std::cerr << "numerical invariant violated: " << e.what() << '\n';
        return exit_invariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
}
