#include "polariton/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "polariton/csv.hpp"

namespace polariton {

namespace {

namespace fs = std::filesystem;

struct Context {
    const RunConfig& cfg;
    const RunOptions& opts;
    fs::path dir;
    std::ostream& log;
};

void write_meta(CsvWriter& w, const Context& c) {
    w.meta("version", kVersion);
    w.meta("config_hash", config_hash(c.cfg));
    w.meta("mode", to_string(c.cfg.mode));
    w.meta("units", "hbar=1");
    w.meta("seed", std::to_string(c.opts.seed));
}

std::string maybe(const std::optional<double>& v) { return v ? format_double(*v) : std::string("nan"); }

MeanFieldState initial_state(const RunConfig& cfg) {
    MeanFieldState s = ground_state(*cfg.molecule, cfg.time_grid->t_start);
    s.rho.setZero();
    s.rho(cfg.initial_level, cfg.initial_level) = 1.0;
    return s;
}

PropagationOptions propagation_options(const RunConfig& cfg) {
    PropagationOptions o;
    o.backend = cfg.backend;
    o.coupling = cfg.coupling_form;
    o.cavity_drive = cfg.cavity_drive;
    o.output_every = cfg.output_every;
    o.tolerances = cfg.tolerances;
    return o;
}

int run_dynamics(const Context& c) {
    const RunConfig& cfg = c.cfg;
    const Trajectory tr = propagate_meanfield(*cfg.molecule, *cfg.cavity, cfg.pulse, *cfg.time_grid,
                                              initial_state(cfg), propagation_options(cfg));
    const auto levels = cfg.molecule->levels();
    CsvWriter w(c.dir / "dynamics.csv");
    write_meta(w, c);
    w.meta("backend", cfg.backend == Backend::memory ? "memory" : "auxiliary");
    w.meta("coupling_form", cfg.coupling_form == CouplingForm::rwa ? "rwa" : "full");
    std::vector<std::string> cols{"t"};
    for (Eigen::Index l = 0; l < levels; ++l) cols.push_back("pop_" + std::to_string(l));
    for (const char* name : {"re_polarization", "q", "p", "field_energy", "photon_proxy"}) cols.emplace_back(name);
    w.header(std::span<const std::string>(cols));
    std::vector<double> row;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        row.assign({tr.times[k]});
        for (Eigen::Index l = 0; l < levels; ++l) row.push_back(tr.populations(static_cast<Eigen::Index>(k), l));
        row.push_back(tr.polarization[k]);
        row.push_back(tr.field_q[k]);
        row.push_back(tr.field_p[k]);
        row.push_back(cfg.cavity->omega_c * tr.photon_proxy[k]);
        row.push_back(tr.photon_proxy[k]);
        w.row(std::span<const double>(row));
    }
    const auto top = tr.top_population();
    c.log << "dynamics: " << tr.size() << " samples, max top-level population "
          << format_double(*std::max_element(top.begin(), top.end())) << '\n';
    return exit_success;
}

TCConfig tc_config(const RunConfig& cfg) {
    const MolecularModel& m = *cfg.molecule;
    return make_tc_config(cfg.ensemble.n_molecules, m.energies[1], cfg.cavity->omega_c, cfg.rwa_lambda(), cfg.n_max,
                          cfg.pulse, m.dipole(1, 0).real());
}

ExactTrajectory exact_trajectory(const RunConfig& cfg) {
    const TCConfig tc = tc_config(cfg);
    const int excited = cfg.initial_level == 1 ? tc.n_molecules : 0;
    ExactOptions o = cfg.exact;
    o.output_every = cfg.output_every;
    return propagate_exact(tc, *cfg.time_grid, symmetric_basis_state(tc, excited, 0), o);
}

void report_truncation(const Context& c, const ExactTrajectory& ex) {
    c.log << "exact: max population on n = n_max layer " << format_double(ex.max_top_layer_population)
          << (ex.truncation_safe ? " (safe)" : " (UNSAFE: raise run.n_max)") << '\n';
}

int run_exact(const Context& c) {
    const ExactTrajectory ex = exact_trajectory(c.cfg);
    CsvWriter w(c.dir / "exact.csv");
    write_meta(w, c);
    w.meta("n_max", std::to_string(c.cfg.n_max));
    w.meta("truncation_safe", ex.truncation_safe ? "true" : "false");
    w.header({"t", "P_e", "n_photon", "norm", "n_ex"});
    for (std::size_t k = 0; k < ex.times.size(); ++k)
        w.row({ex.times[k], ex.excited_fraction[k], ex.photon_number[k], ex.norm[k], ex.excitation_number[k]});
    report_truncation(c, ex);
    return ex.truncation_safe ? exit_success : exit_truncation;
}

int run_compare(const Context& c) {
    const RunConfig& cfg = c.cfg;
    const ExactTrajectory ex = exact_trajectory(cfg);
    const Trajectory mf = propagate_meanfield(*cfg.molecule, *cfg.cavity, cfg.pulse, *cfg.time_grid,
                                              initial_state(cfg), propagation_options(cfg));
    const Trajectory bare =
        bare_molecule_reference(*cfg.molecule, cfg.pulse, *cfg.time_grid, initial_state(cfg), cfg.output_every);
    const auto pm = mf.top_population();
    const auto pb = bare.top_population();
    const std::size_t n = std::min({ex.times.size(), pm.size(), pb.size()});

    double max_abs = 0.0, sum_sq = 0.0, max_exact = 0.0, max_bare = 0.0;
    CsvWriter w(c.dir / "compare.csv");
    write_meta(w, c);
    w.meta("n_molecules", std::to_string(cfg.ensemble.n_molecules));
    w.meta("coupling_form", cfg.coupling_form == CouplingForm::rwa ? "rwa" : "full");
    w.header({"t", "P_e_meanfield", "P_e_exact", "P_e_bare", "abs_diff"});
    for (std::size_t k = 0; k < n; ++k) {
        const double d = std::abs(pm[k] - ex.excited_fraction[k]);
        max_abs = std::max(max_abs, d);
        sum_sq += d * d;
        max_exact = std::max(max_exact, std::abs(ex.excited_fraction[k]));
        max_bare = std::max(max_bare, std::abs(pb[k] - ex.excited_fraction[k]));
        w.row({ex.times[k], pm[k], ex.excited_fraction[k], pb[k], d});
    }
    const double rms = n ? std::sqrt(sum_sq / static_cast<double>(n)) : 0.0;
    std::ostringstream summary;
    summary << "max_abs=" << format_double(max_abs) << " rms=" << format_double(rms)
            << " max_rel=" << format_double(max_exact > 0 ? max_abs / max_exact : 0.0)
            << " max_abs_bare=" << format_double(max_bare)
            << " truncation_safe=" << (ex.truncation_safe ? "true" : "false") << '\n';
    std::ofstream(c.dir / "compare_summary.txt", std::ios::binary) << summary.str();
    c.log << "compare: " << summary.str();
    report_truncation(c, ex);
    return ex.truncation_safe ? exit_success : exit_truncation;
}

void write_spectrum(const Context& c, const Spectrum& s, const fs::path& spectrum_file, const fs::path& peaks_file,
                    std::initializer_list<std::pair<std::string, std::string>> extra = {}) {
    {
        CsvWriter w(spectrum_file);
        write_meta(w, c);
        for (const auto& [k, v] : extra) w.meta(k, v);
        w.meta("eta", format_double(c.cfg.frequency_grid->eta));
        w.header({"omega", "re_Pi", "im_Pi", "re_F", "im_F", "A", "T"});
        for (std::size_t i = 0; i < s.omegas.size(); ++i)
            w.row({s.omegas[i], s.Pi_R[i].real(), s.Pi_R[i].imag(), s.F_R[i].real(), s.F_R[i].imag(), s.A[i], s.T[i]});
    }
    CsvWriter w(peaks_file);
    write_meta(w, c);
    for (const auto& [k, v] : extra) w.meta(k, v);
    w.meta("splitting", maybe(s.splitting));
    w.meta("under_resolved", s.under_resolved ? "true" : "false");
    w.header({"omega", "height", "fwhm"});
    for (const Peak& p : s.peaks) w.row({p.omega, p.height, p.fwhm});
}

// Gaussian draw of transition frequencies from the run seed.
DisorderSpec drawn_disorder(const RunConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SampledDisorder s;
    const double omega0 = cfg.molecule->energies[1];
    for (std::size_t i = 0; i < cfg.disorder_draw->count; ++i) s.frequencies.push_back(omega0 + cfg.disorder_draw->sigma * normal(rng));
    return make_disorder(std::move(s), cfg.ensemble.disorder.gamma);
}

int run_spectrum(const Context& c) {
    const RunConfig& cfg = c.cfg;
    Spectrum s;
    if (std::holds_alternative<NoDisorder>(cfg.ensemble.disorder.kind)) {
        s = transmission_spectrum(cfg.rwa_molecule(), *cfg.cavity, *cfg.frequency_grid);
    } else {
        const DisorderSpec d = cfg.disorder_draw ? drawn_disorder(cfg, c.opts.seed) : cfg.ensemble.disorder;
        s = transmission_spectrum(d, cfg.molecule->energies[1], cfg.rwa_lambda(), *cfg.cavity, *cfg.frequency_grid,
                                  cfg.disorder_method);
    }
    write_spectrum(c, s, c.dir / "spectrum.csv", c.dir / "peaks.csv");
    c.log << "spectrum: " << s.peaks.size() << " peaks, splitting " << maybe(s.splitting)
          << (s.under_resolved ? " (under-resolved: refine grid.frequency)" : "") << '\n';
    return exit_success;
}

std::string indexed(const char* stem, std::size_t i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%03zu.csv", stem, i);
    return buf;
}

int run_disorder_scan(const Context& c) {
    const RunConfig& cfg = c.cfg;
    const double lam = cfg.rwa_lambda();
    const double omega0 = cfg.molecule->energies[1];
    CsvWriter index(c.dir / "disorder_scan.csv");
    write_meta(index, c);
    index.meta("lambda", format_double(lam));
    index.meta("method", cfg.disorder_method == DisorderMethod::closed_form ? "closed_form" : "quadrature");
    index.header({"sigma_over_lambda", "sigma", "n_peaks", "splitting", "splitting_over_2lambda", "under_resolved"});
    for (std::size_t i = 0; i < cfg.sigma_over_lambda.size(); ++i) {
        const double ratio = cfg.sigma_over_lambda[i];
        const double sigma = ratio * lam;
        const DisorderSpec d = make_disorder(GaussianDisorder{sigma}, cfg.ensemble.disorder.gamma);
        const Spectrum s = transmission_spectrum(d, omega0, lam, *cfg.cavity, *cfg.frequency_grid, cfg.disorder_method);
        write_spectrum(c, s, c.dir / indexed("spectrum_sigma", i), c.dir / indexed("peaks_sigma", i),
                       {{"sigma_over_lambda", format_double(ratio)}, {"sigma", format_double(sigma)}});
        const std::vector<std::string> cells{
            format_double(ratio), format_double(sigma), std::to_string(s.peaks.size()), maybe(s.splitting),
            s.splitting ? format_double(*s.splitting / (2.0 * lam)) : std::string("nan"),
            s.under_resolved ? "true" : "false"};
        index.raw_row(std::span<const std::string>(cells));
        c.log << "disorder-scan: sigma/lambda=" << format_double(ratio) << " peaks=" << s.peaks.size()
              << " splitting=" << maybe(s.splitting) << '\n';
    }
    return exit_success;
}

int run_sweep(const Context& c) {
    const RunConfig& cfg = c.cfg;
    const SweepSpec& sw = *cfg.sweep;
    nlohmann::json base = nlohmann::json::parse(cfg.canonical);
    base["run"].erase("sweep");
    base["run"]["mode"] = std::string(to_string(sw.mode));
    const std::string base_text = base.dump();

    std::vector<RunConfig> points;
    for (double v : sw.values) {
        try {
            points.push_back(parse_config(with_parameter(base_text, sw.parameter, v)));
        } catch (const ConfigError& e) {
            c.log << "sweep: " << sw.parameter << "=" << format_double(v) << ": " << e.what() << '\n';
            return exit_validation;
        }
    }

    std::vector<int> codes(points.size(), exit_success);
    std::vector<std::string> logs(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            char name[32];
            std::snprintf(name, sizeof(name), "point_%03zu", i);
            RunOptions o = c.opts;
            o.out_dir = c.dir / name;
            o.threads = 1;
            std::ostringstream os;
            codes[i] = run(points[i], o, os);
            logs[i] = os.str();
        }
    };
    const int nthreads = std::max(1, std::min<int>(c.opts.threads, static_cast<int>(points.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    CsvWriter index(c.dir / "index.csv");
    write_meta(index, c);
    index.meta("parameter", sw.parameter);
    index.meta("point_mode", to_string(sw.mode));
    index.header({"point", "value", "exit_code", "config_hash"});
    int worst = exit_success;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::vector<std::string> cells{std::to_string(i), format_double(sw.values[i]), std::to_string(codes[i]),
                                             config_hash(points[i])};
        index.raw_row(std::span<const std::string>(cells));
        c.log << "[point " << i << "] " << logs[i];
        worst = std::max(worst, codes[i]);
    }
    return worst;
}

}  // namespace

int run(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
    const fs::path dir = opts.out_dir.empty() ? fs::path(cfg.output) : opts.out_dir;
    try {
        fs::create_directories(dir);
        const Context c{cfg, opts, dir, log};
        switch (cfg.mode) {
            case RunMode::dynamics: return run_dynamics(c);
            case RunMode::exact: return run_exact(c);
            case RunMode::compare: return run_compare(c);
            case RunMode::spectrum: return run_spectrum(c);
            case RunMode::disorder_scan: return run_disorder_scan(c);
            case RunMode::sweep: return run_sweep(c);
        }
    } catch (const InvariantViolation& e) {
        log << "error: numerical invariant violated: " << e.what() << '\n';
        return exit_invariant;
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::domain_error& e) {
        log << "error: " << e.what() << '\n';
        return exit_validation;
    }
    return exit_validation;
}

}  // namespace polariton
