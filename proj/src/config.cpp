#include "polariton/config.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace polariton {

namespace {

using json = nlohmann::json;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// View of one JSON object with its dotted path, for error messages.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(label() + " must be an object");
    }

    const std::string& path() const { return path_; }
    std::string key(std::string_view k) const { return path_.empty() ? std::string(k) : path_ + "." + std::string(k); }

    void allow(std::initializer_list<std::string_view> keys) const {
        for (const auto& [k, v] : j_.items()) {
            bool ok = false;
            for (auto a : keys) ok = ok || a == k;
            if (!ok) throw ConfigError("unknown key " + key(k));
        }
    }

    bool has(std::string_view k) const { return j_.contains(std::string(k)); }

    const json& raw(std::string_view k) const {
        if (!has(k)) throw ConfigError("missing required key " + key(k));
        return j_.at(std::string(k));
    }

    Section child(std::string_view k) const { return Section(raw(k), key(k)); }

    double number(std::string_view k) const {
        const json& v = raw(k);
        if (!v.is_number()) throw ConfigError(key(k) + " must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(key(k) + " must be finite");
        return d;
    }
    double number(std::string_view k, double fallback) const { return has(k) ? number(k) : fallback; }

    long long integer(std::string_view k) const {
        const json& v = raw(k);
        if (!v.is_number_integer()) throw ConfigError(key(k) + " must be an integer");
        return v.get<long long>();
    }
    long long integer(std::string_view k, long long fallback) const { return has(k) ? integer(k) : fallback; }

    bool boolean(std::string_view k, bool fallback) const {
        if (!has(k)) return fallback;
        const json& v = raw(k);
        if (!v.is_boolean()) throw ConfigError(key(k) + " must be true or false");
        return v.get<bool>();
    }

    std::string string(std::string_view k, std::string fallback) const {
        if (!has(k)) return fallback;
        const json& v = raw(k);
        if (!v.is_string()) throw ConfigError(key(k) + " must be a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(std::string_view k) const {
        const json& v = raw(k);
        if (!v.is_array()) throw ConfigError(key(k) + " must be an array of numbers");
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) throw ConfigError(key(k) + " must be an array of numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

private:
    std::string label() const { return path_.empty() ? "configuration" : path_; }

    const json& j_;
    std::string path_;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

Complex parse_entry(const json& v, const std::string& where) {
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex(v[0].get<double>(), v[1].get<double>());
    throw ConfigError(where + " must be a number or a [re, im] pair");
}

MatrixXc parse_matrix(const Section& s, std::string_view k, Eigen::Index dim) {
    const json& v = s.raw(k);
    const std::string where = s.key(k);
    require(v.is_array() && static_cast<Eigen::Index>(v.size()) == dim,
            where + " must be an array of " + std::to_string(dim) + " rows");
    MatrixXc m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const json& row = v[i];
        require(row.is_array() && static_cast<Eigen::Index>(row.size()) == dim,
                where + " row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
        for (Eigen::Index j = 0; j < dim; ++j)
            m(i, j) = parse_entry(row[j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i; j < dim; ++j) {
            require(std::abs(m(i, j) - std::conj(m(j, i))) <= kHermitianTolerance,
                    where + " must be Hermitian: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") is not the conjugate of (" + std::to_string(j) + ", " + std::to_string(i) + ")");
        }
    }
    return m;
}

void parse_molecule(const Section& s, RunConfig& cfg) {
    s.allow({"energies", "coupling", "dipole", "two_level", "coupling_convention"});
    const std::string conv = s.string("coupling_convention", "rwa");
    if (conv == "rwa") cfg.convention = CouplingConvention::rwa;
    else if (conv == "field") cfg.convention = CouplingConvention::field;
    else throw ConfigError(s.key("coupling_convention") + " must be \"rwa\" or \"field\"");

    VectorXd energies;
    MatrixXc coupling, dipole;
    if (s.has("two_level")) {
        require(!s.has("energies") && !s.has("coupling") && !s.has("dipole"),
                s.key("two_level") + " cannot be combined with energies/coupling/dipole");
        const Section t = s.child("two_level");
        t.allow({"omega0", "lambda", "mu"});
        const double omega0 = t.number("omega0");
        require(omega0 > 0, t.key("omega0") + " must be > 0 (got " + fmt(omega0) + ")");
        const MolecularModel two = two_level(omega0, t.number("lambda"), t.number("mu", 1.0));
        energies = two.energies;
        coupling = two.coupling;
        dipole = two.dipole;
    } else {
        const std::vector<double> e = s.numbers("energies");
        require(e.size() >= 2, s.key("energies") + " needs at least two levels");
        for (std::size_t i = 1; i < e.size(); ++i)
            require(e[i] >= e[i - 1], s.key("energies") + " must be sorted non-decreasing");
        energies = Eigen::Map<const VectorXd>(e.data(), static_cast<Eigen::Index>(e.size()));
        const auto dim = energies.size();
        coupling = parse_matrix(s, "coupling", dim);
        dipole = s.has("dipole") ? parse_matrix(s, "dipole", dim) : MatrixXc(MatrixXc::Zero(dim, dim));
    }
    if (cfg.convention == CouplingConvention::rwa) coupling *= std::sqrt(2.0);
    try {
        cfg.molecule = make_molecule(std::move(energies), std::move(coupling), std::move(dipole));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("molecule: ") + e.what());
    }
}

DrivePulse parse_pulse(const Section& s) {
    s.allow({"e0", "omega", "t_center", "tau"});
    const double tau = s.number("tau");
    require(tau > 0, s.key("tau") + " must be > 0 (got " + fmt(tau) + ")");
    return make_pulse(s.number("e0"), s.number("omega"), s.number("t_center"), tau);
}

void parse_cavity(const Section& s, RunConfig& cfg) {
    s.allow({"omega_c", "kappa", "drive"});
    const double wc = s.number("omega_c");
    require(wc > 0, s.key("omega_c") + " must be > 0 (got " + fmt(wc) + ")");
    const double kappa = s.number("kappa", 0.0);
    require(kappa >= 0, s.key("kappa") + " must be >= 0 (got " + fmt(kappa) + ")");
    cfg.cavity = CavityMode{wc, kappa};
    if (s.has("drive")) cfg.cavity_drive = CavityDrive{parse_pulse(s.child("drive")), 1};
}

void parse_ensemble(const Section& s, RunConfig& cfg, double default_gamma) {
    s.allow({"n_molecules", "disorder", "gamma"});
    const long long n = s.integer("n_molecules", 1);
    require(n >= 1 && n <= 1'000'000, s.key("n_molecules") + " must be in [1, 1000000]");
    const double gamma = s.number("gamma", default_gamma);
    require(gamma > 0, s.key("gamma") + " must be > 0 (got " + fmt(gamma) + ")");
    DisorderSpec d = make_disorder(NoDisorder{}, gamma);
    if (s.has("disorder")) {
        const Section ds = s.child("disorder");
        ds.allow({"kind", "sigma", "frequencies", "weights", "draw"});
        const std::string kind = ds.string("kind", "none");
        if (kind == "none") {
            require(!ds.has("sigma") && !ds.has("frequencies") && !ds.has("weights") && !ds.has("draw"),
                    ds.key("kind") + " none takes no parameters");
        } else if (kind == "gaussian") {
            ds.allow({"kind", "sigma"});
            const double sigma = ds.number("sigma");
            require(sigma > 0, ds.key("sigma") + " must be > 0 (got " + fmt(sigma) + ")");
            d = make_disorder(GaussianDisorder{sigma}, gamma);
        } else if (kind == "samples") {
            ds.allow({"kind", "frequencies", "weights", "draw"});
            if (ds.has("draw")) {
                require(!ds.has("frequencies") && !ds.has("weights"),
                        ds.key("draw") + " cannot be combined with explicit frequencies");
                const Section dr = ds.child("draw");
                dr.allow({"count", "sigma"});
                const long long count = dr.integer("count");
                require(count >= 1, dr.key("count") + " must be >= 1");
                const double sigma = dr.number("sigma");
                require(sigma > 0, dr.key("sigma") + " must be > 0 (got " + fmt(sigma) + ")");
                cfg.disorder_draw = DisorderDraw{static_cast<std::size_t>(count), sigma};
                // Placeholder until the run draws frequencies from the seed.
                d.kind = SampledDisorder{{0.0}, {1.0}};
            } else {
                SampledDisorder sd;
                sd.frequencies = ds.numbers("frequencies");
                require(!sd.frequencies.empty(), ds.key("frequencies") + " must not be empty");
                if (ds.has("weights")) sd.weights = ds.numbers("weights");
                try {
                    d = make_disorder(std::move(sd), gamma);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(ds.path() + ": " + e.what());
                }
            }
        } else {
            throw ConfigError(ds.key("kind") + " must be one of none, gaussian, samples");
        }
    }
    cfg.ensemble = EnsembleSpec{static_cast<int>(n), d};
}

void parse_time_grid(const Section& s, RunConfig& cfg, double default_dt) {
    s.allow({"t_start", "t_end", "dt", "output_every", "max_steps"});
    const double t0 = s.number("t_start", 0.0);
    const double t1 = s.number("t_end");
    const double dt = s.number("dt", default_dt);
    require(dt > 0, s.key("dt") + " must be > 0 (got " + fmt(dt) + ")");
    require(t1 > t0, s.key("t_end") + " must be greater than " + s.key("t_start"));
    const long long max_steps = s.integer("max_steps", static_cast<long long>(kDefaultMaxSteps));
    require(max_steps >= 1, s.key("max_steps") + " must be >= 1");
    require((t1 - t0) / dt <= static_cast<double>(max_steps),
            s.path() + " needs more than " + s.key("max_steps") + " = " + std::to_string(max_steps) + " steps");
    const long long every = s.integer("output_every", 1);
    require(every >= 1, s.key("output_every") + " must be >= 1");
    cfg.time_grid = make_time_grid(t0, t1, dt, static_cast<std::size_t>(max_steps));
    cfg.output_every = static_cast<std::size_t>(every);
}

void parse_frequency_grid(const Section& s, RunConfig& cfg, double default_eta) {
    s.allow({"omega_min", "omega_max", "n_points", "eta"});
    const double lo = s.number("omega_min");
    const double hi = s.number("omega_max");
    require(hi > lo, s.key("omega_max") + " must be greater than " + s.key("omega_min"));
    const long long n = s.integer("n_points");
    require(n >= 2 && n <= 100'000'000, s.key("n_points") + " must be in [2, 1e8]");
    const double eta = s.number("eta", default_eta);
    require(eta > 0, s.key("eta") + " must be > 0 (got " + fmt(eta) + ")");
    cfg.frequency_grid = make_frequency_grid(lo, hi, static_cast<std::size_t>(n), eta);
}

void parse_tolerances(const Section& s, RunConfig& cfg) {
    s.allow({"trace", "hermiticity", "eigenvalue", "purity", "norm", "excitation", "truncation"});
    auto positive = [&](std::string_view k, double fallback) {
        const double v = s.number(k, fallback);
        require(v > 0, s.key(k) + " must be > 0 (got " + fmt(v) + ")");
        return v;
    };
    cfg.tolerances.trace = positive("trace", cfg.tolerances.trace);
    cfg.tolerances.hermiticity = positive("hermiticity", cfg.tolerances.hermiticity);
    cfg.tolerances.eigenvalue = positive("eigenvalue", cfg.tolerances.eigenvalue);
    cfg.tolerances.purity = positive("purity", cfg.tolerances.purity);
    cfg.exact.norm_tolerance = positive("norm", cfg.exact.norm_tolerance);
    cfg.exact.excitation_tolerance = positive("excitation", cfg.exact.excitation_tolerance);
    cfg.exact.truncation_threshold = positive("truncation", cfg.exact.truncation_threshold);
}

// Maximum |lambda_{i0}| in the rotating-wave convention.
double bright_coupling(const RunConfig& cfg) {
    if (!cfg.molecule) return 0.0;
    double best = 0.0;
    for (Eigen::Index i = 1; i < cfg.molecule->levels(); ++i)
        best = std::max(best, std::abs(cfg.molecule->coupling(i, 0)));
    return rwa_coupling_from_field(best);
}

RunConfig parse_document(const json& doc, std::optional<RunMode> mode_override);

void parse_run(const Section& s, RunConfig& cfg, const json& doc, std::optional<RunMode> mode_override) {
    s.allow({"mode", "backend", "rwa", "output", "n_max", "initial_level", "disorder_scan", "sweep", "tolerances"});
    std::optional<RunMode> mode;
    if (s.has("mode")) {
        mode = parse_run_mode(s.string("mode", ""));
        require(mode.has_value(), s.key("mode") + " must be one of dynamics, exact, compare, spectrum, disorder-scan, sweep");
    }
    if (mode_override) {
        require(!mode || *mode == *mode_override,
                s.key("mode") + " (" + std::string(to_string(*mode)) + ") disagrees with the subcommand (" +
                    std::string(to_string(*mode_override)) + ")");
        mode = mode_override;
    }
    require(mode.has_value(), "missing required key run.mode (or give a subcommand)");
    cfg.mode = *mode;

    const std::string backend = s.string("backend", "auxiliary");
    if (backend == "auxiliary") cfg.backend = Backend::auxiliary;
    else if (backend == "memory") cfg.backend = Backend::memory;
    else throw ConfigError(s.key("backend") + " must be \"auxiliary\" or \"memory\"");
    cfg.coupling_form = s.boolean("rwa", false) ? CouplingForm::rwa : CouplingForm::full;
    require(!(cfg.backend == Backend::memory && cfg.coupling_form == CouplingForm::rwa),
            s.key("backend") + " memory requires " + s.key("rwa") + " = false");
    cfg.output = s.string("output", "out");
    const long long n_max = s.integer("n_max", 4);
    require(n_max >= 1 && n_max <= 1000, s.key("n_max") + " must be in [1, 1000]");
    cfg.n_max = static_cast<int>(n_max);
    cfg.initial_level = static_cast<int>(s.integer("initial_level", 0));
    if (s.has("tolerances")) parse_tolerances(s.child("tolerances"), cfg);

    if (s.has("disorder_scan")) {
        const Section ds = s.child("disorder_scan");
        ds.allow({"sigma_over_lambda", "method"});
        cfg.sigma_over_lambda = ds.numbers("sigma_over_lambda");
        require(!cfg.sigma_over_lambda.empty(), ds.key("sigma_over_lambda") + " must not be empty");
        for (double v : cfg.sigma_over_lambda)
            require(v > 0, ds.key("sigma_over_lambda") + " entries must be > 0 (got " + fmt(v) + ")");
        const std::string method = ds.string("method", "closed_form");
        if (method == "closed_form") cfg.disorder_method = DisorderMethod::closed_form;
        else if (method == "quadrature") cfg.disorder_method = DisorderMethod::quadrature;
        else throw ConfigError(ds.key("method") + " must be \"closed_form\" or \"quadrature\"");
    }

    if (s.has("sweep")) {
        const Section sw = s.child("sweep");
        sw.allow({"mode", "parameter", "values", "range"});
        SweepSpec spec;
        auto m = parse_run_mode(sw.string("mode", ""));
        require(m.has_value() && *m != RunMode::sweep,
                sw.key("mode") + " must be one of dynamics, exact, compare, spectrum, disorder-scan");
        spec.mode = *m;
        spec.parameter = sw.string("parameter", "");
        require(!spec.parameter.empty(), "missing required key " + sw.key("parameter"));
        require(spec.parameter.rfind("run.", 0) != 0, sw.key("parameter") + " cannot target the run section");
        if (sw.has("values")) {
            require(!sw.has("range"), sw.key("values") + " and " + sw.key("range") + " are exclusive");
            spec.values = sw.numbers("values");
        } else {
            const Section r = sw.child("range");
            r.allow({"start", "stop", "count"});
            const double a = r.number("start"), b = r.number("stop");
            const long long count = r.integer("count");
            require(count >= 1, r.key("count") + " must be >= 1");
            for (long long i = 0; i < count; ++i)
                spec.values.push_back(count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
        }
        require(!spec.values.empty(), sw.path() + " must declare at least one value");
        cfg.sweep = spec;
    }

    if (cfg.mode == RunMode::sweep) {
        require(cfg.sweep.has_value(), "missing required key run.sweep for mode sweep");
        // Validate the base point once; each point is re-validated at run time.
        json base = doc;
        base["run"].erase("sweep");
        base["run"]["mode"] = std::string(to_string(cfg.sweep->mode));
        const std::string first = with_parameter(base.dump(), cfg.sweep->parameter, cfg.sweep->values.front());
        (void)parse_document(json::parse(first), std::nullopt);
    }
}

void check_mode_requirements(RunConfig& cfg, const json& doc) {
    auto need = [&](bool ok, const char* what) {
        require(ok, std::string("missing required key ") + what + " for mode " + std::string(to_string(cfg.mode)));
    };
    auto two_level_only = [&] {
        require(cfg.molecule->levels() == 2,
                "mode " + std::string(to_string(cfg.mode)) + " requires a two-level molecule");
        require(cfg.molecule->energies[0] == 0.0, "molecule.energies[0] must be 0 for mode " + std::string(to_string(cfg.mode)));
        require(std::abs(cfg.molecule->dipole(1, 0).imag()) <= kHermitianTolerance,
                "molecule.dipole must be real for mode " + std::string(to_string(cfg.mode)));
    };
    const bool time_domain = cfg.mode == RunMode::dynamics || cfg.mode == RunMode::exact || cfg.mode == RunMode::compare;
    const bool freq_domain = cfg.mode == RunMode::spectrum || cfg.mode == RunMode::disorder_scan;
    if (cfg.mode == RunMode::sweep) return;
    need(cfg.molecule.has_value(), "molecule");
    need(cfg.cavity.has_value(), "cavity");
    if (time_domain) {
        need(cfg.time_grid.has_value(), "grid.time");
        require(cfg.cavity->kappa < cfg.cavity->omega_c, "cavity.kappa must be < cavity.omega_c (underdamped)");
        require(cfg.initial_level >= 0 && cfg.initial_level < cfg.molecule->levels(),
                "run.initial_level must index a molecular level");
        require(std::holds_alternative<NoDisorder>(cfg.ensemble.disorder.kind),
                "ensemble.disorder applies to modes spectrum and disorder-scan only");
    }
    if (cfg.mode == RunMode::exact || cfg.mode == RunMode::compare) {
        two_level_only();
        need(doc.contains("ensemble") && doc["ensemble"].contains("n_molecules"), "ensemble.n_molecules");
        require(cfg.cavity->kappa == 0.0,
                "cavity.kappa must be 0 for mode " + std::string(to_string(cfg.mode)) + " (the reference is closed)");
        require(!cfg.cavity_drive, "cavity.drive is not supported by mode " + std::string(to_string(cfg.mode)));
        require(cfg.initial_level == 0 || cfg.initial_level == 1, "run.initial_level must be 0 or 1");
    }
    if (freq_domain) need(cfg.frequency_grid.has_value(), "grid.frequency");
    if (cfg.mode == RunMode::spectrum && !std::holds_alternative<NoDisorder>(cfg.ensemble.disorder.kind))
        two_level_only();
    if (cfg.mode == RunMode::disorder_scan) {
        two_level_only();
        need(!cfg.sigma_over_lambda.empty(), "run.disorder_scan.sigma_over_lambda");
        require(cfg.rwa_lambda() > 0, "mode disorder-scan requires a non-zero molecule coupling");
    }
    if (cfg.cavity_drive) cfg.cavity_drive->n_molecules = cfg.ensemble.n_molecules;
}

RunConfig parse_document(const json& doc, std::optional<RunMode> mode_override) {
    const Section root(doc, "");
    root.allow({"description", "molecule", "cavity", "ensemble", "pulse", "grid", "run"});
    RunConfig cfg;
    cfg.canonical = doc.dump();
    if (root.has("molecule")) parse_molecule(root.child("molecule"), cfg);
    if (root.has("cavity")) parse_cavity(root.child("cavity"), cfg);

    const double lam = bright_coupling(cfg);
    const double wc = cfg.cavity ? cfg.cavity->omega_c : 1.0;
    const double regulator = lam > 0 ? 1e-3 * lam : 1e-6 * wc;
    parse_ensemble(root.has("ensemble") ? root.child("ensemble") : Section(json::object(), "ensemble"), cfg, regulator);
    if (root.has("pulse")) cfg.pulse = parse_pulse(root.child("pulse"));
    if (root.has("grid")) {
        const Section g = root.child("grid");
        g.allow({"time", "frequency"});
        double scale = wc;
        if (cfg.molecule) scale = std::max(scale, cfg.molecule->energies.maxCoeff() - cfg.molecule->energies.minCoeff());
        if (g.has("time")) parse_time_grid(g.child("time"), cfg, 0.01 / scale);
        if (g.has("frequency")) parse_frequency_grid(g.child("frequency"), cfg, regulator);
    }
    parse_run(root.has("run") ? root.child("run") : Section(json::object(), "run"), cfg, doc, mode_override);
    check_mode_requirements(cfg, doc);
    return cfg;
}

}  // namespace

std::string_view to_string(RunMode mode) noexcept {
    switch (mode) {
        case RunMode::dynamics: return "dynamics";
        case RunMode::exact: return "exact";
        case RunMode::compare: return "compare";
        case RunMode::spectrum: return "spectrum";
        case RunMode::disorder_scan: return "disorder-scan";
        case RunMode::sweep: return "sweep";
    }
    return "unknown";
}

std::optional<RunMode> parse_run_mode(std::string_view name) noexcept {
    for (RunMode m : {RunMode::dynamics, RunMode::exact, RunMode::compare, RunMode::spectrum,
                      RunMode::disorder_scan, RunMode::sweep}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

double RunConfig::rwa_lambda() const {
    if (!molecule || molecule->levels() < 2) return 0.0;
    return rwa_coupling_from_field(std::abs(molecule->coupling(1, 0)));
}

MolecularModel RunConfig::rwa_molecule() const {
    MolecularModel m = molecule.value();
    m.coupling /= std::sqrt(2.0);
    return m;
}

RunConfig parse_config(std::string_view text, std::optional<RunMode> mode) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed configuration document: ") + e.what());
    }
    return parse_document(doc, mode);
}

std::string with_parameter(std::string_view text, std::string_view path, double value) {
    json doc = json::parse(text.begin(), text.end());
    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string part(path.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
        require(!part.empty(), "sweep parameter path \"" + std::string(path) + "\" is malformed");
        require(node->is_object(), "sweep parameter path \"" + std::string(path) + "\" does not name an object member");
        if (dot == std::string_view::npos) {
            if (node->contains(part))
                require((*node)[part].is_number(), "sweep parameter " + std::string(path) + " must be numeric");
            const bool integral = node->contains(part) && (*node)[part].is_number_integer();
            if (integral) {
                require(value == std::floor(value), "sweep parameter " + std::string(path) + " takes integer values");
                (*node)[part] = static_cast<long long>(value);
            } else {
                (*node)[part] = value;
            }
            break;
        }
        require(node->contains(part), "sweep parameter path \"" + std::string(path) + "\" names a missing section");
        node = &(*node)[part];
        start = dot + 1;
    }
    return doc.dump();
}

std::string config_hash(const RunConfig& cfg) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : cfg.canonical) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace polariton
