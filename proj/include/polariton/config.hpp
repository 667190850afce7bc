// config.hpp — Strict-schema JSON run configuration
//
// Every key is documented in README.md; unknown keys are rejected and each
// validation failure names the offending key path.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polariton/exact_tc.hpp"
#include "polariton/meanfield.hpp"
#include "polariton/model.hpp"
#include "polariton/spectra.hpp"

namespace polariton {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class RunMode { dynamics, exact, compare, spectrum, disorder_scan, sweep };

std::string_view to_string(RunMode mode) noexcept;
std::optional<RunMode> parse_run_mode(std::string_view name) noexcept;

// How molecule coupling entries are read. `rwa`: the rotating-wave (Tavis-
// Cummings) lambda, Rabi splitting 2 lambda. `field`: the coefficient of
// phi = (a + a+)/sqrt(2) used by the time-domain equations.
enum class CouplingConvention { rwa, field };

// Gaussian samples of the transition frequency drawn at run time from --seed.
struct DisorderDraw {
    std::size_t count{0};
    double sigma{0.0};
};

struct SweepSpec {
    RunMode mode{RunMode::dynamics};
    std::string parameter;  // dotted key path, e.g. "cavity.kappa"
    std::vector<double> values;
};

struct RunConfig {
    std::string canonical;  // normalized JSON document (sorted keys)
    RunMode mode{RunMode::dynamics};

    std::optional<MolecularModel> molecule;  // coupling stored in the field convention
    CouplingConvention convention{CouplingConvention::rwa};
    std::optional<CavityMode> cavity;
    std::optional<CavityDrive> cavity_drive;
    EnsembleSpec ensemble{};
    std::optional<DisorderDraw> disorder_draw;
    DrivePulse pulse{no_drive()};

    std::optional<TimeGrid> time_grid;
    std::size_t output_every{1};
    std::optional<FrequencyGrid> frequency_grid;

    Backend backend{Backend::auxiliary};
    CouplingForm coupling_form{CouplingForm::full};
    std::string output{"out"};
    int n_max{4};
    int initial_level{0};
    std::vector<double> sigma_over_lambda;
    DisorderMethod disorder_method{DisorderMethod::closed_form};
    std::optional<SweepSpec> sweep;
    InvariantTolerances tolerances{};
    ExactOptions exact{};

    // Rotating-wave coupling lambda_{10} of a two-level molecule.
    double rwa_lambda() const;
    // The molecule with its coupling expressed in the rotating-wave convention.
    MolecularModel rwa_molecule() const;
};

// Parses and validates a JSON document. `mode` (from the CLI subcommand)
// overrides run.mode; if both are present they must agree.
RunConfig parse_config(std::string_view text, std::optional<RunMode> mode = std::nullopt);

// Returns `text` with the number at dotted `path` replaced by `value`.
std::string with_parameter(std::string_view text, std::string_view path, double value);

// 64-bit FNV-1a digest of the canonical document, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace polariton
