// model.hpp — Molecules, cavity, ensemble and drive descriptions
//
// Units: hbar = 1. Energies and frequencies share one user-chosen unit and
// times are measured in its inverse.

#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "polariton/types.hpp"

namespace polariton {

// Tolerance used when validating Hermitian inputs.
inline constexpr double kHermitianTolerance = 1e-12;

/// One molecule in its eigenbasis.
///
/// `coupling` holds lambda_{ab}, the collective light-matter coupling that
/// multiplies the scaled displacement field. `dipole` holds the weights with
/// which an external pulse couples the levels.
struct MolecularModel {
    VectorXd energies;
    MatrixXc coupling;
    MatrixXc dipole;

    Eigen::Index levels() const noexcept { return energies.size(); }
};

// Validates shapes, Hermiticity, ordering and M >= 2; throws std::invalid_argument.
MolecularModel make_molecule(VectorXd energies, MatrixXc coupling, MatrixXc dipole);

// Two-level molecule with energies (0, omega0) and off-diagonal coupling/dipole.
MolecularModel two_level(double omega0, double lam, double mu);

struct CavityMode {
    double omega_c{1.0};
    double kappa{0.0};
};

CavityMode make_cavity(double omega_c, double kappa);

struct NoDisorder {};

struct GaussianDisorder {
    double sigma{0.0};
};

// Finite set of transition frequencies with weights summing to one.
struct SampledDisorder {
    std::vector<double> frequencies;
    std::vector<double> weights;
};

struct DisorderSpec {
    std::variant<NoDisorder, GaussianDisorder, SampledDisorder> kind{NoDisorder{}};
    double gamma{1e-3};  // Lorentzian regulator of the polarization integral
};

DisorderSpec make_disorder(NoDisorder, double gamma);
DisorderSpec make_disorder(GaussianDisorder g, double gamma);
// Empty weights mean uniform weights.
DisorderSpec make_disorder(SampledDisorder s, double gamma);

struct EnsembleSpec {
    int n_molecules{1};
    DisorderSpec disorder{};
};

EnsembleSpec make_ensemble(int n_molecules, DisorderSpec disorder);

/// Gaussian laser pulse E0 cos(omega t) exp(-(t - t_center)^2 / (2 tau^2)).
struct DrivePulse {
    double e0{0.0};
    double omega{1.0};
    double t_center{0.0};
    double tau{1.0};
};

DrivePulse make_pulse(double e0, double omega, double t_center, double tau);

// A pulse that is identically zero.
inline DrivePulse no_drive() { return DrivePulse{0.0, 0.0, 0.0, 1.0}; }

struct TimeGrid {
    double t_start{0.0};
    double t_end{1.0};
    double dt{0.01};

    std::size_t steps() const noexcept;
    double time(std::size_t k) const noexcept { return t_start + static_cast<double>(k) * dt; }
};

inline constexpr std::size_t kDefaultMaxSteps = 50'000'000;

// Requires t_end > t_start, dt > 0 and at most max_steps steps. The grid is
// t_start + k dt for k = 0..steps(), with steps() = ceil((t_end - t_start)/dt).
TimeGrid make_time_grid(double t_start, double t_end, double dt,
                        std::size_t max_steps = kDefaultMaxSteps);

double pulse_field(const DrivePulse& p, double t) noexcept;

// h(t) = diag(E) - E(t) mu.
MatrixXc bare_hamiltonian(const MolecularModel& m, const DrivePulse& p, double t);

/// Coupling conventions. In the time domain lambda multiplies
/// phi = (a + a^dagger)/sqrt(2); the rotating-wave (Tavis-Cummings) coupling
/// of the same molecule is lambda / sqrt(2).
double rwa_coupling_from_field(double lam) noexcept;
double field_coupling_from_rwa(double lam_rwa) noexcept;

enum class Statistics { fermion, boson };

// Builds explicit creation/annihilation matrices for M orbitals and checks
// [c+_a c_b, c+_g c_d] = delta_bg c+_a c_d - delta_da c+_g c_b for all M^4
// index combinations. Bosons use a Fock space truncated in total particle
// number (boson_cutoff quanta). Throws std::length_error for M > 6.
bool verify_mapping_commutators(int levels, Statistics statistics, int boson_cutoff = 3);

}  // namespace polariton
