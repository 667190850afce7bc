// meanfield.hpp — Leading-order (Hartree) dynamics of one representative
// molecule coupled to the mean cavity field.
//
// With scaled quadratures q = phi/sqrt(N), p = pi/sqrt(N) the coupled system is
//     i drho/dt = [h(t) + lambda q, rho],
//     dq/dt     = omega_c p,
//     dp/dt     = -omega_c q - 2 kappa p - tr(lambda rho) - F(t)/sqrt(N),
// and no factor of N survives. The memory backend replaces the oscillator by
// the convolution q(t) = int D0(t - t') [tr(lambda rho(t')) + F(t')/sqrt(N)] dt'.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polariton/model.hpp"
#include "polariton/photon_kernel.hpp"

namespace polariton {

enum class Backend { memory, auxiliary };

// `full` keeps the counter-rotating part of lambda q; `rwa` keeps only the
// secular terms alpha L + conj(alpha) L^dagger with alpha = (q + i p)/sqrt(2).
enum class CouplingForm { full, rwa };

struct MeanFieldState {
    MatrixXc rho;
    double q{0.0};
    double p{0.0};
    double t{0.0};
};

// rho = |0><0|, vacuum mean field.
MeanFieldState ground_state(const MolecularModel& m, double t0 = 0.0);

struct Trajectory {
    std::vector<double> times;
    std::vector<MeanFieldState> states;
    MatrixXd populations;               // one row per stored time
    std::vector<double> polarization;   // Re tr(lambda rho)
    std::vector<double> field_q;
    std::vector<double> field_p;
    std::vector<double> photon_proxy;   // (q^2 + p^2)/2

    std::size_t size() const noexcept { return times.size(); }
    // rho_{M-1,M-1} over time; the excited population for a two-level molecule.
    std::vector<double> top_population() const;
};

struct InvariantTolerances {
    double trace{1e-8};
    double hermiticity{1e-10};
    double eigenvalue{1e-8};
    double purity{1e-6};
};

// Optional classical force on the cavity mode; enters as F(t)/sqrt(N).
struct CavityDrive {
    DrivePulse force;
    int n_molecules{1};

    double scaled(double t) const;
};

struct PropagationOptions {
    Backend backend{Backend::auxiliary};
    CouplingForm coupling{CouplingForm::full};
    std::optional<CavityDrive> cavity_drive;
    std::size_t output_every{1};
    InvariantTolerances tolerances{};
};

class InvariantViolation : public std::runtime_error {
public:
    InvariantViolation(const std::string& what, double time)
        : std::runtime_error(what + " at t = " + std::to_string(time)), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

// Fourth-order composite weights (trapezoid with Gregory end corrections) for
// n intervals; falls back to Simpson-type rules for n < 5.
std::vector<double> history_weights(std::size_t intervals);

// int_0^t D0(t - t') s(t') dt' for samples s_k = s(k dt), t on the grid.
double hartree_field(std::span<const double> source_history, const PhotonKernel& k, double t,
                     double dt);

// v_H(t) = lambda * hartree_field(...). Throws if the history does not reach t.
MatrixXc hartree_potential(std::span<const double> polarization_history, const PhotonKernel& k,
                           const MatrixXc& coupling, double t, double dt);

// Throws std::invalid_argument on a malformed initial state and
// InvariantViolation (carrying the first offending time) during the run.
Trajectory propagate_meanfield(const MolecularModel& m, const CavityMode& cav,
                               const DrivePulse& pulse, const TimeGrid& grid,
                               const MeanFieldState& init, const PropagationOptions& opts = {});

// Same propagation with lambda = 0.
Trajectory bare_molecule_reference(const MolecularModel& m, const DrivePulse& pulse,
                                   const TimeGrid& grid, const MeanFieldState& init,
                                   std::size_t output_every = 1);

// tr(h0 rho) + omega_c (q^2 + p^2)/2 + q tr(lambda rho); conserved without drive or decay.
double meanfield_energy(const MolecularModel& m, const CavityMode& cav, const MeanFieldState& s);

}  // namespace polariton
