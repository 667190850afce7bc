// exact_tc.hpp — Driven Tavis-Cummings model in the permutation-symmetric
// (Dicke) subspace, used as a numerically exact reference.
//
// Basis |m, n>: m excited molecules out of N, n cavity photons (n <= n_max).
//     H(t) = omega_c a+a + omega0 J_ee + (lam/sqrt N)(J- a+ + J+ a) - E(t) mu (J+ + J-)

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/SparseCore>

#include "polariton/model.hpp"

namespace polariton {

struct TCConfig {
    int n_molecules{1};
    double omega0{1.0};
    double omega_c{1.0};
    double lam{0.0};   // rotating-wave coupling
    double mu{1.0};    // transition dipole weight of the drive
    int n_max{4};
    DrivePulse pulse{no_drive()};

    Eigen::Index dimension() const noexcept {
        return static_cast<Eigen::Index>(n_molecules + 1) * (n_max + 1);
    }
    Eigen::Index index(int m, int n) const noexcept {
        return static_cast<Eigen::Index>(m) * (n_max + 1) + n;
    }
};

TCConfig make_tc_config(int n_molecules, double omega0, double omega_c, double lam, int n_max,
                        DrivePulse pulse = no_drive(), double mu = 1.0);

using SparseMatrixXc = Eigen::SparseMatrix<Complex>;

// Time-independent part and the drive operator -mu (J+ + J-).
struct TCOperators {
    SparseMatrixXc static_part;
    SparseMatrixXc drive;
};

TCOperators build_tc_operators(const TCConfig& cfg);

SparseMatrixXc build_tc_hamiltonian(const TCConfig& cfg, double t);

struct SymmetricState {
    VectorXc amplitudes;
};

SymmetricState symmetric_basis_state(const TCConfig& cfg, int excited, int photons);

struct ExactOptions {
    std::size_t output_every{1};
    double norm_tolerance{1e-8};
    double excitation_tolerance{1e-8};  // checked only without drive
    double truncation_threshold{1e-6};
};

struct ExactTrajectory {
    std::vector<double> times;
    std::vector<double> excited_fraction;   // <sum sigma+ sigma>/N
    std::vector<double> photon_number;      // <a+ a>
    std::vector<double> norm;
    std::vector<double> excitation_number;  // <a+ a + sum sigma+ sigma>
    double max_top_layer_population{0.0};   // largest weight on n = n_max
    bool truncation_safe{true};
    VectorXc final_amplitudes;
};

// RK4 integration of i dpsi/dt = H(t) psi in the interaction picture of the
// diagonal part of H. Throws InvariantViolation when the norm (or, undriven,
// the excitation number) drifts beyond tolerance.
ExactTrajectory propagate_exact(const TCConfig& cfg, const TimeGrid& grid, const SymmetricState& psi0,
                                const ExactOptions& opts = {});

// Eigenvalues of the bright single-excitation block {|0,1>, |1,0>}, ascending.
std::array<double, 2> single_excitation_eigenstates(const TCConfig& cfg);

}  // namespace polariton
