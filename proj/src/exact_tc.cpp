#include "polariton/exact_tc.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "polariton/meanfield.hpp"

namespace polariton {

TCConfig make_tc_config(int n_molecules, double omega0, double omega_c, double lam, int n_max,
                        DrivePulse pulse, double mu) {
    if (n_molecules < 1) throw std::invalid_argument("TC n_molecules must be >= 1");
    if (n_max < 1) throw std::invalid_argument("TC n_max must be >= 1");
    if (!std::isfinite(omega0) || !std::isfinite(omega_c) || !std::isfinite(lam) || !std::isfinite(mu))
        throw std::invalid_argument("TC parameters must be finite");
    return TCConfig{n_molecules, omega0, omega_c, lam, mu, n_max, pulse};
}

TCOperators build_tc_operators(const TCConfig& cfg) {
    const int big_n = cfg.n_molecules;
    const Eigen::Index dim = cfg.dimension();
    std::vector<Eigen::Triplet<Complex>> h0;
    std::vector<Eigen::Triplet<Complex>> drive;
    const double g = cfg.lam / std::sqrt(static_cast<double>(big_n));
    for (int m = 0; m <= big_n; ++m) {
        for (int n = 0; n <= cfg.n_max; ++n) {
            const Eigen::Index i = cfg.index(m, n);
            h0.emplace_back(i, i, m * cfg.omega0 + n * cfg.omega_c);
            // <m-1, n+1| J- a+ |m, n>
            if (m >= 1 && n + 1 <= cfg.n_max) {
                const double v = g * std::sqrt(static_cast<double>(m) * (big_n - m + 1)) * std::sqrt(n + 1.0);
                const Eigen::Index j = cfg.index(m - 1, n + 1);
                h0.emplace_back(j, i, v);
                h0.emplace_back(i, j, v);
            }
            // <m+1, n| J+ |m, n>
            if (m + 1 <= big_n) {
                const double v = -cfg.mu * std::sqrt(static_cast<double>(m + 1) * (big_n - m));
                const Eigen::Index j = cfg.index(m + 1, n);
                drive.emplace_back(j, i, v);
                drive.emplace_back(i, j, v);
            }
        }
    }
    TCOperators ops{SparseMatrixXc(dim, dim), SparseMatrixXc(dim, dim)};
    ops.static_part.setFromTriplets(h0.begin(), h0.end());
    ops.drive.setFromTriplets(drive.begin(), drive.end());
    return ops;
}

SparseMatrixXc build_tc_hamiltonian(const TCConfig& cfg, double t) {
    TCOperators ops = build_tc_operators(cfg);
    const double e = pulse_field(cfg.pulse, t);
    if (e == 0.0) return ops.static_part;
    return ops.static_part + e * ops.drive;
}

SymmetricState symmetric_basis_state(const TCConfig& cfg, int excited, int photons) {
    if (excited < 0 || excited > cfg.n_molecules || photons < 0 || photons > cfg.n_max)
        throw std::out_of_range("symmetric_basis_state: |m, n> outside the truncated basis");
    SymmetricState s{VectorXc::Zero(cfg.dimension())};
    s.amplitudes[cfg.index(excited, photons)] = 1.0;
    return s;
}

ExactTrajectory propagate_exact(const TCConfig& cfg, const TimeGrid& grid, const SymmetricState& psi0,
                                const ExactOptions& opts) {
    if (psi0.amplitudes.size() != cfg.dimension())
        throw std::invalid_argument("initial state dimension does not match (N+1)(n_max+1)");
    if (std::abs(psi0.amplitudes.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("initial state must be normalized");
    if (opts.output_every == 0) throw std::invalid_argument("output_every must be >= 1");

    const TCOperators ops = build_tc_operators(cfg);
    const Eigen::Index dim = cfg.dimension();
    VectorXd excited(dim), photons(dim), top(dim);
    for (int m = 0; m <= cfg.n_molecules; ++m) {
        for (int n = 0; n <= cfg.n_max; ++n) {
            const Eigen::Index i = cfg.index(m, n);
            excited[i] = m;
            photons[i] = n;
            top[i] = n == cfg.n_max ? 1.0 : 0.0;
        }
    }
    const bool driven = cfg.pulse.e0 != 0.0;
    const Complex minus_i{0.0, -1.0};

    // Interaction picture of the diagonal part D: psi = exp(-i D (t - t0)) phi.
    // Populations are |phi|^2, and the step error scales with the couplings only.
    const VectorXd diag = ops.static_part.diagonal().real();
    SparseMatrixXc coupling = ops.static_part;
    coupling.prune([](Eigen::Index r, Eigen::Index c, const Complex&) { return r != c; });
    auto phases = [&](double t) -> VectorXc {
        VectorXc u(dim);
        for (Eigen::Index i = 0; i < dim; ++i) u[i] = std::polar(1.0, -diag[i] * (t - grid.t_start));
        return u;
    };
    auto rhs = [&](const VectorXc& phi, double t) -> VectorXc {
        const VectorXc u = phases(t);
        const VectorXc psi = u.cwiseProduct(phi);
        const double e = pulse_field(cfg.pulse, t);
        VectorXc out = coupling * psi;
        if (e != 0.0) out += e * (ops.drive * psi);
        return minus_i * u.conjugate().cwiseProduct(out);
    };

    ExactTrajectory traj;
    VectorXc psi = psi0.amplitudes;
    double nex0 = 0.0;
    auto record = [&](double t, bool store) {
        const VectorXd prob = psi.cwiseAbs2();
        const double norm = prob.sum();
        const double ph = prob.dot(photons);
        const double ex = prob.dot(excited);
        const double layer = prob.dot(top);
        traj.max_top_layer_population = std::max(traj.max_top_layer_population, layer);
        if (std::abs(norm - 1.0) > opts.norm_tolerance) throw InvariantViolation("exact norm drifted", t);
        if (traj.times.empty()) nex0 = ph + ex;
        if (!driven && std::abs(ph + ex - nex0) > opts.excitation_tolerance)
            throw InvariantViolation("excitation number drifted without drive", t);
        if (!store) return;
        traj.times.push_back(t);
        traj.excited_fraction.push_back(ex / cfg.n_molecules);
        traj.photon_number.push_back(ph);
        traj.norm.push_back(norm);
        traj.excitation_number.push_back(ph + ex);
    };

    record(grid.t_start, true);
    const std::size_t steps = grid.steps();
    const double dt = grid.dt;
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = grid.time(n);
        const VectorXc k1 = rhs(psi, t);
        const VectorXc k2 = rhs(psi + 0.5 * dt * k1, t + 0.5 * dt);
        const VectorXc k3 = rhs(psi + 0.5 * dt * k2, t + 0.5 * dt);
        const VectorXc k4 = rhs(psi + dt * k3, t + dt);
        psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        record(grid.time(n + 1), (n + 1) % opts.output_every == 0 || n + 1 == steps);
    }
    traj.truncation_safe = traj.max_top_layer_population <= opts.truncation_threshold;
    traj.final_amplitudes = phases(grid.time(steps)).cwiseProduct(psi);
    return traj;
}

std::array<double, 2> single_excitation_eigenstates(const TCConfig& cfg) {
    const MatrixXc h = MatrixXc(build_tc_operators(cfg).static_part);
    const Eigen::Index photon = cfg.index(0, 1);
    const Eigen::Index exciton = cfg.index(1, 0);
    Eigen::Matrix2cd block;
    block << h(photon, photon), h(photon, exciton), h(exciton, photon), h(exciton, exciton);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(block, Eigen::EigenvaluesOnly);
    return {eig.eigenvalues()[0], eig.eigenvalues()[1]};
}

}  // namespace polariton
