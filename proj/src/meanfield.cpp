#include "polariton/meanfield.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace polariton {

namespace {

const Complex kI{0.0, 1.0};

// Weight of sample k in the fourth-order composite rule over n intervals.
inline double history_weight(std::size_t k, std::size_t n) noexcept {
    switch (n) {
        case 0: return 0.0;
        case 1: return 0.5;
        case 2: return k == 1 ? 4.0 / 3.0 : 1.0 / 3.0;
        case 3: return (k == 0 || k == 3) ? 3.0 / 8.0 : 9.0 / 8.0;
        case 4: return (k == 0 || k == 4) ? 1.0 / 3.0 : (k == 2 ? 2.0 / 3.0 : 4.0 / 3.0);
        default: break;
    }
    const std::size_t edge = std::min(k, n - k);
    if (edge == 0) return 3.0 / 8.0;
    if (edge == 1) return 7.0 / 6.0;
    if (edge == 2) return 23.0 / 24.0;
    return 1.0;
}

double d0_derivative(const PhotonKernel& k, double s) {
    const double w = k.damped_frequency();
    return -(k.omega_c / w) * std::exp(-k.kappa * s) * (w * std::cos(w * s) - k.kappa * std::sin(w * s));
}

MatrixXc strictly_lower(const MatrixXc& a) {
    MatrixXc l = MatrixXc::Zero(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j) l(i, j) = a(i, j);
    return l;
}

MatrixXc liouville(const MatrixXc& h, const MatrixXc& rho) { return -kI * (h * rho - rho * h); }

class InvariantMonitor {
public:
    InvariantMonitor(const InvariantTolerances& tol, double purity0) : tol_(tol), purity0_(purity0) {}

    // Throws on the first violated invariant, otherwise symmetrizes rho.
    void check(MatrixXc& rho, double t) const {
        if (!rho.allFinite()) throw InvariantViolation("density matrix became non-finite", t);
        if (std::abs(rho.trace() - Complex(1.0)) > tol_.trace)
            throw InvariantViolation("trace of rho drifted from 1", t);
        if (hermiticity_error(rho) > tol_.hermiticity)
            throw InvariantViolation("rho lost Hermiticity", t);
        rho = hermitian_part(rho);
        Eigen::SelfAdjointEigenSolver<MatrixXc> eig(rho, Eigen::EigenvaluesOnly);
        const auto& ev = eig.eigenvalues();
        if (ev.minCoeff() < -tol_.eigenvalue || ev.maxCoeff() > 1.0 + tol_.eigenvalue)
            throw InvariantViolation("rho eigenvalues left [0, 1]", t);
        const double purity = (rho * rho).trace().real();
        if (std::abs(purity - purity0_) > tol_.purity)
            throw InvariantViolation("purity of rho drifted", t);
    }

private:
    InvariantTolerances tol_;
    double purity0_;
};

void validate_initial(const MolecularModel& m, const MeanFieldState& init, const InvariantTolerances& tol) {
    if (init.rho.rows() != m.levels() || init.rho.cols() != m.levels())
        throw std::invalid_argument("initial rho must be M x M");
    if (!init.rho.allFinite() || !std::isfinite(init.q) || !std::isfinite(init.p))
        throw std::invalid_argument("initial state must be finite");
    if (hermiticity_error(init.rho) > tol.hermiticity)
        throw std::invalid_argument("initial rho is not Hermitian");
    if (std::abs(init.rho.trace() - Complex(1.0)) > tol.trace)
        throw std::invalid_argument("initial rho must have unit trace");
    Eigen::SelfAdjointEigenSolver<MatrixXc> eig(hermitian_part(init.rho), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tol.eigenvalue || eig.eigenvalues().maxCoeff() > 1.0 + tol.eigenvalue)
        throw std::invalid_argument("initial rho eigenvalues must lie in [0, 1]");
}

class Recorder {
public:
    Recorder(const MolecularModel& m, std::size_t expected) : m_(m) {
        traj_.times.reserve(expected);
        traj_.states.reserve(expected);
        rows_.reserve(expected);
    }

    void add(const MeanFieldState& s) {
        traj_.times.push_back(s.t);
        traj_.states.push_back(s);
        rows_.push_back(s.rho.diagonal().real());
        traj_.polarization.push_back((m_.coupling * s.rho).trace().real());
        traj_.field_q.push_back(s.q);
        traj_.field_p.push_back(s.p);
        traj_.photon_proxy.push_back(0.5 * (s.q * s.q + s.p * s.p));
    }

    Trajectory finish() {
        traj_.populations.resize(static_cast<Eigen::Index>(rows_.size()), m_.levels());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            traj_.populations.row(static_cast<Eigen::Index>(i)) = rows_[i].transpose();
        return std::move(traj_);
    }

private:
    const MolecularModel& m_;
    Trajectory traj_;
    std::vector<VectorXd> rows_;
};

struct Derivative {
    MatrixXc rho;
    double q;
    double p;
};

Trajectory propagate_auxiliary(const MolecularModel& m, const PhotonKernel& kernel,
                               const DrivePulse& pulse, const TimeGrid& grid,
                               const MeanFieldState& init, const PropagationOptions& opts) {
    const MatrixXc& lam = m.coupling;
    const MatrixXc lower = strictly_lower(lam);
    const MatrixXc upper = lower.adjoint();
    const double wc = kernel.omega_c;
    const double kappa = kernel.kappa;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const bool rwa = opts.coupling == CouplingForm::rwa;

    auto force = [&](double t) { return opts.cavity_drive ? opts.cavity_drive->scaled(t) : 0.0; };

    auto rhs = [&](const MatrixXc& rho, double q, double p, double t) {
        MatrixXc h = bare_hamiltonian(m, pulse, t);
        Derivative d;
        if (rwa) {
            const Complex alpha = Complex(q, p) * inv_sqrt2;
            h += inv_sqrt2 * (alpha * lower + std::conj(alpha) * upper);
            const Complex s = (upper * rho).trace();
            d.q = wc * p + s.imag() - kappa * q;
            d.p = -wc * q - s.real() - kappa * p - force(t);
        } else {
            h += q * lam;
            const double s = (lam * rho).trace().real();
            d.q = wc * p;
            d.p = -wc * q - 2.0 * kappa * p - s - force(t);
        }
        d.rho = liouville(h, rho);
        return d;
    };

    MeanFieldState state = init;
    state.t = grid.t_start;
    state.rho = hermitian_part(init.rho);
    const InvariantMonitor monitor(opts.tolerances, (state.rho * state.rho).trace().real());
    const std::size_t steps = grid.steps();
    Recorder rec(m, steps / opts.output_every + 2);
    rec.add(state);

    const double dt = grid.dt;
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = grid.time(n);
        const Derivative k1 = rhs(state.rho, state.q, state.p, t);
        const Derivative k2 = rhs(state.rho + 0.5 * dt * k1.rho, state.q + 0.5 * dt * k1.q,
                                  state.p + 0.5 * dt * k1.p, t + 0.5 * dt);
        const Derivative k3 = rhs(state.rho + 0.5 * dt * k2.rho, state.q + 0.5 * dt * k2.q,
                                  state.p + 0.5 * dt * k2.p, t + 0.5 * dt);
        const Derivative k4 = rhs(state.rho + dt * k3.rho, state.q + dt * k3.q, state.p + dt * k3.p, t + dt);
        state.rho += dt / 6.0 * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho);
        state.q += dt / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
        state.p += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
        state.t = grid.time(n + 1);
        monitor.check(state.rho, state.t);
        if (!std::isfinite(state.q) || !std::isfinite(state.p))
            throw InvariantViolation("cavity field became non-finite", state.t);
        if ((n + 1) % opts.output_every == 0 || n + 1 == steps) rec.add(state);
    }
    return rec.finish();
}

// Convolution backend: the cavity field is rebuilt at every stage from the
// stored source history. Full coupling only.
Trajectory propagate_memory(const MolecularModel& m, const PhotonKernel& kernel,
                            const DrivePulse& pulse, const TimeGrid& grid,
                            const MeanFieldState& init, const PropagationOptions& opts) {
    const MatrixXc& lam = m.coupling;
    const double dt = grid.dt;
    const std::size_t steps = grid.steps();
    const OscillatorState start{init.q, init.p};

    auto force = [&](double t) { return opts.cavity_drive ? opts.cavity_drive->scaled(t) : 0.0; };
    auto source = [&](const MatrixXc& rho, double t) { return (lam * rho).trace().real() + force(t); };

    // D0 sampled every half step, dD0/ds every full step.
    std::vector<double> k_half(2 * steps + 3);
    for (std::size_t j = 0; j < k_half.size(); ++j) k_half[j] = d0_retarded(kernel, 0.5 * dt * static_cast<double>(j));
    std::vector<double> dk(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) dk[j] = d0_derivative(kernel, dt * static_cast<double>(j));

    std::vector<double> src;
    src.reserve(steps + 1);

    // int_{t0}^{t_n} D0(t_n + half*dt/2 - t') s(t') dt'
    auto history = [&](std::size_t n, std::size_t half) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= n; ++k) acc += history_weight(k, n) * k_half[2 * (n - k) + half] * src[k];
        return dt * acc;
    };

    // int_{t_n}^{t_n+h} D0(t_n + h - t') s(t') dt' with s interpolated through
    // (t_{n-1}, t_n, t_n + h), three-point Gauss-Legendre.
    static constexpr double kNodes[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static constexpr double kWeights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    auto local = [&](std::size_t n, double h, double s_stage) {
        if (h == 0.0) return 0.0;
        const double sb = src[n];
        const bool quadratic = n > 0;
        const double sa = quadratic ? src[n - 1] : 0.0;
        const double a = -dt;
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double tau = 0.5 * h * (1.0 + kNodes[i]);
            double s;
            if (quadratic) {
                s = sa * (tau) * (tau - h) / ((a) * (a - h)) + sb * (tau - a) * (tau - h) / ((-a) * (-h)) +
                    s_stage * (tau - a) * tau / ((h - a) * h);
            } else {
                s = sb + (s_stage - sb) * tau / h;
            }
            acc += kWeights[i] * d0_retarded(kernel, h - tau) * s;
        }
        return 0.5 * h * acc;
    };

    auto field_at_grid = [&](std::size_t n) {
        const OscillatorState free = free_oscillation(kernel, start, dt * static_cast<double>(n));
        double dq = 0.0;
        for (std::size_t k = 0; k <= n; ++k) dq += history_weight(k, n) * dk[n - k] * src[k];
        return OscillatorState{free.q + history(n, 0), free.p + dt * dq / kernel.omega_c};
    };

    MeanFieldState state = init;
    state.t = grid.t_start;
    state.rho = hermitian_part(init.rho);
    const InvariantMonitor monitor(opts.tolerances, (state.rho * state.rho).trace().real());
    Recorder rec(m, steps / opts.output_every + 2);
    src.push_back(source(state.rho, state.t));
    rec.add(state);

    for (std::size_t n = 0; n < steps; ++n) {
        const double t = grid.time(n);
        const double base[3] = {history(n, 0), history(n, 1), history(n, 2)};
        auto stage = [&](const MatrixXc& rho, std::size_t half) {
            const double h = 0.5 * dt * static_cast<double>(half);
            const double ts = t + h;
            const double q = free_oscillation(kernel, start, ts - grid.t_start).q + base[half] +
                             local(n, h, source(rho, ts));
            MatrixXc hm = bare_hamiltonian(m, pulse, ts);
            hm += q * lam;
            return liouville(hm, rho);
        };
        const MatrixXc k1 = stage(state.rho, 0);
        const MatrixXc k2 = stage(state.rho + 0.5 * dt * k1, 1);
        const MatrixXc k3 = stage(state.rho + 0.5 * dt * k2, 1);
        const MatrixXc k4 = stage(state.rho + dt * k3, 2);
        state.rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        state.t = grid.time(n + 1);
        monitor.check(state.rho, state.t);
        src.push_back(source(state.rho, state.t));
        if ((n + 1) % opts.output_every == 0 || n + 1 == steps) {
            const OscillatorState f = field_at_grid(n + 1);
            state.q = f.q;
            state.p = f.p;
            rec.add(state);
        }
    }
    return rec.finish();
}

}  // namespace

std::vector<double> Trajectory::top_population() const {
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        out[i] = populations(static_cast<Eigen::Index>(i), populations.cols() - 1);
    return out;
}

double CavityDrive::scaled(double t) const {
    return pulse_field(force, t) / std::sqrt(static_cast<double>(n_molecules));
}

MeanFieldState ground_state(const MolecularModel& m, double t0) {
    MeanFieldState s;
    s.rho = MatrixXc::Zero(m.levels(), m.levels());
    s.rho(0, 0) = 1.0;
    s.t = t0;
    return s;
}

std::vector<double> history_weights(std::size_t intervals) {
    std::vector<double> w(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k) w[k] = history_weight(k, intervals);
    return w;
}

double hartree_field(std::span<const double> source_history, const PhotonKernel& k, double t, double dt) {
    if (!(dt > 0)) throw std::invalid_argument("hartree_field: dt must be > 0");
    if (t < 0) throw std::invalid_argument("hartree_field: t must be >= 0");
    const double steps = std::round(t / dt);
    if (std::abs(steps * dt - t) > 1e-9 * std::max(1.0, t))
        throw std::invalid_argument("hartree_field: t is not on the history grid");
    const auto n = static_cast<std::size_t>(steps);
    if (source_history.size() < n + 1)
        throw std::out_of_range("hartree_field: incomplete history, need " + std::to_string(n + 1) +
                                " samples, got " + std::to_string(source_history.size()));
    double acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j)
        acc += history_weight(j, n) * d0_retarded(k, dt * static_cast<double>(n - j)) * source_history[j];
    return dt * acc;
}

MatrixXc hartree_potential(std::span<const double> polarization_history, const PhotonKernel& k,
                           const MatrixXc& coupling, double t, double dt) {
    return hartree_field(polarization_history, k, t, dt) * coupling;
}

Trajectory propagate_meanfield(const MolecularModel& m, const CavityMode& cav, const DrivePulse& pulse,
                               const TimeGrid& grid, const MeanFieldState& init,
                               const PropagationOptions& opts) {
    validate_initial(m, init, opts.tolerances);
    if (opts.output_every == 0) throw std::invalid_argument("output_every must be >= 1");
    if (opts.cavity_drive && opts.cavity_drive->n_molecules < 1)
        throw std::invalid_argument("cavity drive needs n_molecules >= 1");
    const PhotonKernel kernel = make_photon_kernel(
        cav, opts.backend == Backend::memory ? KernelForm::memory : KernelForm::auxiliary);
    if (opts.backend == Backend::memory) {
        if (opts.coupling == CouplingForm::rwa)
            throw std::invalid_argument("memory backend supports the full coupling form only");
        return propagate_memory(m, kernel, pulse, grid, init, opts);
    }
    return propagate_auxiliary(m, kernel, pulse, grid, init, opts);
}

Trajectory bare_molecule_reference(const MolecularModel& m, const DrivePulse& pulse, const TimeGrid& grid,
                                   const MeanFieldState& init, std::size_t output_every) {
    MolecularModel bare = m;
    bare.coupling.setZero();
    PropagationOptions opts;
    opts.output_every = output_every;
    MeanFieldState start = init;
    start.q = start.p = 0.0;
    return propagate_meanfield(bare, CavityMode{1.0, 0.0}, pulse, grid, start, opts);
}

double meanfield_energy(const MolecularModel& m, const CavityMode& cav, const MeanFieldState& s) {
    const double molecular = (m.energies.cast<Complex>().asDiagonal() * s.rho).trace().real();
    const double field = 0.5 * cav.omega_c * (s.q * s.q + s.p * s.p);
    return molecular + field + s.q * (m.coupling * s.rho).trace().real();
}

}  // namespace polariton
