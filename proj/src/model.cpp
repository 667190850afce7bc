#include "polariton/model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polariton {

namespace {

void require_hermitian(const MatrixXc& a, const char* name) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = i; j < a.cols(); ++j) {
            if (std::abs(a(i, j) - std::conj(a(j, i))) > kHermitianTolerance) {
                throw std::invalid_argument(std::string(name) + " is not Hermitian at entry (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
}

}  // namespace

MolecularModel make_molecule(VectorXd energies, MatrixXc coupling, MatrixXc dipole) {
    const Eigen::Index m = energies.size();
    if (m < 2) throw std::invalid_argument("molecule needs at least two levels");
    if (coupling.rows() != m || coupling.cols() != m)
        throw std::invalid_argument("coupling matrix must be M x M");
    if (dipole.rows() != m || dipole.cols() != m)
        throw std::invalid_argument("dipole matrix must be M x M");
    for (Eigen::Index i = 0; i < m; ++i) {
        if (!std::isfinite(energies[i])) throw std::invalid_argument("energies must be finite");
        if (i > 0 && energies[i] < energies[i - 1])
            throw std::invalid_argument("energies must be sorted non-decreasing");
    }
    if (!coupling.allFinite() || !dipole.allFinite())
        throw std::invalid_argument("coupling and dipole entries must be finite");
    require_hermitian(coupling, "coupling");
    require_hermitian(dipole, "dipole");
    return MolecularModel{std::move(energies), hermitian_part(coupling), hermitian_part(dipole)};
}

MolecularModel two_level(double omega0, double lam, double mu) {
    if (!(omega0 > 0)) throw std::invalid_argument("two_level: omega0 must be positive");
    VectorXd e(2);
    e << 0.0, omega0;
    MatrixXc c = MatrixXc::Zero(2, 2);
    c(0, 1) = c(1, 0) = lam;
    MatrixXc d = MatrixXc::Zero(2, 2);
    d(0, 1) = d(1, 0) = mu;
    return make_molecule(std::move(e), std::move(c), std::move(d));
}

CavityMode make_cavity(double omega_c, double kappa) {
    if (!(omega_c > 0)) throw std::invalid_argument("cavity omega_c must be > 0");
    if (!(kappa >= 0)) throw std::invalid_argument("cavity kappa must be >= 0");
    return CavityMode{omega_c, kappa};
}

DisorderSpec make_disorder(NoDisorder, double gamma) {
    if (!(gamma > 0)) throw std::invalid_argument("disorder gamma must be > 0");
    return DisorderSpec{NoDisorder{}, gamma};
}

DisorderSpec make_disorder(GaussianDisorder g, double gamma) {
    if (!(g.sigma > 0)) throw std::invalid_argument("gaussian disorder sigma must be > 0");
    if (!(gamma > 0)) throw std::invalid_argument("disorder gamma must be > 0");
    return DisorderSpec{g, gamma};
}

DisorderSpec make_disorder(SampledDisorder s, double gamma) {
    if (!(gamma > 0)) throw std::invalid_argument("disorder gamma must be > 0");
    if (s.frequencies.empty()) throw std::invalid_argument("sampled disorder needs at least one frequency");
    if (s.weights.empty()) {
        s.weights.assign(s.frequencies.size(), 1.0 / static_cast<double>(s.frequencies.size()));
    }
    if (s.weights.size() != s.frequencies.size())
        throw std::invalid_argument("sampled disorder weights and frequencies differ in length");
    for (double w : s.weights) {
        if (!(w >= 0)) throw std::invalid_argument("sampled disorder weights must be non-negative");
    }
    const double total = std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-10)
        throw std::invalid_argument("sampled disorder weights must sum to one");
    return DisorderSpec{std::move(s), gamma};
}

EnsembleSpec make_ensemble(int n_molecules, DisorderSpec disorder) {
    if (n_molecules < 1) throw std::invalid_argument("ensemble n_molecules must be >= 1");
    return EnsembleSpec{n_molecules, std::move(disorder)};
}

DrivePulse make_pulse(double e0, double omega, double t_center, double tau) {
    if (!(tau > 0)) throw std::invalid_argument("pulse tau must be > 0");
    if (!std::isfinite(e0) || !std::isfinite(omega) || !std::isfinite(t_center))
        throw std::invalid_argument("pulse parameters must be finite");
    return DrivePulse{e0, omega, t_center, tau};
}

std::size_t TimeGrid::steps() const noexcept {
    return static_cast<std::size_t>(std::ceil((t_end - t_start) / dt - 1e-9));
}

TimeGrid make_time_grid(double t_start, double t_end, double dt, std::size_t max_steps) {
    if (!(dt > 0)) throw std::invalid_argument("time grid dt must be > 0");
    if (!(t_end > t_start)) throw std::invalid_argument("time grid needs t_end > t_start");
    const double n = (t_end - t_start) / dt;
    if (!(n <= static_cast<double>(max_steps)))
        throw std::invalid_argument("time grid exceeds the maximum number of steps (" +
                                    std::to_string(max_steps) + ")");
    return TimeGrid{t_start, t_end, dt};
}

double pulse_field(const DrivePulse& p, double t) noexcept {
    if (p.e0 == 0.0) return 0.0;
    const double u = (t - p.t_center) / p.tau;
    return p.e0 * std::cos(p.omega * t) * std::exp(-0.5 * u * u);
}

MatrixXc bare_hamiltonian(const MolecularModel& m, const DrivePulse& p, double t) {
    MatrixXc h = -pulse_field(p, t) * m.dipole;
    h.diagonal() += m.energies.cast<Complex>();
    return h;
}

double rwa_coupling_from_field(double lam) noexcept { return lam / std::sqrt(2.0); }

double field_coupling_from_rwa(double lam_rwa) noexcept { return lam_rwa * std::sqrt(2.0); }

}  // namespace polariton
