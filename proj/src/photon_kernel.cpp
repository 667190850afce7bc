#include "polariton/photon_kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace polariton {

double PhotonKernel::damped_frequency() const noexcept {
    return std::sqrt(omega_c * omega_c - kappa * kappa);
}

PhotonKernel make_photon_kernel(const CavityMode& cav, KernelForm form) {
    const CavityMode checked = make_cavity(cav.omega_c, cav.kappa);
    if (!(checked.kappa < checked.omega_c))
        throw std::invalid_argument("cavity kappa must be below omega_c (underdamped regime)");
    return PhotonKernel{checked.omega_c, checked.kappa, form};
}

double d0_retarded(const PhotonKernel& k, double s) {
    if (s < 0) throw std::domain_error("d0_retarded: negative time lag violates retardation");
    if (k.kappa == 0.0) return -std::sin(k.omega_c * s);
    const double w = k.damped_frequency();
    return -(k.omega_c / w) * std::exp(-k.kappa * s) * std::sin(w * s);
}

OscillatorState free_oscillation(const PhotonKernel& k, OscillatorState s0, double s) noexcept {
    const double w = k.damped_frequency();
    const double decay = std::exp(-k.kappa * s);
    const double c = std::cos(w * s);
    const double sn = std::sin(w * s);
    // q(s) = e^{-ks}[q0 cos ws + (omega_c p0 + k q0)/w sin ws], p = q' / omega_c
    const double a = s0.q;
    const double b = (k.omega_c * s0.p + k.kappa * s0.q) / w;
    const double q = decay * (a * c + b * sn);
    const double dq = decay * (-k.kappa * (a * c + b * sn) + w * (-a * sn + b * c));
    return OscillatorState{q, dq / k.omega_c};
}

OscillatorState step_auxiliary_oscillator(OscillatorState state, double source, double f_ext,
                                          const PhotonKernel& k, double dt) {
    if (!(dt > 0)) throw std::invalid_argument("step_auxiliary_oscillator: dt must be > 0");
    const double f = source + f_ext;
    return step_auxiliary_oscillator(state, [f](double) { return f; }, 0.0, k, dt);
}

}  // namespace polariton
