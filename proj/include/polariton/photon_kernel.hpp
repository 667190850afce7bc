// photon_kernel.hpp — Retarded propagator of the scaled cavity displacement
//
// The cavity quadratures obey
//     dq/dt = omega_c p,
//     dp/dt = -omega_c q - 2 kappa p - F_ext(t) - s(t),
// so q(t) = int_0^t D0(t - t') [s(t') + F_ext(t')] dt' + free evolution of (q0, p0).

#pragma once

#include "polariton/model.hpp"

namespace polariton {

enum class KernelForm { memory, auxiliary };

struct PhotonKernel {
    double omega_c{1.0};
    double kappa{0.0};
    KernelForm form{KernelForm::auxiliary};

    // sqrt(omega_c^2 - kappa^2)
    double damped_frequency() const noexcept;
};

// Rejects omega_c <= 0, kappa < 0 and the overdamped regime kappa >= omega_c.
PhotonKernel make_photon_kernel(const CavityMode& cav, KernelForm form);

// D0(s) = -(omega_c / w) exp(-kappa s) sin(w s), w = damped_frequency();
// reduces to -sin(omega_c s) for kappa = 0. Throws for s < 0.
double d0_retarded(const PhotonKernel& k, double s);

struct OscillatorState {
    double q{0.0};
    double p{0.0};
};

// Unforced evolution of (q0, p0) after a lag s.
OscillatorState free_oscillation(const PhotonKernel& k, OscillatorState s0, double s) noexcept;

// One classical RK4 step with source and external force held fixed over dt.
OscillatorState step_auxiliary_oscillator(OscillatorState state, double source, double f_ext,
                                          const PhotonKernel& k, double dt);

// One RK4 step with a time-dependent drive; `drive(t)` returns source + F_ext.
template <typename Drive>
OscillatorState step_auxiliary_oscillator(OscillatorState state, Drive&& drive, double t,
                                          const PhotonKernel& k, double dt) {
    const double w = k.omega_c;
    const double g = 2.0 * k.kappa;
    auto rhs = [&](const OscillatorState& y, double f) {
        return OscillatorState{w * y.p, -w * y.q - g * y.p - f};
    };
    auto shifted = [](const OscillatorState& y, const OscillatorState& d, double c) {
        return OscillatorState{y.q + c * d.q, y.p + c * d.p};
    };
    const double f0 = drive(t);
    const double fh = drive(t + 0.5 * dt);
    const double f1 = drive(t + dt);
    const OscillatorState k1 = rhs(state, f0);
    const OscillatorState k2 = rhs(shifted(state, k1, 0.5 * dt), fh);
    const OscillatorState k3 = rhs(shifted(state, k2, 0.5 * dt), fh);
    const OscillatorState k4 = rhs(shifted(state, k3, dt), f1);
    return OscillatorState{state.q + dt / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q),
                           state.p + dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

}  // namespace polariton
