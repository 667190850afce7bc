#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "polariton/photon_kernel.hpp"

using namespace polariton;

TEST_CASE("kernel construction rejects the overdamped regime") {
    CHECK_THROWS_AS(make_photon_kernel(CavityMode{1.0, 1.0}, KernelForm::memory), std::invalid_argument);
    CHECK_THROWS_AS(make_photon_kernel(CavityMode{1.0, -0.1}, KernelForm::memory), std::invalid_argument);
    CHECK_THROWS_AS(make_photon_kernel(CavityMode{0.0, 0.0}, KernelForm::memory), std::invalid_argument);
    const PhotonKernel k = make_photon_kernel(CavityMode{1.0, 0.6}, KernelForm::auxiliary);
    CHECK(k.damped_frequency() == doctest::Approx(0.8));
    CHECK_THROWS_AS(d0_retarded(k, -1e-3), std::domain_error);
    CHECK(d0_retarded(k, 0.0) == 0.0);
}

TEST_CASE("undamped kernel is -sin") {
    const PhotonKernel k = make_photon_kernel(CavityMode{1.3, 0.0}, KernelForm::memory);
    for (double s : {0.1, 1.0, 7.7, 123.4}) CHECK(d0_retarded(k, s) == doctest::Approx(-std::sin(1.3 * s)).epsilon(1e-14));
}

// A unit impulse in the source kicks p by -1; the oscillator's response is D0.
TEST_CASE("kernel equals the impulse response of the oscillator") {
    for (double kappa : {0.0, 0.05, 0.4}) {
        CAPTURE(kappa);
        const PhotonKernel k = make_photon_kernel(CavityMode{1.0, kappa}, KernelForm::auxiliary);
        const double dt = 1e-3;
        OscillatorState s{0.0, -1.0};
        double max_err = 0.0;
        for (int n = 1; n <= 20000; ++n) {
            s = step_auxiliary_oscillator(s, 0.0, 0.0, k, dt);
            max_err = std::max(max_err, std::abs(s.q - d0_retarded(k, n * dt)));
        }
        CHECK(max_err < 1e-11);
    }
}

TEST_CASE("free oscillation matches RK4 and the closed-form damped oscillator") {
    const PhotonKernel k = make_photon_kernel(CavityMode{1.0, 0.1}, KernelForm::auxiliary);
    OscillatorState s{0.7, -0.2};
    const OscillatorState s0 = s;
    const double dt = 0.01;
    for (int n = 1; n <= 3000; ++n) s = step_auxiliary_oscillator(s, 0.0, 0.0, k, dt);
    const OscillatorState exact = free_oscillation(k, s0, 30.0);
    CHECK(s.q == doctest::Approx(exact.q).epsilon(1e-9));
    CHECK(s.p == doctest::Approx(exact.p).epsilon(1e-9));
}

TEST_CASE("fixed point and harmonic motion") {
    const PhotonKernel k = make_photon_kernel(CavityMode{2.0, 0.0}, KernelForm::auxiliary);
    const OscillatorState z = step_auxiliary_oscillator(OscillatorState{}, 0.0, 0.0, k, 0.1);
    CHECK(z.q == 0.0);
    CHECK(z.p == 0.0);
    CHECK_THROWS_AS(step_auxiliary_oscillator(OscillatorState{}, 0.0, 0.0, k, 0.0), std::invalid_argument);

    // RK4 truncates the rotation by x = omega dt after x^4/24 (q) and x^3/6 (p).
    const double dt = 0.005;
    const double x = 2.0 * dt;
    OscillatorState s = step_auxiliary_oscillator(OscillatorState{1.0, 0.0}, 0.0, 0.0, k, dt);
    CHECK(std::abs(s.q - std::cos(x)) == doctest::Approx(std::pow(x, 6) / 720).epsilon(1e-3));
    CHECK(std::abs(s.p + std::sin(x)) == doctest::Approx(std::pow(x, 5) / 120).epsilon(1e-3));
    for (int n = 1; n < 1000; ++n) s = step_auxiliary_oscillator(s, 0.0, 0.0, k, dt);
    CHECK(std::abs(s.q - std::cos(1000 * x)) <= 1000 * std::pow(x, 5) / 120);
}

TEST_CASE("undamped oscillator conserves q^2 + p^2 over 1000 periods") {
    const double wc = 1.0;
    const PhotonKernel k = make_photon_kernel(CavityMode{wc, 0.0}, KernelForm::auxiliary);
    const double dt = 0.01 / wc;
    const auto steps = static_cast<long>(std::ceil(1000.0 * 2.0 * std::numbers::pi / (wc * dt)));
    OscillatorState s{1.0, 0.0};
    double worst = 0.0;
    for (long n = 0; n < steps; ++n) {
        s = step_auxiliary_oscillator(s, 0.0, 0.0, k, dt);
        worst = std::max(worst, std::abs(s.q * s.q + s.p * s.p - 1.0));
    }
    CHECK(worst <= 1e-8);
}

// For q(0) = 1, p(0) = 0 the maxima of q lie exactly on exp(-kappa t).
TEST_CASE("damped envelope decays as exp(-kappa t)") {
    const double kappa = 0.05;
    const PhotonKernel k = make_photon_kernel(CavityMode{1.0, kappa}, KernelForm::auxiliary);
    const double dt = 0.01;
    const double period = 2.0 * std::numbers::pi / k.damped_frequency();
    const int steps = static_cast<int>(5.0 * period / dt) + 2;
    std::vector<double> q{1.0};
    OscillatorState s{1.0, 0.0};
    for (int n = 0; n < steps; ++n) {
        s = step_auxiliary_oscillator(s, 0.0, 0.0, k, dt);
        q.push_back(s.q);
    }
    int peaks = 0;
    for (std::size_t i = 1; i + 1 < q.size(); ++i) {
        if (!(q[i] > q[i - 1] && q[i] >= q[i + 1])) continue;
        const double curv = q[i - 1] - 2.0 * q[i] + q[i + 1];
        const double off = 0.5 * (q[i - 1] - q[i + 1]) / curv;
        const double t = (static_cast<double>(i) + off) * dt;
        const double height = q[i] - 0.25 * (q[i - 1] - q[i + 1]) * off;
        CHECK(height == doctest::Approx(std::exp(-kappa * t)).epsilon(0.01));
        ++peaks;
    }
    CHECK(peaks == 5);
}

TEST_CASE("time-dependent drive reduces to the constant-source step") {
    const PhotonKernel k = make_photon_kernel(CavityMode{1.0, 0.02}, KernelForm::auxiliary);
    const OscillatorState a = step_auxiliary_oscillator(OscillatorState{0.3, 0.1}, 0.25, 0.5, k, 0.01);
    const OscillatorState b =
        step_auxiliary_oscillator(OscillatorState{0.3, 0.1}, [](double) { return 0.75; }, 0.0, k, 0.01);
    CHECK(a.q == doctest::Approx(b.q).epsilon(1e-15));
    CHECK(a.p == doctest::Approx(b.p).epsilon(1e-15));
}
