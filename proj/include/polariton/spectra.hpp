// spectra.hpp — Retarded photon Green's function with the particle-hole
// bubble, cavity decay and inhomogeneous (disorder-averaged) broadening.
//
// Frequency-domain quantities use the rotating-wave photon propagator
//     F0(w) = 1 / (w - omega_c + i kappa + i eta),
//     F(w)  = 1 / (F0(w)^{-1} - Pi(w)),
// with lambda the rotating-wave coupling (Rabi splitting 2 lambda at resonance).

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polariton/model.hpp"

namespace polariton {

struct FrequencyGrid {
    double omega_min{0.0};
    double omega_max{2.0};
    std::size_t n_points{1001};
    double eta{1e-4};

    double spacing() const noexcept { return (omega_max - omega_min) / static_cast<double>(n_points - 1); }
    double omega(std::size_t i) const noexcept { return omega_min + spacing() * static_cast<double>(i); }
};

FrequencyGrid make_frequency_grid(double omega_min, double omega_max, std::size_t n_points, double eta);

// 1/(w - omega0 + i eta)
Complex bare_particle_gf(double omega, double omega0, double eta);

// 1/(w - omega_c + i kappa + i eta)
Complex bare_photon_gf(double omega, const CavityMode& cav, double eta);

// sum_{i >= 1} |lambda_{i0}|^2 / (w - (E_i - E_0) + i eta), molecule starting in level 0.
Complex polarization_bubble(const MolecularModel& m, double omega, double eta);

// 1/(F0^{-1} - Pi). Throws std::domain_error when F0 = 0.
Complex dyson_photon(Complex f0, Complex pi);

// Roots of (w - omega0)(w - omega_c) - lam^2 = 0 sorted by real part.
std::array<Complex, 2> rabi_poles(double omega0, double omega_c, double lam);

// lam^2 sigma-averaged polarization in closed form (gamma -> 0+):
// lam^2 sqrt(pi/2)/sigma [e^{-x^2} erfi(x) - i e^{-x^2}], x = (w - omega0)/(sqrt 2 sigma).
Complex disorder_polarization_gaussian(double sigma, double omega0, double lam, double omega);

// int dw' rho(w') lam^2 / (w - w' + i gamma) by adaptive Gauss-Kronrod on
// omega0 +- 8 sigma (Gaussian), exact sums for samples, a single pole without disorder.
Complex disorder_polarization_quadrature(const DisorderSpec& d, double omega0, double lam, double omega);

struct Peak {
    double omega{0.0};
    double height{0.0};
    double fwhm{0.0};
};

// Local maxima above rel_threshold * global max, refined by a parabola through
// the three neighbouring samples. Sorted by frequency.
std::vector<Peak> find_peaks(std::span<const double> omegas, std::span<const double> values,
                             double rel_threshold = 0.01);

// Distance between the two highest peaks; empty with fewer than two peaks.
std::optional<double> peak_splitting(std::span<const Peak> peaks);

struct Spectrum {
    std::vector<double> omegas;
    std::vector<Complex> F_R;
    std::vector<Complex> Pi_R;
    std::vector<double> A;  // -Im F_R / pi
    std::vector<double> T;  // |F_R|^2
    std::vector<Peak> peaks;
    std::optional<double> splitting;
    bool under_resolved{false};  // some peak narrower than three grid spacings
};

// Clean ensemble: bubble polarization of `m` (coupling read as rotating-wave lambda).
Spectrum transmission_spectrum(const MolecularModel& m, const CavityMode& cav, const FrequencyGrid& grid);

enum class DisorderMethod { closed_form, quadrature };

// Disorder-averaged two-level ensemble. The closed form applies to Gaussian
// disorder only; other kinds always use quadrature.
Spectrum transmission_spectrum(const DisorderSpec& d, double omega0, double lam, const CavityMode& cav,
                               const FrequencyGrid& grid,
                               DisorderMethod method = DisorderMethod::closed_form);

}  // namespace polariton
