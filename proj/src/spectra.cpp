#include "polariton/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polariton/special.hpp"

namespace polariton {

namespace {

const Complex kI{0.0, 1.0};

double gaussian_density(double w, double center, double sigma) {
    const double u = (w - center) / sigma;
    return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

// int_a^b g(w') / (w - w' + i gamma) dw' for the Gaussian density g with the
// pole part subtracted: g(w') = g(w) + [g(w') - g(w)], the first piece
// integrated analytically. The difference uses expm1 so that it keeps full
// relative accuracy next to w' = w.
Complex subtracted_pole_integral(double center, double sigma, double omega, double gamma) {
    using Integrator = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double a = center - 8.0 * sigma;
    const double b = center + 8.0 * sigma;
    const double u0 = (omega - center) / sigma;
    const double g0 = gaussian_density(omega, center, sigma);
    const Complex z0(omega, gamma);
    auto difference = [&](double w) {
        const double u = (w - center) / sigma;
        if (g0 == 0.0) return gaussian_density(w, center, sigma);
        return g0 * std::expm1(-0.5 * (u - u0) * (u + u0));
    };
    auto regular = [&](double w) { return Complex(difference(w)) / (z0 - w); };

    constexpr unsigned kDepth = 15;
    constexpr double kTol = 1e-10;
    auto integrate = [&](double lo, double hi) { return Integrator::integrate(regular, lo, hi, kDepth, kTol); };
    const Complex body = (omega > a && omega < b) ? integrate(a, omega) + integrate(omega, b) : integrate(a, b);
    // int_a^b dw' / (w - w' + i gamma) = log(w - a + i gamma) - log(w - b + i gamma)
    const Complex pole = std::log(z0 - a) - std::log(z0 - b);
    return body + g0 * pole;
}

Spectrum assemble(const CavityMode& cav, const FrequencyGrid& grid, auto&& polarization) {
    Spectrum s;
    const std::size_t n = grid.n_points;
    s.omegas.resize(n);
    s.F_R.resize(n);
    s.Pi_R.resize(n);
    s.A.resize(n);
    s.T.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = grid.omega(i);
        const Complex pi = polarization(w);
        const Complex f = dyson_photon(bare_photon_gf(w, cav, grid.eta), pi);
        s.omegas[i] = w;
        s.Pi_R[i] = pi;
        s.F_R[i] = f;
        s.A[i] = -f.imag() / std::numbers::pi;
        s.T[i] = std::norm(f);
    }
    s.peaks = find_peaks(s.omegas, s.A);
    s.splitting = peak_splitting(s.peaks);
    const double min_width = 3.0 * grid.spacing();
    s.under_resolved = std::any_of(s.peaks.begin(), s.peaks.end(),
                                   [&](const Peak& p) { return p.fwhm < min_width; });
    return s;
}

}  // namespace

FrequencyGrid make_frequency_grid(double omega_min, double omega_max, std::size_t n_points, double eta) {
    if (!(omega_max > omega_min)) throw std::invalid_argument("frequency grid needs omega_max > omega_min");
    if (n_points < 2) throw std::invalid_argument("frequency grid needs n_points >= 2");
    if (!(eta > 0)) throw std::invalid_argument("frequency grid eta must be > 0");
    return FrequencyGrid{omega_min, omega_max, n_points, eta};
}

Complex bare_particle_gf(double omega, double omega0, double eta) {
    if (!(eta > 0)) throw std::invalid_argument("bare_particle_gf: eta must be > 0");
    return 1.0 / Complex(omega - omega0, eta);
}

Complex bare_photon_gf(double omega, const CavityMode& cav, double eta) {
    return 1.0 / Complex(omega - cav.omega_c, cav.kappa + eta);
}

Complex polarization_bubble(const MolecularModel& m, double omega, double eta) {
    Complex pi = 0.0;
    for (Eigen::Index i = 1; i < m.levels(); ++i) {
        const double weight = std::norm(m.coupling(i, 0));
        if (weight == 0.0) continue;
        pi += weight * bare_particle_gf(omega, m.energies[i] - m.energies[0], eta);
    }
    return pi;
}

Complex dyson_photon(Complex f0, Complex pi) {
    if (f0 == Complex(0.0)) throw std::domain_error("dyson_photon: bare propagator is zero");
    return 1.0 / (1.0 / f0 - pi);
}

std::array<Complex, 2> rabi_poles(double omega0, double omega_c, double lam) {
    if (!(lam >= 0)) throw std::invalid_argument("rabi_poles: lam must be >= 0");
    const double mean = 0.5 * (omega0 + omega_c);
    const double half = 0.5 * (omega0 - omega_c);
    const double root = std::hypot(half, lam);
    return {Complex(mean - root), Complex(mean + root)};
}

Complex disorder_polarization_gaussian(double sigma, double omega0, double lam, double omega) {
    if (!(sigma > 0)) throw std::invalid_argument("disorder_polarization_gaussian: sigma must be > 0");
    const double x = (omega - omega0) / (std::sqrt(2.0) * sigma);
    const double prefactor = lam * lam * std::sqrt(std::numbers::pi / 2.0) / sigma;
    return prefactor * Complex(scaled_erfi(x), -std::exp(-x * x));
}

Complex disorder_polarization_quadrature(const DisorderSpec& d, double omega0, double lam, double omega) {
    if (!(d.gamma > 0)) throw std::invalid_argument("disorder gamma must be > 0");
    const double lam2 = lam * lam;
    if (std::holds_alternative<NoDisorder>(d.kind)) return lam2 / Complex(omega - omega0, d.gamma);
    if (const auto* s = std::get_if<SampledDisorder>(&d.kind)) {
        if (s->frequencies.empty() || s->weights.size() != s->frequencies.size())
            throw std::invalid_argument("sampled disorder is malformed");
        double total = 0.0;
        Complex acc = 0.0;
        for (std::size_t i = 0; i < s->frequencies.size(); ++i) {
            total += s->weights[i];
            acc += s->weights[i] / Complex(omega - s->frequencies[i], d.gamma);
        }
        if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("sampled disorder is not normalized");
        return lam2 * acc;
    }
    const double sigma = std::get<GaussianDisorder>(d.kind).sigma;
    if (!(sigma > 0)) throw std::invalid_argument("gaussian disorder sigma must be > 0");
    return lam2 * subtracted_pole_integral(omega0, sigma, omega, d.gamma);
}

std::vector<Peak> find_peaks(std::span<const double> omegas, std::span<const double> values,
                             double rel_threshold) {
    if (omegas.size() != values.size()) throw std::invalid_argument("find_peaks: size mismatch");
    std::vector<Peak> peaks;
    const std::size_t n = values.size();
    if (n < 3) return peaks;
    const double top = *std::max_element(values.begin(), values.end());
    if (!(top > 0)) return peaks;
    const double step = omegas[1] - omegas[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double l = values[i - 1], c = values[i], r = values[i + 1];
        if (!(c > l && c >= r) || c < rel_threshold * top) continue;
        const double curvature = l - 2.0 * c + r;
        const double offset = curvature != 0.0 ? 0.5 * (l - r) / curvature : 0.0;
        Peak p;
        p.omega = omegas[i] + offset * step;
        p.height = c - 0.25 * (l - r) * offset;

        const double half = 0.5 * p.height;
        std::size_t lo = i;
        while (lo > 0 && values[lo] > half) --lo;
        std::size_t hi = i;
        while (hi + 1 < n && values[hi] > half) ++hi;
        auto crossing = [&](std::size_t inside, std::size_t outside) {
            const double vi = values[inside], vo = values[outside];
            if (vi == vo) return omegas[outside];
            return omegas[inside] + (half - vi) / (vo - vi) * (omegas[outside] - omegas[inside]);
        };
        const double left = values[lo] <= half ? crossing(lo + 1, lo) : omegas[lo];
        const double right = values[hi] <= half ? crossing(hi - 1, hi) : omegas[hi];
        p.fwhm = right - left;
        peaks.push_back(p);
    }
    return peaks;
}

std::optional<double> peak_splitting(std::span<const Peak> peaks) {
    if (peaks.size() < 2) return std::nullopt;
    std::vector<Peak> sorted(peaks.begin(), peaks.end());
    std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end(),
                      [](const Peak& a, const Peak& b) { return a.height > b.height; });
    return std::abs(sorted[0].omega - sorted[1].omega);
}

Spectrum transmission_spectrum(const MolecularModel& m, const CavityMode& cav, const FrequencyGrid& grid) {
    return assemble(cav, grid, [&](double w) { return polarization_bubble(m, w, grid.eta); });
}

Spectrum transmission_spectrum(const DisorderSpec& d, double omega0, double lam, const CavityMode& cav,
                               const FrequencyGrid& grid, DisorderMethod method) {
    if (const auto* g = std::get_if<GaussianDisorder>(&d.kind); g && method == DisorderMethod::closed_form) {
        const double sigma = g->sigma;
        return assemble(cav, grid, [&](double w) { return disorder_polarization_gaussian(sigma, omega0, lam, w); });
    }
    return assemble(cav, grid, [&](double w) { return disorder_polarization_quadrature(d, omega0, lam, w); });
}

}  // namespace polariton
