// special.hpp — Dawson function and the overflow-safe e^{-x^2} erfi(x)

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace polariton {

namespace detail {

// Rybicki's sampling-theorem representation with step h = 0.2; the aliasing
// error exp(-(pi/2h)^2) ~ 1e-27 is below long double resolution.
template <typename Real>
struct RybickiTable {
    static constexpr int kTerms = 20;
    static constexpr Real kStep = Real(0.2);
    std::array<Real, kTerms> coeff{};

    RybickiTable() {
        for (int i = 0; i < kTerms; ++i) {
            const Real a = (2 * i + 1) * kStep;
            coeff[i] = std::exp(-a * a);
        }
    }
};

template <typename Real>
Real dawson_series(Real x) {
    // D(x) = sum_k (-2x^2)^k x / (2k+1)!!
    const Real x2 = x * x;
    Real term = x;
    Real sum = x;
    for (int k = 1; k < 200; ++k) {
        term *= -Real(2) * x2 / Real(2 * k + 1);
        sum += term;
        if (std::abs(term) <= std::numeric_limits<Real>::epsilon() * std::abs(sum)) break;
    }
    return sum;
}

template <typename Real>
Real dawson_asymptotic(Real x) {
    // D(x) ~ 1/(2x) sum_k (2k-1)!! / (2x^2)^k
    const Real inv = Real(1) / (Real(2) * x * x);
    Real term = 1;
    Real sum = 1;
    for (int k = 1; k < 12; ++k) {
        term *= Real(2 * k - 1) * inv;
        sum += term;
    }
    return sum / (Real(2) * x);
}

}  // namespace detail

/// Dawson's integral D(x) = e^{-x^2} int_0^x e^{t^2} dt for real x.
template <typename Real>
Real dawson(Real x) {
    static const detail::RybickiTable<Real> table;
    const Real ax = std::abs(x);
    if (std::isnan(x)) return x;
    if (ax < Real(0.2)) return detail::dawson_series(x);
    if (ax > Real(1e6)) return detail::dawson_asymptotic(x);

    const Real h = detail::RybickiTable<Real>::kStep;
    const long long n0 = 2 * std::llround(Real(0.5) * ax / h);
    const Real xp = ax - static_cast<Real>(n0) * h;
    Real e1 = std::exp(Real(2) * xp * h);
    const Real e2 = e1 * e1;
    Real d1 = static_cast<Real>(n0 + 1);
    Real d2 = d1 - Real(2);
    Real sum = 0;
    for (int i = 0; i < detail::RybickiTable<Real>::kTerms; ++i) {
        sum += table.coeff[i] * (e1 / d1 + Real(1) / (d2 * e1));
        d1 += Real(2);
        d2 -= Real(2);
        e1 *= e2;
    }
    const Real value = std::exp(-xp * xp) * sum / std::sqrt(std::numbers::pi_v<Real>);
    return x < 0 ? -value : value;
}

/// e^{-x^2} erfi(x) = (2/sqrt(pi)) D(x); finite for all real x.
template <typename Real>
Real scaled_erfi(Real x) {
    return Real(2) / std::sqrt(std::numbers::pi_v<Real>) * dawson(x);
}

}  // namespace polariton
