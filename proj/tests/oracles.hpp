#pragma once

// Test-only reference routes. Nothing here calls into the library's
// evaluation paths, so the checks that use these stay independent.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <algorithm>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "esr/detection_profiles.hpp"
#include "esr/position_observable.hpp"
#include "esr/states.hpp"

namespace esr::oracle {

/// phi_n(x), m = omega = hbar = 1, from raw physicists' Hermite polynomials
/// H_{n+1} = 2x H_n - 2n H_{n-1} and the explicit normalization. Fine for
/// n <= ~100 at moderate x; no overflow protection.
inline std::vector<double> raw_hermite_functions(std::size_t n_max, double x) {
    std::vector<long double> h(n_max + 1);
    h[0] = 1.0L;
    if (n_max >= 1) h[1] = 2.0L * x;
    for (std::size_t n = 1; n < n_max; ++n) {
        h[n + 1] = 2.0L * x * h[n] - 2.0L * static_cast<long double>(n) * h[n - 1];
    }
    std::vector<double> out(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const long double log_norm = 0.5L * (static_cast<long double>(n) * std::log(2.0L) +
                                             std::lgamma(static_cast<long double>(n) + 1.0L) +
                                             0.5L * std::log(std::numbers::pi_v<long double>));
        out[n] = static_cast<double>(h[n] * std::exp(-0.5L * x * x - log_norm));
    }
    return out;
}

/// Maclaurin series for erf.
inline double erf_series(double x) {
    long double term = x;  // (-1)^k x^(2k+1) / k!
    long double sum = 0.0L;
    for (int k = 0; k < 200; ++k) {
        const long double contribution = term / (2.0L * k + 1.0L);
        sum += contribution;
        if (std::abs(contribution) < 1e-22L) break;
        term *= -static_cast<long double>(x) * x / (k + 1.0L);
    }
    return static_cast<double>(2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum);
}

template <typename F>
double integrate(F f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

/// Matrix of int_a^b phi_m phi_n dq for m, n <= n_max (row-major), by
/// composite 20-point Gauss-Legendre on panels no wider than `panel`.
inline std::vector<double> overlap_matrix(std::size_t n_max, double a, double b, double panel = 0.25) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const std::size_t dim = n_max + 1;
    std::vector<double> g(dim * dim);
    if (!(b > a)) return g;
    const auto panels = static_cast<std::size_t>(std::ceil((b - a) / panel));
    const double h = (b - a) / static_cast<double>(panels);
    const auto &x = Rule::abscissa();
    const auto &w = Rule::weights();
    const auto accumulate = [&](double q, double weight) {
        const auto phi = raw_hermite_functions(n_max, q);
        for (std::size_t m = 0; m < dim; ++m) {
            const double wm = weight * phi[m];
            for (std::size_t n = m; n < dim; ++n) g[m * dim + n] += wm * phi[n];
        }
    };
    for (std::size_t k = 0; k < panels; ++k) {
        const double mid = a + (static_cast<double>(k) + 0.5) * h;
        // The tabulated rule stores non-negative abscissae only.
        for (std::size_t i = 0; i < x.size(); ++i) {
            accumulate(mid + 0.5 * h * x[i], 0.5 * h * w[i]);
            if (x[i] != 0.0) accumulate(mid - 0.5 * h * x[i], 0.5 * h * w[i]);
        }
    }
    for (std::size_t m = 0; m < dim; ++m)
        for (std::size_t n = 0; n < m; ++n) g[m * dim + n] = g[n * dim + m];
    return g;
}

/// <psi| G |psi> for a real symmetric matrix from overlap_matrix.
inline double quadratic_form(std::span<const std::complex<double>> c, const std::vector<double> &g) {
    const std::size_t dim = c.size();
    double sum = 0.0;
    for (std::size_t m = 0; m < dim; ++m)
        for (std::size_t n = 0; n < dim; ++n) sum += g[m * dim + n] * (std::conj(c[m]) * c[n]).real();
    return sum;
}

/// psi(q) for Fock coefficients, evaluated through raw_hermite_functions.
inline std::complex<double> wavefunction(std::span<const std::complex<double>> c, double q) {
    const auto phi = raw_hermite_functions(c.size() - 1, q);
    std::complex<double> sum{};
    for (std::size_t n = 0; n < c.size(); ++n) sum += c[n] * phi[n];
    return sum;
}

inline std::complex<double> random_complex(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    return {g(rng), g(rng)};
}

/// Random normalized state supported on levels 0..support.
inline FockVector random_state(std::mt19937_64 &rng, std::size_t support, std::size_t n_max) {
    std::vector<std::complex<double>> c(n_max + 1);
    double norm = 0.0;
    for (std::size_t n = 0; n <= support; ++n) {
        c[n] = random_complex(rng);
        norm += std::norm(c[n]);
    }
    for (auto &v : c) v /= std::sqrt(norm);
    return FockVector(std::move(c));
}

inline EnergyDetectionProfile random_energy_profile(std::mt19937_64 &rng, std::size_t n_max) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (rng() % 3) {
        case 0: return EnergyDetectionProfile::constant(u(rng));
        case 1: return EnergyDetectionProfile::geometric(u(rng), 0.5 + 0.5 * u(rng));
        default: {
            std::vector<std::pair<double, double>> knots;
            for (std::size_t n = 0; n <= n_max; n += 1 + rng() % 4) knots.emplace_back(n, u(rng));
            return EnergyDetectionProfile::table(std::move(knots));
        }
    }
}

inline PositionDetectionProfile random_position_profile(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (rng() % 3) {
        case 0: return PositionDetectionProfile::constant(u(rng));
        case 1: return PositionDetectionProfile::gaussian_window(u(rng), 4.0 * u(rng) - 2.0, 0.3 + 2.0 * u(rng));
        default: {
            std::vector<std::pair<double, double>> knots;
            double x = -6.0;
            while (x < 6.0) {
                knots.emplace_back(x, u(rng));
                x += 0.5 + 2.0 * u(rng);
            }
            return PositionDetectionProfile::table(std::move(knots));
        }
    }
}

/// 1-3 disjoint closed intervals inside [-span, span], separated by gaps.
inline std::vector<Interval> random_intervals(std::mt19937_64 &rng, double span = 8.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t count = 1 + rng() % 3;
    std::vector<double> cuts(2 * count);
    for (auto &c : cuts) c = -span + 2.0 * span * u(rng);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Interval> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back({cuts[2 * k], cuts[2 * k + 1]});
    return out;
}

}  // namespace esr::oracle
