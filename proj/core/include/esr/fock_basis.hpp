#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace esr {

/// Mass, angular frequency and reduced Planck constant of a 1-D oscillator.
/// All three are strictly positive and finite; the constructor enforces it.
class OscillatorParams {
public:
    OscillatorParams() = default;
    OscillatorParams(double mass, double angular_frequency, double hbar);

    double mass() const noexcept { return mass_; }
    double angular_frequency() const noexcept { return omega_; }
    double hbar() const noexcept { return hbar_; }

    /// sqrt(hbar / (m omega)).
    double characteristic_length() const noexcept;
    /// Dimensionless coordinate x = q sqrt(m omega / hbar).
    double scaled(double q) const noexcept { return q / characteristic_length(); }

    friend bool operator==(const OscillatorParams &, const OscillatorParams &) = default;

private:
    double mass_ = 1.0;
    double omega_ = 1.0;
    double hbar_ = 1.0;
};

/// E_n = hbar omega (n + 1/2).
double energy_eigenvalue(std::size_t n, const OscillatorParams &params) noexcept;

/// Normalized eigenfunction phi_n(q), evaluated with the three-term recurrence
/// on normalized functions so the intermediate values stay bounded.
double hermite_function(std::size_t n, double q, const OscillatorParams &params);

/// phi_0(q) .. phi_{n_max}(q) in one recurrence sweep, written into `out`
/// (resized to n_max + 1).
void hermite_functions(std::size_t n_max, double q, const OscillatorParams &params,
                       std::vector<double> &out);

/// Upper bound on |phi_n(q)| valid for every n (Cramer's inequality).
double hermite_function_bound(const OscillatorParams &params) noexcept;

/// Uniform grid q_min = q_0 < q_1 < ... < q_{N-1} = q_max.
class Grid {
public:
    Grid(double q_min, double q_max, std::size_t point_count);

    double q_min() const noexcept { return q_min_; }
    double q_max() const noexcept { return q_max_; }
    std::size_t point_count() const noexcept { return count_; }
    double spacing() const noexcept { return spacing_; }
    double node(std::size_t i) const noexcept;
    std::vector<double> nodes() const;

    friend bool operator==(const Grid &, const Grid &) = default;

private:
    double q_min_;
    double q_max_;
    std::size_t count_;
    double spacing_;
};

Grid build_grid(double q_min, double q_max, std::size_t point_count);

inline constexpr std::size_t kDefaultGridPoints = 4001;

/// Symmetric grid reaching 1.2 sqrt(2 n_max + 1) + 6 characteristic lengths
/// on each side of the origin.
Grid default_grid(const OscillatorParams &params, std::size_t n_max,
                  std::size_t point_count = kDefaultGridPoints);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t order() const noexcept { return nodes.size(); }
};

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
QuadratureRule gauss_hermite_rule(std::size_t order);

enum class IntegrationMethod { Trapezoid, Simpson };

double integrate_grid(std::span<const double> samples, const Grid &grid,
                      IntegrationMethod method = IntegrationMethod::Trapezoid);
std::complex<double> integrate_grid(std::span<const std::complex<double>> samples, const Grid &grid,
                                    IntegrationMethod method = IntegrationMethod::Trapezoid);

/// Integral over [a, b] (clipped to the grid) of the piecewise degree-7
/// interpolant through the samples, built on an 8-point stencil around each
/// cell. Endpoints may fall anywhere inside a cell; the result is additive
/// over adjacent intervals.
double integrate_interval(std::span<const double> samples, const Grid &grid, double a, double b);

}  // namespace esr
