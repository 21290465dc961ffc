#include "esr/fock_basis.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"

#include "esr/error.hpp"
#include "oracles.hpp"

using namespace esr;

namespace {

std::vector<double> sampled(const Grid &grid, auto f) {
    std::vector<double> out(grid.point_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.node(i));
    return out;
}

}  // namespace

TEST(EnergyEigenvalue, spectrum) {
    const OscillatorParams unit;
    EXPECT_DOUBLE_EQ(energy_eigenvalue(0, unit), 0.5);
    EXPECT_DOUBLE_EQ(energy_eigenvalue(3, unit), 3.5);
    EXPECT_DOUBLE_EQ(energy_eigenvalue(0, OscillatorParams(1.0, 3.0, 2.0)), 3.0);
}

TEST(EnergyEigenvalue, spacing_is_hbar_omega) {
    const OscillatorParams params(0.7, 2.3, 1.9);
    for (std::size_t n = 0; n < 200; ++n) {
        EXPECT_NEAR(energy_eigenvalue(n + 1, params) - energy_eigenvalue(n, params), 2.3 * 1.9, 1e-12 * (n + 1));
    }
}

TEST(OscillatorParams, rejects_non_positive) {
    EXPECT_THROW(OscillatorParams(0.0, 1.0, 1.0), Error);
    EXPECT_THROW(OscillatorParams(1.0, -1.0, 1.0), Error);
    EXPECT_THROW(OscillatorParams(1.0, 1.0, NAN), Error);
}

TEST(HermiteFunction, known_values) {
    const OscillatorParams unit;
    EXPECT_NEAR(hermite_function(0, 0.0, unit), std::pow(std::numbers::pi, -0.25), 1e-15);
    EXPECT_NEAR(hermite_function(0, 0.0, unit), 0.751125544464942, 1e-14);
    EXPECT_EQ(hermite_function(1, 0.0, unit), 0.0);
    EXPECT_EQ(hermite_function(1, 0.0, OscillatorParams(2.0, 5.0, 0.3)), 0.0);
    EXPECT_NEAR(hermite_function(2, 0.0, unit), -0.531125966013598, 1e-14);
}

TEST(HermiteFunction, matches_raw_polynomial_route) {
    const OscillatorParams unit;
    for (double x : {-7.5, -2.0, -0.3, 0.0, 1.1, 4.0, 9.0}) {
        const auto reference = oracle::raw_hermite_functions(60, x);
        std::vector<double> values;
        hermite_functions(60, x, unit, values);
        for (std::size_t n = 0; n <= 60; ++n) EXPECT_NEAR(values[n], reference[n], 1e-12) << "n=" << n << " x=" << x;
    }
}

TEST(HermiteFunction, scales_with_characteristic_length) {
    const OscillatorParams params(2.0, 3.0, 1.5);  // x_c = 0.5
    const double xc = params.characteristic_length();
    EXPECT_DOUBLE_EQ(xc, 0.5);
    for (std::size_t n : {0u, 1u, 5u}) {
        EXPECT_NEAR(hermite_function(n, 0.8, params), hermite_function(n, 1.6, OscillatorParams{}) / std::sqrt(xc),
                    1e-14);
    }
}

TEST(HermiteFunction, stable_to_level_200) {
    const OscillatorParams unit;
    const Grid grid = default_grid(unit, 200, 6001);
    const double bound = hermite_function_bound(unit);
    std::vector<double> values;
    for (std::size_t i = 0; i < grid.point_count(); ++i) {
        hermite_functions(200, grid.node(i), unit, values);
        for (double v : values) {
            ASSERT_TRUE(std::isfinite(v));
            ASSERT_LE(std::abs(v), bound);
        }
    }
}

TEST(Grid, construction) {
    const Grid g = build_grid(-10.0, 10.0, 2001);
    EXPECT_DOUBLE_EQ(g.spacing(), 0.01);
    const Grid small = build_grid(0.0, 1.0, 3);
    EXPECT_EQ(small.nodes(), (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(g.node(1000), 0.0);
    for (std::size_t i = 0; i < g.point_count(); ++i) EXPECT_EQ(g.node(i), -g.node(g.point_count() - 1 - i));
}

TEST(Grid, invalid_range) {
    try {
        build_grid(1.0, -1.0, 5);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidRange);
    }
    EXPECT_THROW(build_grid(0.0, 0.0, 5), Error);
    EXPECT_THROW(build_grid(0.0, 1.0, 2), Error);
}

TEST(Grid, default_extent) {
    const Grid g = default_grid(OscillatorParams{}, 64);
    EXPECT_EQ(g.point_count(), kDefaultGridPoints);
    EXPECT_NEAR(g.q_max(), 1.2 * std::sqrt(129.0) + 6.0, 1e-12);
    EXPECT_EQ(g.q_min(), -g.q_max());
}

TEST(IntegrateGrid, constant_and_gaussian) {
    const Grid unit = build_grid(0.0, 1.0, 101);
    const std::vector<double> ones(101, 1.0);
    EXPECT_NEAR(integrate_grid(ones, unit), 1.0, 1e-15);
    EXPECT_NEAR(integrate_grid(ones, unit, IntegrationMethod::Simpson), 1.0, 1e-15);

    const Grid grid = build_grid(-10.0, 10.0, 2001);
    const OscillatorParams params;
    const auto density = sampled(grid, [&](double q) { return std::pow(hermite_function(0, q, params), 2); });
    // int exp(-q^2) dq = sqrt(pi), so |phi_0|^2 integrates to 1.
    EXPECT_NEAR(integrate_grid(density, grid), 1.0, 1e-10);
    EXPECT_NEAR(integrate_grid(density, grid, IntegrationMethod::Simpson), 1.0, 1e-10);

    const auto odd = sampled(grid, [&](double q) { return q * std::pow(hermite_function(0, q, params), 2); });
    EXPECT_NEAR(integrate_grid(odd, grid), 0.0, 1e-12);
}

TEST(IntegrateGrid, simpson_even_point_count) {
    const Grid grid = build_grid(0.0, 1.0, 8);
    const auto cubic = sampled(grid, [](double q) { return q * q * q; });
    EXPECT_NEAR(integrate_grid(cubic, grid, IntegrationMethod::Simpson), 0.25, 1e-15);
}

TEST(IntegrateGrid, length_mismatch) {
    const Grid grid = build_grid(0.0, 1.0, 11);
    const std::vector<double> wrong(10, 1.0);
    try {
        integrate_grid(wrong, grid);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
}

TEST(IntegrateGrid, orthonormality_to_level_30) {
    const OscillatorParams params(1.3, 0.7, 1.1);
    const double xc = params.characteristic_length();
    const double extent = (std::sqrt(2.0 * 30 + 1.0) + 6.0) * xc;
    const Grid grid = build_grid(-extent, extent, 4001);
    std::vector<std::vector<double>> phi(31, std::vector<double>(grid.point_count()));
    std::vector<double> values;
    for (std::size_t i = 0; i < grid.point_count(); ++i) {
        hermite_functions(30, grid.node(i), params, values);
        for (std::size_t n = 0; n <= 30; ++n) phi[n][i] = values[n];
    }
    std::vector<double> product(grid.point_count());
    for (std::size_t m = 0; m <= 30; ++m) {
        for (std::size_t n = 0; n <= m; ++n) {
            for (std::size_t i = 0; i < product.size(); ++i) product[i] = phi[m][i] * phi[n][i];
            EXPECT_NEAR(integrate_grid(product, grid), m == n ? 1.0 : 0.0, 1e-8) << m << "," << n;
        }
    }
}

TEST(IntegrateInterval, exact_for_degree_seven_with_offgrid_endpoints) {
    const Grid grid = build_grid(-1.0, 2.0, 31);
    // f(q) = sum_k c_k q^k, k = 0..7
    const std::array<double, 8> c{1.0, 1.0, -2.0, 0.5, 0.3, -0.2, 0.1, -0.05};
    const auto f = sampled(grid, [&](double q) {
        double v = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) v = v * q + c[k];
        return v;
    });
    const auto antiderivative = [&](double q) {
        double v = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) v = v * q + c[k] / static_cast<double>(k + 1);
        return v * q;
    };
    EXPECT_NEAR(integrate_interval(f, grid, -0.437, 1.213), antiderivative(1.213) - antiderivative(-0.437), 1e-13);
    EXPECT_NEAR(integrate_interval(f, grid, -0.98, -0.93), antiderivative(-0.93) - antiderivative(-0.98), 1e-14);
    EXPECT_NEAR(integrate_interval(f, grid, 1.96, 1.99), antiderivative(1.99) - antiderivative(1.96), 1e-14);
    EXPECT_NEAR(integrate_interval(f, grid, -5.0, 5.0), antiderivative(2.0) - antiderivative(-1.0), 1e-13);
    EXPECT_EQ(integrate_interval(f, grid, 3.0, 4.0), 0.0);
    EXPECT_EQ(integrate_interval(f, grid, 0.5, 0.5), 0.0);
}

TEST(IntegrateInterval, small_grids) {
    const Grid grid = build_grid(0.0, 1.0, 3);
    const std::vector<double> f{0.0, 0.25, 1.0};  // q^2
    EXPECT_NEAR(integrate_interval(f, grid, 0.1, 0.9), (0.729 - 0.001) / 3.0, 1e-15);
}

TEST(IntegrateInterval, gaussian_probability_matches_erf) {
    const Grid grid = default_grid(OscillatorParams{}, 64);
    const auto density = sampled(grid, [](double q) { return std::exp(-q * q) / std::sqrt(std::numbers::pi); });
    EXPECT_NEAR(integrate_interval(density, grid, -1.0, 1.0), oracle::erf_series(1.0), 1e-9);
    // Additive over adjacent pieces.
    const double whole = integrate_interval(density, grid, -0.77, 1.31);
    const double pieces = integrate_interval(density, grid, -0.77, 0.123) + integrate_interval(density, grid, 0.123, 1.31);
    EXPECT_NEAR(whole, pieces, 1e-15);
}

TEST(GaussHermite, integrates_polynomials_exactly) {
    const QuadratureRule rule = gauss_hermite_rule(20);
    ASSERT_EQ(rule.order(), 20u);
    for (double w : rule.weights) EXPECT_GT(w, 0.0);
    for (std::size_t i = 1; i < rule.order(); ++i) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
    // int x^(2k) exp(-x^2) dx = Gamma(k + 1/2)
    for (int k = 0; k < 20; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.order(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
        EXPECT_NEAR(sum / std::tgamma(k + 0.5), 1.0, 1e-12) << k;
    }
}

TEST(GaussHermite, orthonormality_of_eigenfunctions) {
    // phi_m phi_n = poly * exp(-x^2): exact for order > (m + n) / 2.
    const QuadratureRule rule = gauss_hermite_rule(60);
    const OscillatorParams unit;
    std::vector<double> values;
    std::vector<std::vector<double>> at_nodes;
    for (double x : rule.nodes) {
        hermite_functions(50, x, unit, values);
        at_nodes.push_back(values);
    }
    for (std::size_t m = 0; m <= 50; m += 7) {
        for (std::size_t n = 0; n <= 50; n += 5) {
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.order(); ++i) {
                sum += rule.weights[i] * std::exp(rule.nodes[i] * rule.nodes[i]) * at_nodes[i][m] * at_nodes[i][n];
            }
            EXPECT_NEAR(sum, m == n ? 1.0 : 0.0, 1e-11);
        }
    }
}
