#include "esr/fock_basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "esr/error.hpp"

namespace esr {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// pi^(-1/4)
const double kPiQuarterInv = std::pow(std::numbers::pi, -0.25);

}  // namespace

OscillatorParams::OscillatorParams(double mass, double angular_frequency, double hbar)
    : mass_(mass), omega_(angular_frequency), hbar_(hbar) {
    if (!positive_finite(mass) || !positive_finite(angular_frequency) || !positive_finite(hbar)) {
        fail(ErrorCode::InvalidParameter, "oscillator mass, frequency and hbar must be positive and finite");
    }
}

double OscillatorParams::characteristic_length() const noexcept {
    return std::sqrt(hbar_ / (mass_ * omega_));
}

double energy_eigenvalue(std::size_t n, const OscillatorParams &params) noexcept {
    return params.hbar() * params.angular_frequency() * (static_cast<double>(n) + 0.5);
}

void hermite_functions(std::size_t n_max, double q, const OscillatorParams &params,
                       std::vector<double> &out) {
    if (!std::isfinite(q)) fail(ErrorCode::InvalidParameter, "hermite_function needs a finite q");
    out.resize(n_max + 1);
    const double x = params.scaled(q);
    const double scale = 1.0 / std::sqrt(params.characteristic_length());
    // phi_{k+1} = sqrt(2/(k+1)) x phi_k - sqrt(k/(k+1)) phi_{k-1}
    double prev = 0.0;
    double cur = kPiQuarterInv * std::exp(-0.5 * x * x);
    out[0] = scale * cur;
    for (std::size_t k = 0; k < n_max; ++k) {
        const double kd = static_cast<double>(k);
        const double next = std::sqrt(2.0 / (kd + 1.0)) * x * cur - std::sqrt(kd / (kd + 1.0)) * prev;
        prev = cur;
        cur = next;
        out[k + 1] = scale * cur;
    }
}

double hermite_function(std::size_t n, double q, const OscillatorParams &params) {
    std::vector<double> values;
    hermite_functions(n, q, params, values);
    return values[n];
}

double hermite_function_bound(const OscillatorParams &params) noexcept {
    constexpr double kCramer = 1.086435;
    return kCramer * kPiQuarterInv / std::sqrt(params.characteristic_length());
}

Grid::Grid(double q_min, double q_max, std::size_t point_count)
    : q_min_(q_min), q_max_(q_max), count_(point_count), spacing_(0.0) {
    if (!std::isfinite(q_min) || !std::isfinite(q_max) || !(q_min < q_max)) {
        fail(ErrorCode::InvalidRange, "grid needs finite q_min < q_max, got [" + std::to_string(q_min) +
                                          ", " + std::to_string(q_max) + "]");
    }
    if (point_count < 3) fail(ErrorCode::InvalidParameter, "grid needs at least 3 points");
    spacing_ = (q_max - q_min) / static_cast<double>(point_count - 1);
}

double Grid::node(std::size_t i) const noexcept {
    // Weighted form keeps symmetric grids exactly symmetric (and hits 0).
    const double last = static_cast<double>(count_ - 1);
    const double id = static_cast<double>(i);
    return (q_min_ * (last - id) + q_max_ * id) / last;
}

std::vector<double> Grid::nodes() const {
    std::vector<double> out(count_);
    for (std::size_t i = 0; i < count_; ++i) out[i] = node(i);
    return out;
}

Grid build_grid(double q_min, double q_max, std::size_t point_count) {
    return Grid(q_min, q_max, point_count);
}

Grid default_grid(const OscillatorParams &params, std::size_t n_max, std::size_t point_count) {
    const double extent =
        (1.2 * std::sqrt(2.0 * static_cast<double>(n_max) + 1.0) + 6.0) * params.characteristic_length();
    return Grid(-extent, extent, point_count);
}

QuadratureRule gauss_hermite_rule(std::size_t order) {
    if (order == 0) fail(ErrorCode::InvalidParameter, "quadrature order must be positive");
    const auto n = static_cast<int>(order);
    const double nd = static_cast<double>(order);
    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    double z = 0.0;
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Initial guesses for the largest roots, then from the previous ones.
        if (i == 0) {
            z = std::sqrt(2.0 * nd + 1.0) - 1.85575 * std::pow(2.0 * nd + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(nd, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double derivative = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = kPiQuarterInv;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt(static_cast<double>(j - 1) / j) * p3;
            }
            derivative = std::sqrt(2.0 * nd) * p2;
            const double step = p1 / derivative;
            z -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        rule.nodes[i] = z;
        rule.nodes[order - 1 - i] = -z;
        rule.weights[i] = 2.0 / (derivative * derivative);
        rule.weights[order - 1 - i] = rule.weights[i];
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    std::reverse(rule.nodes.begin(), rule.nodes.end());
    std::reverse(rule.weights.begin(), rule.weights.end());
    return rule;
}

namespace {

template <typename T>
T integrate_impl(std::span<const T> f, const Grid &grid, IntegrationMethod method) {
    const std::size_t n = grid.point_count();
    if (f.size() != n) {
        fail(ErrorCode::LengthMismatch, "sample count " + std::to_string(f.size()) + " != grid size " +
                                            std::to_string(n));
    }
    const double h = grid.spacing();
    if (method == IntegrationMethod::Trapezoid) {
        T sum = 0.5 * (f[0] + f[n - 1]);
        for (std::size_t i = 1; i + 1 < n; ++i) sum += f[i];
        return h * sum;
    }
    // Composite Simpson over an even number of intervals; an odd leftover
    // is closed with the 3/8 rule on the last three intervals.
    const std::size_t intervals = n - 1;
    const std::size_t simpson_intervals = (intervals % 2 == 0) ? intervals : intervals - 3;
    T sum = T{};
    if (simpson_intervals > 0) {
        T acc = f[0] + f[simpson_intervals];
        for (std::size_t i = 1; i < simpson_intervals; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
        sum += acc * (h / 3.0);
    }
    if (simpson_intervals != intervals) {
        const std::size_t s = simpson_intervals;
        sum += (3.0 * h / 8.0) * (f[s] + 3.0 * f[s + 1] + 3.0 * f[s + 2] + f[s + 3]);
    }
    return sum;
}

}  // namespace

double integrate_grid(std::span<const double> samples, const Grid &grid, IntegrationMethod method) {
    return integrate_impl(samples, grid, method);
}

std::complex<double> integrate_grid(std::span<const std::complex<double>> samples, const Grid &grid,
                                    IntegrationMethod method) {
    return integrate_impl(samples, grid, method);
}

namespace {

constexpr std::size_t kInterpolationPoints = 8;

// Integral over [t0, t1] of each Lagrange basis polynomial through the nodes
// t = first, first + 1, ..., first + count - 1 (cell coordinates, spacing 1).
// Four-point Gauss-Legendre is exact up to degree 7.
std::array<double, kInterpolationPoints> lagrange_weights(double first, std::size_t count, double t0, double t1) {
    static constexpr std::array<double, 4> x{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                             0.8611363115940526};
    static constexpr std::array<double, 4> w{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                             0.3478548451374538};
    std::array<double, kInterpolationPoints> out{};
    const double mid = 0.5 * (t0 + t1);
    const double half = 0.5 * (t1 - t0);
    for (std::size_t g = 0; g < x.size(); ++g) {
        const double t = mid + half * x[g];
        for (std::size_t k = 0; k < count; ++k) {
            double basis = 1.0;
            for (std::size_t j = 0; j < count; ++j) {
                if (j != k) basis *= (t - first - static_cast<double>(j)) / (static_cast<double>(k) - static_cast<double>(j));
            }
            out[k] += half * w[g] * basis;
        }
    }
    return out;
}

}  // namespace

double integrate_interval(std::span<const double> samples, const Grid &grid, double a, double b) {
    const std::size_t n = grid.point_count();
    if (samples.size() != n) {
        fail(ErrorCode::LengthMismatch, "sample count " + std::to_string(samples.size()) +
                                            " != grid size " + std::to_string(n));
    }
    a = std::max(a, grid.q_min());
    b = std::min(b, grid.q_max());
    if (!(a < b)) return 0.0;

    const double h = grid.spacing();
    const std::size_t stencil = std::min(kInterpolationPoints, n);
    const std::size_t behind = (stencil - 1) / 2;  // stencil nodes left of the cell's left node
    const auto cell_of = [&](double q) {
        const double pos = std::floor((q - grid.q_min()) / h);
        return static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(n - 2)));
    };
    const std::size_t first = cell_of(a);
    const std::size_t last = cell_of(b);

    // Whole cells with a centred stencil all share one set of weights.
    const auto centred = lagrange_weights(-static_cast<double>(behind), stencil, 0.0, 1.0);
    double total = 0.0;
    for (std::size_t cell = first; cell <= last; ++cell) {
        const double x0 = grid.node(cell);
        const double t0 = std::max(0.0, (a - x0) / h);
        const double t1 = std::min(1.0, (b - x0) / h);
        if (!(t0 < t1)) continue;
        const std::size_t start = std::min(cell >= behind ? cell - behind : 0, n - stencil);
        const bool whole = t0 == 0.0 && t1 == 1.0 && start + behind == cell;
        const auto weights =
            whole ? centred
                  : lagrange_weights(static_cast<double>(start) - static_cast<double>(cell), stencil, t0, t1);
        for (std::size_t k = 0; k < stencil; ++k) total += weights[k] * samples[start + k];
    }
    return total * h;
}

}  // namespace esr
