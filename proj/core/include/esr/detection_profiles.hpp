#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace esr {

/// Linear interpolation through (x, p) knots, clamped outside the knot range.
/// Repeated x values encode a jump: left of the knot the first value applies,
/// at and right of it the last one.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    explicit PiecewiseLinear(std::vector<std::pair<double, double>> knots);

    double operator()(double x) const noexcept;
    const std::vector<std::pair<double, double>> &knots() const noexcept { return knots_; }

private:
    std::vector<std::pair<double, double>> knots_;
};

/// Detection probability p^d(H, E_n) as a function of the level index.
class EnergyDetectionProfile {
public:
    enum class Kind { Constant, Table, GeometricDecay };

    static EnergyDetectionProfile constant(double p);
    /// p(n) = p0 r^n with 0 <= p0 <= 1, 0 < r <= 1.
    static EnergyDetectionProfile geometric(double p0, double r);
    /// Knots are (n, p) pairs; non-integer n is allowed and interpolated.
    static EnergyDetectionProfile table(std::vector<std::pair<double, double>> knots);

    /// Throws OutOfRange if the value escapes [0, 1].
    double operator()(std::size_t n) const;

    Kind kind() const noexcept { return kind_; }
    double p() const noexcept { return a_; }
    double p0() const noexcept { return a_; }
    double ratio() const noexcept { return b_; }
    const PiecewiseLinear &knots() const noexcept { return table_; }

private:
    EnergyDetectionProfile(Kind kind, double a, double b, PiecewiseLinear table);

    Kind kind_;
    double a_;
    double b_;
    PiecewiseLinear table_;
};

/// Detection probability density p^d(Q, q) as a function of position.
class PositionDetectionProfile {
public:
    enum class Kind { Constant, GaussianWindow, Table };

    static PositionDetectionProfile constant(double p);
    /// p(q) = p_max exp(-(q - center)^2 / (2 width^2)).
    static PositionDetectionProfile gaussian_window(double p_max, double center, double width);
    static PositionDetectionProfile table(std::vector<std::pair<double, double>> knots);

    double operator()(double q) const;

    Kind kind() const noexcept { return kind_; }
    double p() const noexcept { return p_; }
    double center() const noexcept { return center_; }
    double width() const noexcept { return width_; }
    const PiecewiseLinear &knots() const noexcept { return table_; }

private:
    PositionDetectionProfile(Kind kind, double p, double center, double width, PiecewiseLinear table);

    Kind kind_;
    double p_;
    double center_;
    double width_;
    PiecewiseLinear table_;
};

EnergyDetectionProfile make_constant_energy_profile(double p);
PositionDetectionProfile make_constant_position_profile(double p);
EnergyDetectionProfile make_geometric_profile(double p0, double r);
PositionDetectionProfile make_gaussian_window_profile(double p_max, double center, double width);

// JSON config: {"kind": "constant", "p": ...}, {"kind": "geometric-decay",
// "p0": ..., "r": ...}, {"kind": "gaussian-window", "p_max": ..., "center":
// ..., "width": ...} or {"kind": "table", "table": [[x, p], ...]}.
EnergyDetectionProfile load_energy_profile(std::string_view config_text);
PositionDetectionProfile load_position_profile(std::string_view config_text);

std::string to_json(const EnergyDetectionProfile &profile);
std::string to_json(const PositionDetectionProfile &profile);

}  // namespace esr
