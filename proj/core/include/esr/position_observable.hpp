#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "esr/answer.hpp"
#include "esr/detection_profiles.hpp"
#include "esr/states.hpp"

namespace esr {

/// Closed interval [lo, hi]; either end may be infinite.
struct Interval {
    double lo;
    double hi;

    bool contains(double q) const noexcept { return lo <= q && q <= hi; }
    friend bool operator==(const Interval &, const Interval &) = default;
};

/// Borel set X for the generalized position: a finite union of closed
/// intervals (or its complement) plus whether q0 belongs to X.
class IntervalUnion {
public:
    /// Overlapping or touching intervals are merged; throws InvalidRange if lo > hi.
    static IntervalUnion of(std::vector<Interval> intervals, bool includes_q0 = false);
    static IntervalUnion complement_of(std::vector<Interval> intervals, bool includes_q0 = false);
    static IntervalUnion real_line(bool includes_q0 = false);
    static IntervalUnion none(bool includes_q0 = false);

    IntervalUnion with_q0(bool include) const;

    /// Membership of a real point (q0 membership is tracked separately).
    bool contains(double q) const noexcept;
    bool includes_q0() const noexcept { return includes_q0_; }
    bool is_complement() const noexcept { return complement_; }
    const std::vector<Interval> &intervals() const noexcept { return intervals_; }

private:
    IntervalUnion(std::vector<Interval> intervals, bool complement, bool includes_q0);

    std::vector<Interval> intervals_;  // sorted, disjoint
    bool complement_;
    bool includes_q0_;
};

IntervalUnion complement(const IntervalUnion &sel);

/// Weights w(q_i) of T(X) at the grid nodes. A node is in X iff it lies in
/// one of the closed intervals (inverted for complement selections).
struct PositionEffect {
    std::vector<double> weights;
};

PositionEffect position_effect(const IntervalUnion &sel, const PositionDetectionProfile &profile,
                               const Grid &grid);

inline constexpr double kDefaultQ0 = 0.0;

/// Integral of `density` over the real part of X, with sub-cell endpoints.
double integrate_over(std::span<const double> density, const Grid &grid, const IntervalUnion &sel);

double conditional_prob_position(const GridWavefunction &state, const IntervalUnion &sel);
double overall_prob_position(const GridWavefunction &state, const IntervalUnion &sel,
                             const PositionDetectionProfile &profile);
double no_detection_prob_position(const GridWavefunction &state, const PositionDetectionProfile &profile);

double effect_expectation(const GridWavefunction &state, const PositionEffect &effect);
GridWavefunction apply_effect(const GridWavefunction &state, const PositionEffect &effect);

GridWavefunction collapse_position_yes(const GridWavefunction &state, const IntervalUnion &sel,
                                       const PositionDetectionProfile &profile);
/// Post-state (1 - p(q)) psi(q) / sqrt(int (1 - p)^2 |psi|^2 dq).
GridWavefunction collapse_position_no_detection(const GridWavefunction &state,
                                                const PositionDetectionProfile &profile);
GridWavefunction gpp_position_property(const GridWavefunction &state, const IntervalUnion &sel,
                                       const PositionDetectionProfile &profile, Answer answer);

/// Contiguous partition into bins [e_0, e_1), [e_1, e_2), ..., [e_{K-1}, e_K].
class PositionBins {
public:
    /// Edges must be strictly increasing; e_0 may be -inf and e_K +inf.
    explicit PositionBins(std::vector<double> edges);
    /// Throws BinGapDetected unless the intervals tile a contiguous range.
    static PositionBins from_intervals(std::vector<Interval> intervals);

    std::size_t size() const noexcept { return edges_.size() - 1; }
    Interval bin(std::size_t k) const noexcept { return {edges_[k], edges_[k + 1]}; }
    const std::vector<double> &edges() const noexcept { return edges_; }
    bool in_bin(std::size_t k, double q) const noexcept;
    /// Representative coordinate of bin k, clipped to the grid for infinite ends.
    double midpoint(std::size_t k, const Grid &grid) const noexcept;

    /// Throws BinGapDetected if some grid node falls outside every bin.
    void check_covers(const Grid &grid) const;

private:
    std::vector<double> edges_;
};

struct BinProbabilities {
    std::vector<double> conditional;
    std::vector<double> overall;
    double no_detection = 0.0;
};

BinProbabilities bin_probabilities(const GridWavefunction &state, const PositionBins &bins,
                                   const PositionDetectionProfile &profile);
PositionEffect bin_effect(const PositionBins &bins, std::size_t k, const PositionDetectionProfile &profile,
                          const Grid &grid);

}  // namespace esr
