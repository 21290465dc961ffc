#include "esr/position_observable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "esr/error.hpp"
#include "esr/format.hpp"

namespace esr {

namespace {

constexpr double kZeroProbability = 1e-14;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> weighted_density(const GridWavefunction &state, const PositionDetectionProfile &profile) {
    std::vector<double> f = state.density();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= profile(state.grid().node(i));
    return f;
}

}  // namespace

IntervalUnion::IntervalUnion(std::vector<Interval> intervals, bool complement, bool includes_q0)
    : intervals_(std::move(intervals)), complement_(complement), includes_q0_(includes_q0) {
    for (const Interval &iv : intervals_) {
        if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi) {
            fail(ErrorCode::InvalidRange, "interval [" + format_double(iv.lo, 17) + ", " +
                                              format_double(iv.hi, 17) + "] is malformed");
        }
    }
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval &a, const Interval &b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const Interval &iv : intervals_) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    intervals_ = std::move(merged);
}

IntervalUnion IntervalUnion::of(std::vector<Interval> intervals, bool includes_q0) {
    return {std::move(intervals), false, includes_q0};
}

IntervalUnion IntervalUnion::complement_of(std::vector<Interval> intervals, bool includes_q0) {
    return {std::move(intervals), true, includes_q0};
}

IntervalUnion IntervalUnion::real_line(bool includes_q0) { return {{}, true, includes_q0}; }

IntervalUnion IntervalUnion::none(bool includes_q0) { return {{}, false, includes_q0}; }

IntervalUnion IntervalUnion::with_q0(bool include) const { return {intervals_, complement_, include}; }

bool IntervalUnion::contains(double q) const noexcept {
    const bool listed =
        std::any_of(intervals_.begin(), intervals_.end(), [q](const Interval &iv) { return iv.contains(q); });
    return listed != complement_;
}

IntervalUnion complement(const IntervalUnion &sel) {
    return sel.is_complement() ? IntervalUnion::of(sel.intervals(), !sel.includes_q0())
                               : IntervalUnion::complement_of(sel.intervals(), !sel.includes_q0());
}

PositionEffect position_effect(const IntervalUnion &sel, const PositionDetectionProfile &profile,
                               const Grid &grid) {
    PositionEffect effect{std::vector<double>(grid.point_count())};
    for (std::size_t i = 0; i < grid.point_count(); ++i) {
        const double q = grid.node(i);
        const bool in_x = sel.contains(q);
        if (sel.includes_q0()) {
            effect.weights[i] = in_x ? 1.0 : 1.0 - profile(q);
        } else {
            effect.weights[i] = in_x ? profile(q) : 0.0;
        }
    }
    return effect;
}

double integrate_over(std::span<const double> density, const Grid &grid, const IntervalUnion &sel) {
    double listed = 0.0;
    for (const Interval &iv : sel.intervals()) listed += integrate_interval(density, grid, iv.lo, iv.hi);
    if (!sel.is_complement()) return listed;
    return integrate_interval(density, grid, -kInf, kInf) - listed;
}

double conditional_prob_position(const GridWavefunction &state, const IntervalUnion &sel) {
    if (sel.includes_q0()) {
        fail(ErrorCode::SelectionContainsQ0, "conditional probability is undefined when q0 is in X");
    }
    return integrate_over(state.density(), state.grid(), sel);
}

double overall_prob_position(const GridWavefunction &state, const IntervalUnion &sel,
                             const PositionDetectionProfile &profile) {
    const std::vector<double> f = weighted_density(state, profile);
    if (sel.includes_q0()) return 1.0 - integrate_over(f, state.grid(), complement(sel));
    return integrate_over(f, state.grid(), sel);
}

double no_detection_prob_position(const GridWavefunction &state, const PositionDetectionProfile &profile) {
    return overall_prob_position(state, IntervalUnion::none(true), profile);
}

double effect_expectation(const GridWavefunction &state, const PositionEffect &effect) {
    if (effect.weights.size() != state.grid().point_count()) {
        fail(ErrorCode::RepresentationMismatch, "effect and state live on different grids");
    }
    std::vector<double> f = state.density();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= effect.weights[i];
    return integrate_grid(f, state.grid());
}

GridWavefunction apply_effect(const GridWavefunction &state, const PositionEffect &effect) {
    if (effect.weights.size() != state.grid().point_count()) {
        fail(ErrorCode::RepresentationMismatch, "effect and state live on different grids");
    }
    const auto psi = state.samples();
    std::vector<Complex> out(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) out[i] = effect.weights[i] * psi[i];
    GridWavefunction raw(std::move(out), state.grid(), state.params());
    const double norm = std::sqrt(raw.norm_squared());
    if (norm < kZeroProbability) fail(ErrorCode::ZeroProbabilityOutcome, "post-measurement vector vanishes");
    return normalize(raw);
}

GridWavefunction collapse_position_yes(const GridWavefunction &state, const IntervalUnion &sel,
                                       const PositionDetectionProfile &profile) {
    if (overall_prob_position(state, sel, profile) <= kZeroProbability) {
        fail(ErrorCode::ZeroProbabilityOutcome, "selection has zero overall probability");
    }
    return apply_effect(state, position_effect(sel, profile, state.grid()));
}

GridWavefunction collapse_position_no_detection(const GridWavefunction &state,
                                                const PositionDetectionProfile &profile) {
    const PositionEffect effect = position_effect(IntervalUnion::none(true), profile, state.grid());
    if (no_detection_prob_position(state, profile) <= kZeroProbability) {
        fail(ErrorCode::DetectionCertain, "detection is certain for this state");
    }
    const auto psi = state.samples();
    std::vector<Complex> out(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) out[i] = effect.weights[i] * psi[i];
    GridWavefunction raw(std::move(out), state.grid(), state.params());
    if (std::sqrt(raw.norm_squared()) < kZeroProbability) {
        fail(ErrorCode::DetectionCertain, "detection is certain on the support of this state");
    }
    return normalize(raw);
}

GridWavefunction gpp_position_property(const GridWavefunction &state, const IntervalUnion &sel,
                                       const PositionDetectionProfile &profile, Answer answer) {
    const IntervalUnion target = answer == Answer::Yes ? sel : complement(sel);
    if (overall_prob_position(state, target, profile) <= kZeroProbability) {
        fail(ErrorCode::ZeroProbabilityOutcome, "answer has zero overall probability");
    }
    return apply_effect(state, position_effect(target, profile, state.grid()));
}

PositionBins::PositionBins(std::vector<double> edges) : edges_(std::move(edges)) {
    if (edges_.size() < 2) fail(ErrorCode::BinGapDetected, "a bin partition needs at least two edges");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (std::isnan(edges_[i])) fail(ErrorCode::InvalidRange, "bin edges must be numbers");
        if (i > 0 && !(edges_[i] > edges_[i - 1])) {
            fail(ErrorCode::InvalidRange, "bin edges must be strictly increasing");
        }
    }
}

PositionBins PositionBins::from_intervals(std::vector<Interval> intervals) {
    if (intervals.empty()) fail(ErrorCode::BinGapDetected, "no bins given");
    std::sort(intervals.begin(), intervals.end(), [](const Interval &a, const Interval &b) { return a.lo < b.lo; });
    std::vector<double> edges{intervals.front().lo};
    for (std::size_t k = 0; k < intervals.size(); ++k) {
        if (k > 0 && intervals[k].lo != intervals[k - 1].hi) {
            fail(ErrorCode::BinGapDetected, "bins " + std::to_string(k - 1) + " and " + std::to_string(k) +
                                                " do not meet: " + format_double(intervals[k - 1].hi, 17) +
                                                " vs " + format_double(intervals[k].lo, 17));
        }
        edges.push_back(intervals[k].hi);
    }
    return PositionBins(std::move(edges));
}

bool PositionBins::in_bin(std::size_t k, double q) const noexcept {
    if (k + 1 == size()) return edges_[k] <= q && q <= edges_[k + 1];
    return edges_[k] <= q && q < edges_[k + 1];
}

double PositionBins::midpoint(std::size_t k, const Grid &grid) const noexcept {
    const double lo = std::max(edges_[k], grid.q_min());
    const double hi = std::min(edges_[k + 1], grid.q_max());
    return 0.5 * (lo + hi);
}

void PositionBins::check_covers(const Grid &grid) const {
    if (edges_.front() > grid.q_min() || edges_.back() < grid.q_max()) {
        fail(ErrorCode::BinGapDetected, "bins span [" + format_double(edges_.front(), 17) + ", " +
                                            format_double(edges_.back(), 17) + "] but the grid spans [" +
                                            format_double(grid.q_min(), 17) + ", " +
                                            format_double(grid.q_max(), 17) + "]");
    }
}

BinProbabilities bin_probabilities(const GridWavefunction &state, const PositionBins &bins,
                                   const PositionDetectionProfile &profile) {
    bins.check_covers(state.grid());
    const std::vector<double> density = state.density();
    const std::vector<double> weighted = weighted_density(state, profile);
    BinProbabilities out;
    double detected = 0.0;
    for (std::size_t k = 0; k < bins.size(); ++k) {
        const Interval iv = bins.bin(k);
        out.conditional.push_back(integrate_interval(density, state.grid(), iv.lo, iv.hi));
        out.overall.push_back(integrate_interval(weighted, state.grid(), iv.lo, iv.hi));
        detected += out.overall.back();
    }
    out.no_detection = 1.0 - detected;
    return out;
}

PositionEffect bin_effect(const PositionBins &bins, std::size_t k, const PositionDetectionProfile &profile,
                          const Grid &grid) {
    PositionEffect effect{std::vector<double>(grid.point_count())};
    for (std::size_t i = 0; i < grid.point_count(); ++i) {
        const double q = grid.node(i);
        effect.weights[i] = bins.in_bin(k, q) ? profile(q) : 0.0;
    }
    return effect;
}

}  // namespace esr
