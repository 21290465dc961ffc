#include "esr/position_observable.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "esr/energy_observable.hpp"
#include "esr/error.hpp"
#include "oracles.hpp"

using namespace esr;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kErf1 = 0.842700792949714869;
constexpr std::size_t kNmax = 16;

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no esr::Error thrown";
    return ErrorCode::InvalidParameter;
}

const Grid &grid() {
    static const Grid g = default_grid(OscillatorParams{}, kNmax);
    return g;
}

GridWavefunction on_grid(const FockVector &psi) { return fock_to_position(psi, grid()); }

GridWavefunction ground() { return on_grid(FockVector::basis_state(0, kNmax)); }

GridWavefunction superposition() {
    std::vector<Complex> c(kNmax + 1);
    c[0] = c[1] = c[2] = 1.0 / std::sqrt(3.0);
    return on_grid(FockVector(std::move(c)));
}

/// Check out = k * multiplier * in at every node for a single positive k,
/// and that out has unit trapezoid norm.
void expect_proportional(const GridWavefunction &out, const GridWavefunction &in, auto multiplier) {
    const auto a = out.samples();
    const auto b = in.samples();
    double norm = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double m = multiplier(grid().node(i));
        const double w = (i == 0 || i + 1 == a.size()) ? 0.5 : 1.0;
        norm += w * m * m * std::norm(b[i]);
    }
    const double k = 1.0 / std::sqrt(norm * grid().spacing());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_NEAR(std::abs(a[i] - k * multiplier(grid().node(i)) * b[i]), 0.0, 1e-13) << "node " << i;
    }
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-8);
}

}  // namespace

TEST(PositionEffect, examples) {
    const auto real_line = position_effect(IntervalUnion::real_line(), make_constant_position_profile(1.0), grid());
    for (double w : real_line.weights) EXPECT_EQ(w, 1.0);

    const auto q0_only = position_effect(IntervalUnion::none(true), make_constant_position_profile(0.7), grid());
    for (double w : q0_only.weights) EXPECT_NEAR(w, 0.3, 1e-15);

    const auto half = position_effect(IntervalUnion::of({{0.0, kInf}}), make_constant_position_profile(0.7), grid());
    for (std::size_t i = 0; i < grid().point_count(); ++i) {
        EXPECT_EQ(half.weights[i], grid().node(i) >= 0.0 ? 0.7 : 0.0);
    }
}

TEST(IntervalUnion, merges_and_validates) {
    const auto sel = IntervalUnion::of({{2.0, 3.0}, {-1.0, 0.5}, {0.0, 1.0}});
    ASSERT_EQ(sel.intervals().size(), 2u);
    EXPECT_EQ(sel.intervals()[0], (Interval{-1.0, 1.0}));
    EXPECT_TRUE(sel.contains(1.0));
    EXPECT_FALSE(sel.contains(1.5));
    EXPECT_TRUE(complement(sel).contains(1.5));
    EXPECT_TRUE(complement(sel).includes_q0());
    EXPECT_EQ(code_of([] { IntervalUnion::of({{1.0, 0.0}}); }), ErrorCode::InvalidRange);
}

TEST(PositionProbabilities, conditional) {
    EXPECT_NEAR(conditional_prob_position(ground(), IntervalUnion::of({{-kInf, 0.0}})), 0.5, 1e-12);
    EXPECT_NEAR(conditional_prob_position(ground(), IntervalUnion::of({{-1.0, 1.0}})), kErf1, 1e-9);
    EXPECT_NEAR(conditional_prob_position(ground(), IntervalUnion::of({{-1.0, 1.0}})), oracle::erf_series(1.0), 1e-9);
    EXPECT_NEAR(conditional_prob_position(superposition(), IntervalUnion::real_line()), 1.0, 1e-8);
    EXPECT_EQ(code_of([] { conditional_prob_position(ground(), IntervalUnion::real_line(true)); }),
              ErrorCode::SelectionContainsQ0);
}

TEST(PositionProbabilities, sub_cell_endpoints) {
    // Endpoints well inside cells still integrate accurately.
    const double a = -0.123456789, b = 0.987654321;
    const double exact = 0.5 * (oracle::erf_series(b) - oracle::erf_series(a));
    EXPECT_NEAR(conditional_prob_position(ground(), IntervalUnion::of({{a, b}})), exact, 1e-9);
}

TEST(PositionProbabilities, overall) {
    const auto p = make_constant_position_profile(0.7);
    const auto one = make_constant_position_profile(1.0);
    const auto sel = IntervalUnion::of({{-0.5, 2.0}});
    EXPECT_NEAR(overall_prob_position(superposition(), sel, one), conditional_prob_position(superposition(), sel),
                1e-15);
    EXPECT_NEAR(overall_prob_position(ground(), IntervalUnion::real_line(), p), 0.7, 1e-9);
    EXPECT_NEAR(overall_prob_position(ground(), IntervalUnion::none(true), p), 0.3, 1e-9);
    EXPECT_NEAR(no_detection_prob_position(ground(), one), 0.0, 1e-9);
}

TEST(PositionProbabilities, complement_consistency) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto psi = on_grid(oracle::random_state(rng, 8, kNmax));
        const auto profile = oracle::random_position_profile(rng);
        const auto sel = IntervalUnion::of(oracle::random_intervals(rng), true);
        EXPECT_NEAR(overall_prob_position(psi, sel, profile) +
                        overall_prob_position(psi, complement(sel), profile),
                    1.0, 1e-9);
    }
}

TEST(PositionProbabilities, monotone_and_additive) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const auto psi = on_grid(oracle::random_state(rng, 8, kNmax));
        const auto profile = oracle::random_position_profile(rng);
        const auto pieces = oracle::random_intervals(rng);
        double sum_overall = 0.0, sum_conditional = 0.0;
        for (const Interval &iv : pieces) {
            sum_overall += overall_prob_position(psi, IntervalUnion::of({iv}), profile);
            sum_conditional += conditional_prob_position(psi, IntervalUnion::of({iv}));
        }
        const auto joined = IntervalUnion::of(pieces);
        EXPECT_NEAR(overall_prob_position(psi, joined, profile), sum_overall, 1e-9);
        EXPECT_NEAR(conditional_prob_position(psi, joined), sum_conditional, 1e-9);

        const Interval hull{pieces.front().lo, pieces.back().hi};
        EXPECT_LE(overall_prob_position(psi, joined, profile),
                  overall_prob_position(psi, IntervalUnion::of({hull}), profile) + 1e-10);
        EXPECT_LE(conditional_prob_position(psi, joined), conditional_prob_position(psi, IntervalUnion::of({hull})) + 1e-10);
    }
}

TEST(PositionCollapse, yes_branch) {
    const auto psi = superposition();
    const auto step = [](double q) { return q >= 0.0 ? 1.0 : 0.0; };
    expect_proportional(collapse_position_yes(psi, IntervalUnion::of({{0.0, kInf}}), make_constant_position_profile(1.0)),
                        psi, step);

    const auto window = make_gaussian_window_profile(0.9, 0.5, 1.0);
    expect_proportional(collapse_position_yes(psi, IntervalUnion::real_line(), window), psi,
                        [](double q) { return 0.9 * std::exp(-0.5 * (q - 0.5) * (q - 0.5)); });

    EXPECT_EQ(code_of([] { collapse_position_yes(ground(), IntervalUnion::of({{15.0, 19.0}}),
                                                 make_constant_position_profile(1.0)); }),
              ErrorCode::ZeroProbabilityOutcome);
}

TEST(PositionCollapse, no_detection) {
    const auto psi = superposition();
    expect_proportional(collapse_position_no_detection(psi, make_constant_position_profile(0.5)), psi,
                        [](double) { return 1.0; });

    const auto left_detector = PositionDetectionProfile::table({{0.0, 1.0}, {0.0, 0.0}});
    // The step sits at q = 0: p = 1 strictly left of it, 0 at and right of it.
    expect_proportional(collapse_position_no_detection(psi, left_detector), psi,
                        [](double q) { return q >= 0.0 ? 1.0 : 0.0; });

    EXPECT_EQ(code_of([&] { collapse_position_no_detection(psi, make_constant_position_profile(1.0)); }),
              ErrorCode::DetectionCertain);
}

TEST(PositionCollapse, gpp_answers) {
    const auto psi = superposition();
    const auto one = make_constant_position_profile(1.0);
    expect_proportional(gpp_position_property(psi, IntervalUnion::real_line(), one, Answer::Yes), psi,
                        [](double) { return 1.0; });
    expect_proportional(gpp_position_property(psi, IntervalUnion::of({{0.0, kInf}}), one, Answer::No), psi,
                        [](double q) { return q < 0.0 ? 1.0 : 0.0; });
    expect_proportional(
        gpp_position_property(psi, IntervalUnion::of({{0.0, kInf}}), make_constant_position_profile(0.7), Answer::No),
        psi, [](double q) { return q >= 0.0 ? 0.3 : 1.0; });
}

TEST(PositionCollapse, no_detection_depends_on_observable) {
    std::vector<Complex> c(kNmax + 1);
    c[0] = c[1] = c[2] = 1.0 / std::sqrt(3.0);
    const FockVector psi(c);
    const auto via_energy = collapse_energy_no_detection(psi, make_geometric_profile(0.9, 0.8));
    const auto via_position = collapse_position_no_detection(on_grid(psi), make_gaussian_window_profile(0.9, 0.0, 1.0));
    EXPECT_LT(fidelity(on_grid(via_energy), via_position), 0.99);
}

TEST(PositionBins, partition_rules) {
    EXPECT_EQ(code_of([] { PositionBins::from_intervals({{-kInf, 0.0}, {0.5, kInf}}); }), ErrorCode::BinGapDetected);
    EXPECT_EQ(code_of([] { PositionBins({1.0}); }), ErrorCode::BinGapDetected);
    EXPECT_EQ(code_of([] { PositionBins({0.0, 0.0, 1.0}); }), ErrorCode::InvalidRange);
    EXPECT_EQ(code_of([] { bin_probabilities(ground(), PositionBins({-1.0, 1.0}), make_constant_position_profile(1.0)); }),
              ErrorCode::BinGapDetected);

    const PositionBins bins({-kInf, 0.0, kInf});
    EXPECT_TRUE(bins.in_bin(1, 0.0));
    EXPECT_FALSE(bins.in_bin(0, 0.0));
    EXPECT_EQ(bins.midpoint(1, grid()), 0.5 * grid().q_max());
}

TEST(PositionBins, probabilities) {
    const PositionBins bins({-kInf, -1.0, 1.0, kInf});
    const auto p = make_constant_position_profile(0.6);
    const auto probs = bin_probabilities(ground(), bins, p);
    EXPECT_NEAR(probs.conditional[1], kErf1, 1e-9);
    EXPECT_NEAR(probs.conditional[0], 0.5 * (1.0 - kErf1), 1e-9);
    EXPECT_NEAR(probs.overall[1], 0.6 * kErf1, 1e-9);
    EXPECT_NEAR(probs.no_detection, 0.4, 1e-9);
    const double total = probs.overall[0] + probs.overall[1] + probs.overall[2] + probs.no_detection;
    EXPECT_NEAR(total, 1.0, 1e-15);
}
