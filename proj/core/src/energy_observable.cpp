#include "esr/energy_observable.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "esr/error.hpp"
#include "esr/format.hpp"

namespace esr {

namespace {

constexpr double kZeroProbability = 1e-14;

void check_level(const FockVector &state, std::size_t n) {
    if (n > state.n_max()) {
        fail(ErrorCode::IndexBeyondTruncation,
             "level " + std::to_string(n) + " exceeds truncation " + std::to_string(state.n_max()));
    }
}

}  // namespace

EnergySelection::EnergySelection(std::vector<std::size_t> levels, bool complement, bool includes_h0)
    : levels_(std::move(levels)), complement_(complement), includes_h0_(includes_h0) {
    std::sort(levels_.begin(), levels_.end());
    levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
}

EnergySelection EnergySelection::of(std::vector<std::size_t> levels, bool includes_h0) {
    return {std::move(levels), false, includes_h0};
}

EnergySelection EnergySelection::complement_of(std::vector<std::size_t> levels, bool includes_h0) {
    return {std::move(levels), true, includes_h0};
}

EnergySelection EnergySelection::all_levels(bool includes_h0) { return {{}, true, includes_h0}; }

EnergySelection EnergySelection::none(bool includes_h0) { return {{}, false, includes_h0}; }

EnergySelection EnergySelection::with_h0(bool include) const { return {levels_, complement_, include}; }

bool EnergySelection::contains_level(std::size_t n) const noexcept {
    const bool listed = std::binary_search(levels_.begin(), levels_.end(), n);
    return listed != complement_;
}

void EnergySelection::validate(std::size_t n_max) const {
    if (!levels_.empty() && levels_.back() > n_max) {
        fail(ErrorCode::IndexBeyondTruncation, "selection names level " + std::to_string(levels_.back()) +
                                                   " beyond truncation " + std::to_string(n_max));
    }
}

EnergySelection complement(const EnergySelection &sel) {
    return sel.is_complement() ? EnergySelection::of(sel.levels(), !sel.includes_h0())
                               : EnergySelection::complement_of(sel.levels(), !sel.includes_h0());
}

EnergyEffect energy_effect(const EnergySelection &sel, const EnergyDetectionProfile &profile,
                           std::size_t n_max) {
    sel.validate(n_max);
    EnergyEffect effect{std::vector<double>(n_max + 1)};
    for (std::size_t n = 0; n <= n_max; ++n) {
        const bool in_x = sel.contains_level(n);
        if (sel.includes_h0()) {
            effect.weights[n] = in_x ? 1.0 : 1.0 - profile(n);
        } else {
            effect.weights[n] = in_x ? profile(n) : 0.0;
        }
    }
    return effect;
}

void validate_no_registration_energy(double h0, const OscillatorParams &params) {
    if (!std::isfinite(h0)) fail(ErrorCode::InvalidParameter, "h0 must be finite");
    const double quantum = params.hbar() * params.angular_frequency();
    const double level = h0 / quantum - 0.5;
    if (level > -0.5 && std::abs(level - std::round(level)) <= 1e-12 * std::max(1.0, std::abs(level))) {
        fail(ErrorCode::InvalidParameter, "h0 = " + format_double(h0, 17) + " coincides with an eigenvalue");
    }
}

double conditional_prob_energy(const FockVector &state, std::size_t n) {
    check_level(state, n);
    return std::norm(state.amplitudes()[n]);
}

double conditional_prob_energy(const FockVector &state, const EnergySelection &sel) {
    if (sel.includes_h0()) {
        fail(ErrorCode::SelectionContainsQ0, "conditional probability is undefined when h0 is in X");
    }
    sel.validate(state.n_max());
    double sum = 0.0;
    for (std::size_t n = 0; n <= state.n_max(); ++n) {
        if (sel.contains_level(n)) sum += std::norm(state.amplitudes()[n]);
    }
    return sum;
}

double overall_prob_energy(const FockVector &state, std::size_t n, const EnergyDetectionProfile &profile) {
    return profile(n) * conditional_prob_energy(state, n);
}

double no_detection_prob_energy(const FockVector &state, const EnergyDetectionProfile &profile) {
    double sum = 0.0;
    const auto c = state.amplitudes();
    for (std::size_t n = 0; n < c.size(); ++n) sum += (1.0 - profile(n)) * std::norm(c[n]);
    return sum;
}

double property_probability_energy(const FockVector &state, const EnergySelection &sel,
                                   const EnergyDetectionProfile &profile) {
    if (sel.includes_h0()) {
        // 1 - p^t of the complement, which no longer contains h0.
        return 1.0 - property_probability_energy(state, complement(sel), profile);
    }
    return effect_expectation(state, energy_effect(sel, profile, state.n_max()));
}

double effect_expectation(const FockVector &state, const EnergyEffect &effect) {
    const auto c = state.amplitudes();
    if (effect.weights.size() != c.size()) {
        fail(ErrorCode::RepresentationMismatch, "effect and state differ in truncation");
    }
    double sum = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) sum += effect.weights[n] * std::norm(c[n]);
    return sum;
}

FockVector apply_effect(const FockVector &state, const EnergyEffect &effect) {
    const auto c = state.amplitudes();
    if (effect.weights.size() != c.size()) {
        fail(ErrorCode::RepresentationMismatch, "effect and state differ in truncation");
    }
    if (effect_expectation(state, effect) < kZeroProbability) {
        fail(ErrorCode::ZeroProbabilityOutcome, "outcome has zero probability in this state");
    }
    std::vector<Complex> out(c.size());
    double norm_sq = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) {
        out[n] = effect.weights[n] * c[n];
        norm_sq += std::norm(out[n]);
    }
    const double norm = std::sqrt(norm_sq);
    if (norm < kZeroProbability) fail(ErrorCode::ZeroProbabilityOutcome, "post-measurement vector vanishes");
    for (Complex &v : out) v /= norm;
    return FockVector(std::move(out), state.params());
}

FockVector collapse_energy_outcome(const FockVector &state, std::size_t n) {
    if (conditional_prob_energy(state, n) < kZeroProbability) {
        fail(ErrorCode::ZeroProbabilityOutcome, "level " + std::to_string(n) + " has zero amplitude");
    }
    // Phase theta_n = 0.
    return FockVector::basis_state(n, state.n_max(), state.params());
}

FockVector collapse_energy_no_detection(const FockVector &state, const EnergyDetectionProfile &profile) {
    const auto c = state.amplitudes();
    std::vector<Complex> out(c.size());
    double norm_sq = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) {
        out[n] = (1.0 - profile(n)) * c[n];
        norm_sq += std::norm(out[n]);
    }
    const double norm = std::sqrt(norm_sq);
    if (norm < kZeroProbability) {
        fail(ErrorCode::DetectionCertain, "detection is certain on the support of this state");
    }
    for (Complex &v : out) v /= norm;
    return FockVector(std::move(out), state.params());
}

FockVector gpp_energy_property(const FockVector &state, const EnergySelection &sel,
                               const EnergyDetectionProfile &profile, Answer answer) {
    const EnergySelection target = answer == Answer::Yes ? sel : complement(sel);
    return apply_effect(state, energy_effect(target, profile, state.n_max()));
}

}  // namespace esr
