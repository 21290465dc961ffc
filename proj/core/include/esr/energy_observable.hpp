#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "esr/answer.hpp"
#include "esr/detection_profiles.hpp"
#include "esr/states.hpp"

namespace esr {

/// Borel set X for the generalized energy: a finite set of levels (or the
/// complement of one) plus whether the no-registration value h0 belongs to X.
class EnergySelection {
public:
    static EnergySelection of(std::vector<std::size_t> levels, bool includes_h0 = false);
    static EnergySelection complement_of(std::vector<std::size_t> levels, bool includes_h0 = false);
    static EnergySelection all_levels(bool includes_h0 = false);
    static EnergySelection none(bool includes_h0 = false);

    EnergySelection with_h0(bool include) const;

    bool contains_level(std::size_t n) const noexcept;
    bool includes_h0() const noexcept { return includes_h0_; }
    bool is_complement() const noexcept { return complement_; }
    const std::vector<std::size_t> &levels() const noexcept { return levels_; }

    /// Throws IndexBeyondTruncation if an explicit level exceeds n_max.
    void validate(std::size_t n_max) const;

private:
    EnergySelection(std::vector<std::size_t> levels, bool complement, bool includes_h0);

    std::vector<std::size_t> levels_;  // sorted, unique
    bool complement_;
    bool includes_h0_;
};

/// X -> (R \ X) within the outcome set {h0} u spectrum; flips h0 membership too.
EnergySelection complement(const EnergySelection &sel);

/// Diagonal weights of T(X) in the Fock basis.
struct EnergyEffect {
    std::vector<double> weights;
};

EnergyEffect energy_effect(const EnergySelection &sel, const EnergyDetectionProfile &profile,
                           std::size_t n_max = kDefaultTruncation);

inline constexpr double kDefaultH0 = 0.0;

/// Throws InvalidParameter when h0 coincides with an eigenvalue E_n.
void validate_no_registration_energy(double h0, const OscillatorParams &params);

double conditional_prob_energy(const FockVector &state, std::size_t n);
/// <psi|P(X)|psi> for a selection without h0.
double conditional_prob_energy(const FockVector &state, const EnergySelection &sel);
double overall_prob_energy(const FockVector &state, std::size_t n, const EnergyDetectionProfile &profile);
double no_detection_prob_energy(const FockVector &state, const EnergyDetectionProfile &profile);
double property_probability_energy(const FockVector &state, const EnergySelection &sel,
                                   const EnergyDetectionProfile &profile);

/// <psi|T|psi> and T|psi> / sqrt(<psi|T^2|psi>) for a diagonal effect.
double effect_expectation(const FockVector &state, const EnergyEffect &effect);
FockVector apply_effect(const FockVector &state, const EnergyEffect &effect);

FockVector collapse_energy_outcome(const FockVector &state, std::size_t n);
FockVector collapse_energy_no_detection(const FockVector &state, const EnergyDetectionProfile &profile);
FockVector gpp_energy_property(const FockVector &state, const EnergySelection &sel,
                               const EnergyDetectionProfile &profile, Answer answer);

}  // namespace esr
