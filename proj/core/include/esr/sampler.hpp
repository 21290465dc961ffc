#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "esr/detection_profiles.hpp"
#include "esr/energy_observable.hpp"
#include "esr/position_observable.hpp"
#include "esr/states.hpp"

namespace esr {

using Rng = std::mt19937_64;
inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(Rng &rng);

/// Seed for trial `trial` derived from a run seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

enum class Observable { Energy, Position };

/// Measure H0 and report the level E_n or no-registration.
struct EnergyMeasurement {
    EnergyDetectionProfile profile;
};
/// Measure the property (H0, X) and report yes/no.
struct EnergyPropertyMeasurement {
    EnergySelection selection;
    EnergyDetectionProfile profile;
};
/// Measure Q0 at the resolution of a bin partition, or no-registration.
struct PositionMeasurement {
    PositionBins bins;
    PositionDetectionProfile profile;
};
/// Measure the property (Q0, X) and report yes/no.
struct PositionPropertyMeasurement {
    IntervalUnion selection;
    PositionDetectionProfile profile;
};

using MeasurementSpec =
    std::variant<EnergyMeasurement, EnergyPropertyMeasurement, PositionMeasurement, PositionPropertyMeasurement>;

Observable observable_of(const MeasurementSpec &spec) noexcept;

struct Outcome {
    enum class Kind { Level, Bin, Yes, No, NoRegistration };
    Kind kind;
    std::size_t index = 0;  // level n or bin k

    std::string label() const;
    friend bool operator==(const Outcome &, const Outcome &) = default;
};

using State = std::variant<FockVector, GridWavefunction>;

struct MeasurementRecord {
    Observable observable;
    Outcome outcome;
    double outcome_value;
    double probability;           // analytic probability of this outcome
    double fidelity_to_initial;   // |<initial|post>|
    std::shared_ptr<const State> post_state;  // empty when states were not kept
};

/// Representation settings used when a sequence switches between the Fock
/// basis and the position grid.
struct SamplerContext {
    Grid grid;
    std::size_t n_max = kDefaultTruncation;
    double h0 = 0.0;
    double q0 = 0.0;

    static SamplerContext defaults(const OscillatorParams &params, std::size_t n_max = kDefaultTruncation);
};

/// Analytic distribution over the outcome space of one measurement.
struct OutcomeDistribution {
    std::vector<Outcome> outcomes;
    std::vector<double> probabilities;

    /// Inverse-CDF draw for u in [0, 1).
    std::size_t draw(double u) const noexcept;
};

OutcomeDistribution outcome_distribution(const State &state, const MeasurementSpec &spec,
                                         const SamplerContext &context);

/// One measurement drawn with `rng`, with the post-state from the matching collapse rule.
MeasurementRecord measure(const State &state, const MeasurementSpec &spec, const SamplerContext &context,
                          Rng &rng, const State *initial = nullptr);

MeasurementRecord sample_energy(const FockVector &state, const EnergyDetectionProfile &profile,
                                std::uint64_t seed);
MeasurementRecord sample_position(const GridWavefunction &state, const PositionBins &bins,
                                  const PositionDetectionProfile &profile, std::uint64_t seed);

std::vector<MeasurementRecord> run_sequence(const State &initial, const std::vector<MeasurementSpec> &specs,
                                            std::uint64_t seed, const SamplerContext &context);

/// Caps at ESR_OSC_THREADS when set; `requested == 0` means hardware concurrency.
unsigned resolve_thread_count(unsigned requested, std::size_t work_items);

/// Independent trajectories, trial t seeded with derive_seed(seed, t). Results
/// are ordered by trial index regardless of the thread count.
std::vector<std::vector<MeasurementRecord>> run_trials(const State &initial,
                                                       const std::vector<MeasurementSpec> &specs,
                                                       std::size_t trials, std::uint64_t seed,
                                                       const SamplerContext &context, unsigned threads = 1,
                                                       bool keep_states = false);

struct EmpiricalDistribution {
    std::size_t trials = 0;
    std::map<std::string, std::uint64_t> counts;

    double frequency(const std::string &label) const;
    std::map<std::string, double> frequencies() const;
};

EmpiricalDistribution empirical_distribution(const State &initial, const MeasurementSpec &spec,
                                             std::size_t trials, std::uint64_t seed,
                                             const SamplerContext &context, unsigned threads = 1);

/// Columns: trial, step, observable, outcome_label, outcome_value, probability_analytic.
void write_trajectory_csv(std::ostream &out, const std::vector<std::vector<MeasurementRecord>> &trials,
                          int significant_digits = 12);

}  // namespace esr
