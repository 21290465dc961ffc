#include "esr/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>

#include "esr/error.hpp"
#include "esr/format.hpp"

namespace esr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

FockVector as_fock(const State &state, const SamplerContext &context) {
    if (const auto *fock = std::get_if<FockVector>(&state)) return *fock;
    return position_to_fock(std::get<GridWavefunction>(state), context.n_max);
}

GridWavefunction as_grid(const State &state, const SamplerContext &context) {
    if (const auto *wf = std::get_if<GridWavefunction>(&state)) return *wf;
    return fock_to_position(std::get<FockVector>(state), context.grid);
}

const OscillatorParams &params_of(const State &state) {
    return std::visit([](const auto &s) -> const OscillatorParams & { return s.params(); }, state);
}

// The initial state held in whichever representations a run needs, so the
// per-record fidelity never converts inside the trial loop.
class Reference {
public:
    Reference(const State &initial, const std::vector<MeasurementSpec> &specs, const SamplerContext &context) {
        bool energy = std::holds_alternative<FockVector>(initial);
        bool position = std::holds_alternative<GridWavefunction>(initial);
        for (const auto &spec : specs) {
            (observable_of(spec) == Observable::Energy ? energy : position) = true;
        }
        if (energy) fock_ = as_fock(initial, context);
        if (position) grid_ = as_grid(initial, context);
    }

    double fidelity(const State &state) const {
        return std::visit(overloaded{[&](const FockVector &s) {
                                         return fock_ && fock_->size() == s.size()
                                                    ? esr::fidelity(*fock_, s)
                                                    : std::numeric_limits<double>::quiet_NaN();
                                     },
                                     [&](const GridWavefunction &s) {
                                         return grid_ && grid_->grid() == s.grid()
                                                    ? esr::fidelity(*grid_, s)
                                                    : std::numeric_limits<double>::quiet_NaN();
                                     }},
                          state);
    }

private:
    std::optional<FockVector> fock_;
    std::optional<GridWavefunction> grid_;
};

double outcome_value(const Outcome &outcome, const MeasurementSpec &spec, const State &pre,
                     const SamplerContext &context) {
    switch (outcome.kind) {
        case Outcome::Kind::Level: return energy_eigenvalue(outcome.index, params_of(pre));
        case Outcome::Kind::Bin:
            return std::get<PositionMeasurement>(spec).bins.midpoint(outcome.index, context.grid);
        case Outcome::Kind::Yes: return 1.0;
        case Outcome::Kind::No: return 0.0;
        case Outcome::Kind::NoRegistration:
            return observable_of(spec) == Observable::Energy ? context.h0 : context.q0;
    }
    return 0.0;
}

State collapse(const State &pre, const MeasurementSpec &spec, const Outcome &outcome,
               const SamplerContext &context) {
    const Answer answer = outcome.kind == Outcome::Kind::No ? Answer::No : Answer::Yes;
    return std::visit(
        overloaded{
            [&](const EnergyMeasurement &m) -> State {
                const FockVector psi = as_fock(pre, context);
                if (outcome.kind == Outcome::Kind::NoRegistration) {
                    return collapse_energy_no_detection(psi, m.profile);
                }
                return collapse_energy_outcome(psi, outcome.index);
            },
            [&](const EnergyPropertyMeasurement &m) -> State {
                return gpp_energy_property(as_fock(pre, context), m.selection, m.profile, answer);
            },
            [&](const PositionMeasurement &m) -> State {
                const GridWavefunction psi = as_grid(pre, context);
                if (outcome.kind == Outcome::Kind::NoRegistration) {
                    return collapse_position_no_detection(psi, m.profile);
                }
                return apply_effect(psi, bin_effect(m.bins, outcome.index, m.profile, psi.grid()));
            },
            [&](const PositionPropertyMeasurement &m) -> State {
                return gpp_position_property(as_grid(pre, context), m.selection, m.profile, answer);
            }},
        spec);
}

MeasurementRecord measure_with(const State &state, const MeasurementSpec &spec, const SamplerContext &context,
                               Rng &rng, const Reference &reference) {
    const OutcomeDistribution dist = outcome_distribution(state, spec, context);
    const std::size_t pick = dist.draw(uniform01(rng));
    const Outcome outcome = dist.outcomes[pick];
    auto post = std::make_shared<const State>(collapse(state, spec, outcome, context));
    return MeasurementRecord{observable_of(spec),
                             outcome,
                             outcome_value(outcome, spec, state, context),
                             dist.probabilities[pick],
                             reference.fidelity(*post),
                             std::move(post)};
}

std::vector<MeasurementRecord> run_with(const State &initial, const std::vector<MeasurementSpec> &specs,
                                        Rng &rng, const SamplerContext &context, const Reference &reference,
                                        bool keep_states) {
    std::vector<MeasurementRecord> records;
    records.reserve(specs.size());
    std::shared_ptr<const State> current;
    for (const auto &spec : specs) {
        MeasurementRecord record = measure_with(current ? *current : initial, spec, context, rng, reference);
        current = record.post_state;
        if (!keep_states) record.post_state.reset();
        records.push_back(std::move(record));
    }
    return records;
}

template <typename Fn>
void parallel_for_trials(std::size_t trials, unsigned threads, Fn &&body) {
    threads = resolve_thread_count(threads, trials);
    if (threads <= 1) {
        body(std::size_t{0}, trials);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (trials + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(trials, t * chunk);
        const std::size_t end = std::min(trials, begin + chunk);
        workers.emplace_back([&, t, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto &w : workers) w.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Observable observable_of(const MeasurementSpec &spec) noexcept {
    return std::holds_alternative<EnergyMeasurement>(spec) || std::holds_alternative<EnergyPropertyMeasurement>(spec)
               ? Observable::Energy
               : Observable::Position;
}

std::string Outcome::label() const {
    switch (kind) {
        case Kind::Level: return "E" + std::to_string(index);
        case Kind::Bin: return "bin" + std::to_string(index);
        case Kind::Yes: return "yes";
        case Kind::No: return "no";
        case Kind::NoRegistration: return "no-registration";
    }
    return "?";
}

SamplerContext SamplerContext::defaults(const OscillatorParams &params, std::size_t n_max) {
    return SamplerContext{default_grid(params, n_max), n_max, kDefaultH0, kDefaultQ0};
}

std::size_t OutcomeDistribution::draw(double u) const noexcept {
    double total = 0.0;
    for (double p : probabilities) total += std::max(0.0, p);
    const double target = u * total;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const double p = std::max(0.0, probabilities[i]);
        if (p <= 0.0) continue;
        last_positive = i;
        cumulative += p;
        if (target < cumulative) return i;
    }
    return last_positive;
}

OutcomeDistribution outcome_distribution(const State &state, const MeasurementSpec &spec,
                                         const SamplerContext &context) {
    OutcomeDistribution dist;
    const auto add = [&](Outcome outcome, double p) {
        dist.outcomes.push_back(outcome);
        dist.probabilities.push_back(std::max(0.0, p));
    };
    std::visit(overloaded{[&](const EnergyMeasurement &m) {
                              const FockVector psi = as_fock(state, context);
                              for (std::size_t n = 0; n <= psi.n_max(); ++n) {
                                  add({Outcome::Kind::Level, n}, overall_prob_energy(psi, n, m.profile));
                              }
                              add({Outcome::Kind::NoRegistration}, no_detection_prob_energy(psi, m.profile));
                          },
                          [&](const EnergyPropertyMeasurement &m) {
                              const FockVector psi = as_fock(state, context);
                              add({Outcome::Kind::Yes}, property_probability_energy(psi, m.selection, m.profile));
                              add({Outcome::Kind::No},
                                  property_probability_energy(psi, complement(m.selection), m.profile));
                          },
                          [&](const PositionMeasurement &m) {
                              const GridWavefunction psi = as_grid(state, context);
                              const BinProbabilities probs = bin_probabilities(psi, m.bins, m.profile);
                              for (std::size_t k = 0; k < probs.overall.size(); ++k) {
                                  add({Outcome::Kind::Bin, k}, probs.overall[k]);
                              }
                              add({Outcome::Kind::NoRegistration}, probs.no_detection);
                          },
                          [&](const PositionPropertyMeasurement &m) {
                              const GridWavefunction psi = as_grid(state, context);
                              add({Outcome::Kind::Yes}, overall_prob_position(psi, m.selection, m.profile));
                              add({Outcome::Kind::No},
                                  overall_prob_position(psi, complement(m.selection), m.profile));
                          }},
               spec);
    return dist;
}

MeasurementRecord measure(const State &state, const MeasurementSpec &spec, const SamplerContext &context,
                          Rng &rng, const State *initial) {
    const Reference reference(initial ? *initial : state, {spec}, context);
    return measure_with(state, spec, context, rng, reference);
}

MeasurementRecord sample_energy(const FockVector &state, const EnergyDetectionProfile &profile,
                                std::uint64_t seed) {
    Rng rng(seed);
    const SamplerContext context = SamplerContext::defaults(state.params(), state.n_max());
    const State initial = state;
    const MeasurementSpec spec = EnergyMeasurement{profile};
    const Reference reference(initial, {}, context);
    return measure_with(initial, spec, context, rng, reference);
}

MeasurementRecord sample_position(const GridWavefunction &state, const PositionBins &bins,
                                  const PositionDetectionProfile &profile, std::uint64_t seed) {
    Rng rng(seed);
    SamplerContext context{state.grid(), kDefaultTruncation, kDefaultH0, kDefaultQ0};
    const State initial = state;
    const MeasurementSpec spec = PositionMeasurement{bins, profile};
    const Reference reference(initial, {}, context);
    return measure_with(initial, spec, context, rng, reference);
}

std::vector<MeasurementRecord> run_sequence(const State &initial, const std::vector<MeasurementSpec> &specs,
                                            std::uint64_t seed, const SamplerContext &context) {
    if (specs.empty()) fail(ErrorCode::InvalidParameter, "measurement sequence is empty");
    Rng rng(seed);
    const Reference reference(initial, specs, context);
    return run_with(initial, specs, rng, context, reference, true);
}

unsigned resolve_thread_count(unsigned requested, std::size_t work_items) {
    unsigned threads = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    if (const char *env = std::getenv("ESR_OSC_THREADS")) {
        char *end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
    }
    if (work_items > 0) threads = static_cast<unsigned>(std::min<std::size_t>(threads, work_items));
    return std::max(1u, threads);
}

std::vector<std::vector<MeasurementRecord>> run_trials(const State &initial,
                                                       const std::vector<MeasurementSpec> &specs,
                                                       std::size_t trials, std::uint64_t seed,
                                                       const SamplerContext &context, unsigned threads,
                                                       bool keep_states) {
    if (specs.empty()) fail(ErrorCode::InvalidParameter, "measurement sequence is empty");
    if (trials == 0) fail(ErrorCode::InvalidParameter, "need at least one trial");
    const Reference reference(initial, specs, context);
    std::vector<std::vector<MeasurementRecord>> out(trials);
    parallel_for_trials(trials, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            Rng rng(derive_seed(seed, t));
            out[t] = run_with(initial, specs, rng, context, reference, keep_states);
        }
    });
    return out;
}

double EmpiricalDistribution::frequency(const std::string &label) const {
    const auto it = counts.find(label);
    if (it == counts.end() || trials == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(trials);
}

std::map<std::string, double> EmpiricalDistribution::frequencies() const {
    std::map<std::string, double> out;
    for (const auto &[label, count] : counts) out[label] = static_cast<double>(count) / static_cast<double>(trials);
    return out;
}

EmpiricalDistribution empirical_distribution(const State &initial, const MeasurementSpec &spec,
                                             std::size_t trials, std::uint64_t seed,
                                             const SamplerContext &context, unsigned threads) {
    if (trials == 0) fail(ErrorCode::InvalidParameter, "need at least one trial");
    const OutcomeDistribution dist = outcome_distribution(initial, spec, context);
    const unsigned workers = resolve_thread_count(threads, trials);
    std::vector<std::size_t> picks(trials);
    parallel_for_trials(trials, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            Rng rng(derive_seed(seed, t));
            picks[t] = dist.draw(uniform01(rng));
        }
    });
    EmpiricalDistribution out;
    out.trials = trials;
    std::vector<std::uint64_t> counts(dist.outcomes.size());
    for (std::size_t pick : picks) ++counts[pick];
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0) out.counts[dist.outcomes[i].label()] = counts[i];
    }
    return out;
}

void write_trajectory_csv(std::ostream &out, const std::vector<std::vector<MeasurementRecord>> &trials,
                          int significant_digits) {
    out << "trial,step,observable,outcome_label,outcome_value,probability_analytic\n";
    for (std::size_t t = 0; t < trials.size(); ++t) {
        for (std::size_t s = 0; s < trials[t].size(); ++s) {
            const MeasurementRecord &r = trials[t][s];
            out << t << ',' << s << ',' << (r.observable == Observable::Energy ? "energy" : "position") << ','
                << r.outcome.label() << ',' << format_double(r.outcome_value, significant_digits) << ','
                << format_double(r.probability, significant_digits) << '\n';
        }
    }
}

}  // namespace esr
