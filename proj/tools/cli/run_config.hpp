#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esr/detection_profiles.hpp"
#include "esr/energy_observable.hpp"
#include "esr/fock_basis.hpp"
#include "esr/position_observable.hpp"
#include "esr/sampler.hpp"
#include "esr/states.hpp"

namespace esr::cli {

/// Which branch `collapse` writes out.
struct CollapseRequest {
    enum class Branch { Outcome, NoDetection, Yes, No };
    Observable observable = Observable::Energy;
    Branch branch = Branch::Outcome;
    std::size_t level = 0;  // energy outcome branch
    std::optional<EnergySelection> energy_selection;
    std::optional<IntervalUnion> position_selection;
};

struct SampleRequest {
    std::size_t trials = 1;
    unsigned threads = 1;
    std::vector<MeasurementSpec> sequence;
};

/// Everything one invocation needs, parsed from a single JSON document.
struct RunConfig {
    OscillatorParams params;
    std::size_t n_max = kDefaultTruncation;
    Grid grid = default_grid(OscillatorParams{}, kDefaultTruncation);
    FockVector state = FockVector::basis_state(0);
    EnergyDetectionProfile energy_profile = EnergyDetectionProfile::constant(1.0);
    PositionDetectionProfile position_profile = PositionDetectionProfile::constant(1.0);
    double h0 = kDefaultH0;
    double q0 = kDefaultQ0;
    PositionBins bins{{-std::numeric_limits<double>::infinity(), -2.0, -1.0, 0.0, 1.0, 2.0,
                       std::numeric_limits<double>::infinity()}};
    bool energy_rows = true;
    bool position_rows = true;
    std::uint64_t seed = 0;
    std::optional<CollapseRequest> collapse;
    std::optional<SampleRequest> sample;

    SamplerContext sampler_context() const { return {grid, n_max, h0, q0}; }
};

/// Throws esr::Error (ParseError, OutOfRange, ...) on malformed input.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::string &path);

}  // namespace esr::cli
