#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "esr/error.hpp"
#include "esr/expectations.hpp"
#include "esr/format.hpp"

namespace esr::cli {

namespace {

// Magnitudes below this are round-off and would make output platform dependent.
constexpr double kPrintZero = 1e-13;

std::string num(double v) { return format_double(std::abs(v) < kPrintZero ? 0.0 : v, kTableDigits); }

std::string bin_label(const PositionBins &bins, std::size_t k) {
    const Interval iv = bins.bin(k);
    return "bin" + std::to_string(k) + "[" + num(iv.lo) + ";" + num(iv.hi) + (k + 1 == bins.size() ? "]" : ")");
}

}  // namespace

void write_probs(const RunConfig &config, std::ostream &out) {
    out << "observable,outcome,value,conditional,detection,overall,factorization_residual\n";
    if (config.energy_rows) {
        const FockVector &psi = config.state;
        for (std::size_t n = 0; n <= psi.n_max(); ++n) {
            const double cond = conditional_prob_energy(psi, n);
            const double det = config.energy_profile(n);
            const double overall = overall_prob_energy(psi, n, config.energy_profile);
            out << "energy,E" << n << ',' << num(energy_eigenvalue(n, config.params)) << ',' << num(cond) << ','
                << num(det) << ',' << num(overall) << ',' << num(overall - det * cond) << '\n';
        }
        out << "energy,no-registration," << num(config.h0) << ",,,"
            << num(no_detection_prob_energy(psi, config.energy_profile)) << ",\n";
    }
    if (config.position_rows) {
        const GridWavefunction wf = fock_to_position(config.state, config.grid);
        const BinProbabilities probs = bin_probabilities(wf, config.bins, config.position_profile);
        for (std::size_t k = 0; k < config.bins.size(); ++k) {
            const double cond = probs.conditional[k];
            const double overall = probs.overall[k];
            // Effective p^d(F) for the bin property, so that p^t = p^d p.
            const bool defined = cond > 0.0;
            const double det = defined ? overall / cond : 0.0;
            out << "position," << bin_label(config.bins, k) << ',' << num(config.bins.midpoint(k, config.grid))
                << ',' << num(cond) << ',' << (defined ? num(det) : "") << ',' << num(overall) << ','
                << (defined ? num(overall - det * cond) : "") << '\n';
        }
        out << "position,no-registration," << num(config.q0) << ",,," << num(probs.no_detection) << ",\n";
    }
}

void write_expect(const RunConfig &config, std::ostream &out) {
    const FockVector &psi = config.state;
    const GridWavefunction wf = fock_to_position(psi, config.grid);
    out << "quantity,value\n";
    out << "expect_H," << num(expectation_H(psi)) << '\n';
    out << "expect_H0," << num(expectation_H0(psi, config.energy_profile, config.h0)) << '\n';
    out << "gap_H," << num(expectation_gap_H(psi, config.energy_profile)) << '\n';
    out << "expect_Q," << num(expectation_Q(wf)) << '\n';
    out << "expect_Q0," << num(expectation_Q0(wf, config.position_profile, config.q0)) << '\n';
    out << "gap_Q_consistent," << num(expectation_gap_Q(wf, config.position_profile, PositionGapForm::Consistent))
        << '\n';
    out << "gap_Q_as_printed," << num(expectation_gap_Q(wf, config.position_profile, PositionGapForm::AsPrinted))
        << '\n';
}

void write_collapse(const RunConfig &config, std::ostream &out) {
    if (!config.collapse) fail(ErrorCode::ParseError, "config has no 'collapse' section");
    const CollapseRequest &req = *config.collapse;
    using Branch = CollapseRequest::Branch;
    if (req.observable == Observable::Energy) {
        const FockVector &psi = config.state;
        switch (req.branch) {
            case Branch::Outcome: write_fock_csv(out, collapse_energy_outcome(psi, req.level)); return;
            case Branch::NoDetection:
                write_fock_csv(out, collapse_energy_no_detection(psi, config.energy_profile));
                return;
            case Branch::Yes:
            case Branch::No:
                write_fock_csv(out, gpp_energy_property(psi, *req.energy_selection, config.energy_profile,
                                                        req.branch == Branch::Yes ? Answer::Yes : Answer::No));
                return;
        }
    }
    const GridWavefunction wf = fock_to_position(config.state, config.grid);
    switch (req.branch) {
        case Branch::NoDetection:
            write_grid_csv(out, collapse_position_no_detection(wf, config.position_profile));
            return;
        case Branch::Yes:
            write_grid_csv(out, collapse_position_yes(wf, *req.position_selection, config.position_profile));
            return;
        case Branch::No:
            write_grid_csv(out, gpp_position_property(wf, *req.position_selection, config.position_profile,
                                                      Answer::No));
            return;
        case Branch::Outcome: break;
    }
    fail(ErrorCode::ParseError, "unsupported collapse request");
}

void write_sample(const RunConfig &config, std::ostream &out) {
    if (!config.sample) fail(ErrorCode::ParseError, "config has no 'sample' section");
    const SampleRequest &req = *config.sample;
    const auto trials = run_trials(State(config.state), req.sequence, req.trials, config.seed,
                                   config.sampler_context(), req.threads);
    out << "# rng=" << kRngAlgorithm << " seed=" << config.seed << " trials=" << req.trials << '\n';
    write_trajectory_csv(out, trials, kTableDigits);
}

void write_compare(const RunConfig &config, std::ostream &out) {
    out << "observable,quantity,qm,esr,difference\n";
    const auto row = [&](const char *obs, const std::string &quantity, double qm, double esr) {
        out << obs << ',' << quantity << ',' << num(qm) << ',' << num(esr) << ',' << num(esr - qm) << '\n';
    };
    const FockVector &psi = config.state;
    if (config.energy_rows) {
        for (std::size_t n = 0; n <= psi.n_max(); ++n) {
            row("energy", "P(E" + std::to_string(n) + ")", conditional_prob_energy(psi, n),
                overall_prob_energy(psi, n, config.energy_profile));
        }
        row("energy", "P(no-registration)", 0.0, no_detection_prob_energy(psi, config.energy_profile));
        row("energy", "expectation", expectation_H(psi), expectation_H0(psi, config.energy_profile, config.h0));
    }
    if (config.position_rows) {
        const GridWavefunction wf = fock_to_position(psi, config.grid);
        const BinProbabilities probs = bin_probabilities(wf, config.bins, config.position_profile);
        for (std::size_t k = 0; k < config.bins.size(); ++k) {
            row("position", "P(" + bin_label(config.bins, k) + ")", probs.conditional[k], probs.overall[k]);
        }
        row("position", "P(no-registration)", 0.0, probs.no_detection);
        row("position", "expectation", expectation_Q(wf), expectation_Q0(wf, config.position_profile, config.q0));
    }
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"ESR generalized observables for the quantum harmonic oscillator", "esr-osc"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;

    const std::map<std::string, std::pair<std::string, std::function<void(const RunConfig &, std::ostream &)>>>
        commands{
            {"probs", {"conditional, detection and overall outcome probabilities", write_probs}},
            {"expect", {"standard and generalized expectation values and their gaps", write_expect}},
            {"collapse", {"post-measurement state for one branch, as state CSV", write_collapse}},
            {"sample", {"Monte Carlo measurement trajectories, as CSV", write_sample}},
            {"compare", {"standard vs generalized predictions side by side", write_compare}},
        };
    for (const auto &[name, entry] : commands) {
        CLI::App *sub = app.add_subcommand(name, entry.first);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--seed", seed, "override the configured RNG seed");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        // Help requests carry exit code 0; every other parse failure is a usage error.
        return app.exit(e, out, err) == 0 ? kExitOk : kExitConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        RunConfig config = load_run_config(config_path);
        if (seed) config.seed = *seed;
        // Buffered so a failing command leaves no partial output behind.
        std::ostringstream buffer;
        commands.at(command).second(config, buffer);
        if (out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!(file << buffer.str())) fail(ErrorCode::ParseError, "cannot write output file '" + out_path + "'");
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return is_input_error(e.code()) ? kExitConfigError : kExitNumericalFailure;
    }
    return kExitOk;
}

}  // namespace esr::cli
