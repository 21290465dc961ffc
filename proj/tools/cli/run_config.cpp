#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "esr/error.hpp"

namespace esr::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void config_error(const std::string &what) { fail(ErrorCode::ParseError, what); }

const json *find(const json &doc, const char *key) {
    const auto it = doc.find(key);
    return it == doc.end() || it->is_null() ? nullptr : &*it;
}

double number(const json &value, const std::string &where) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        const std::string s = value.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    config_error(where + " must be a number (or \"inf\" / \"-inf\")");
}

double number_or(const json &doc, const char *key, double fallback) {
    const json *v = find(doc, key);
    return v ? number(*v, key) : fallback;
}

std::size_t count(const json &value, const std::string &where) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        config_error(where + " must be a non-negative integer");
    }
    return value.get<std::size_t>();
}

bool flag_or(const json &doc, const char *key, bool fallback) {
    const json *v = find(doc, key);
    if (!v) return fallback;
    if (!v->is_boolean()) config_error(std::string(key) + " must be true or false");
    return v->get<bool>();
}

std::vector<Interval> intervals(const json &value, const std::string &where) {
    if (!value.is_array()) config_error(where + " must be an array of [lo, hi] pairs");
    std::vector<Interval> out;
    for (const json &row : value) {
        if (!row.is_array() || row.size() != 2) config_error(where + " entries must be [lo, hi] pairs");
        out.push_back({number(row[0], where), number(row[1], where)});
    }
    return out;
}

std::vector<std::size_t> levels(const json &value) {
    if (!value.is_array()) config_error("levels must be an array of level indices");
    std::vector<std::size_t> out;
    for (const json &n : value) out.push_back(count(n, "levels entry"));
    return out;
}

FockVector parse_state(const json &doc, std::size_t n_max, const OscillatorParams &params) {
    if (!doc.is_object()) config_error("state must be an object");
    if (const json *coeffs = find(doc, "coefficients")) {
        if (!coeffs->is_array() || coeffs->empty()) config_error("state.coefficients must be a non-empty array");
        if (coeffs->size() > n_max + 1) config_error("state.coefficients has more entries than n_max + 1");
        std::vector<Complex> c(n_max + 1);
        for (std::size_t n = 0; n < coeffs->size(); ++n) {
            const json &v = (*coeffs)[n];
            if (v.is_array() && v.size() == 2) {
                c[n] = Complex(number(v[0], "coefficient"), number(v[1], "coefficient"));
            } else {
                c[n] = number(v, "coefficient");
            }
        }
        return normalize(FockVector(std::move(c), params));
    }
    const json *preset = find(doc, "preset");
    if (!preset || !preset->is_string()) config_error("state needs 'coefficients' or a 'preset' string");
    const std::string name = preset->get<std::string>();
    if (name == "ground") return FockVector::basis_state(0, n_max, params);
    if (name == "superposition") {
        if (n_max < 1) config_error("superposition preset needs n_max >= 1");
        std::vector<Complex> c(n_max + 1);
        c[0] = c[1] = 1.0 / std::sqrt(2.0);
        return FockVector(std::move(c), params);
    }
    if (name == "level") {
        const json *n = find(doc, "n");
        if (!n) config_error("level preset needs 'n'");
        return FockVector::basis_state(count(*n, "state.n"), n_max, params);
    }
    config_error("unknown state preset '" + name + "'");
}

EnergySelection parse_energy_selection(const json &doc) {
    const bool h0 = flag_or(doc, "includes_h0", false);
    const bool comp = flag_or(doc, "complement", false);
    const json *lv = find(doc, "levels");
    const std::vector<std::size_t> list = lv ? levels(*lv) : std::vector<std::size_t>{};
    return comp ? EnergySelection::complement_of(list, h0) : EnergySelection::of(list, h0);
}

IntervalUnion parse_interval_union(const json &doc) {
    const bool q0 = flag_or(doc, "includes_q0", false);
    const bool comp = flag_or(doc, "complement", false);
    const json *iv = find(doc, "intervals");
    std::vector<Interval> list = iv ? intervals(*iv, "intervals") : std::vector<Interval>{};
    return comp ? IntervalUnion::complement_of(std::move(list), q0) : IntervalUnion::of(std::move(list), q0);
}

Observable parse_observable(const json &doc, const char *where) {
    const json *o = find(doc, "observable");
    if (!o || !o->is_string()) config_error(std::string(where) + " needs an 'observable' string");
    const std::string name = o->get<std::string>();
    if (name == "energy") return Observable::Energy;
    if (name == "position") return Observable::Position;
    config_error(std::string(where) + ": unknown observable '" + name + "'");
}

CollapseRequest parse_collapse(const json &doc) {
    if (!doc.is_object()) config_error("collapse must be an object");
    CollapseRequest req;
    req.observable = parse_observable(doc, "collapse");
    const json *branch = find(doc, "branch");
    if (!branch || !branch->is_string()) config_error("collapse needs a 'branch' string");
    const std::string b = branch->get<std::string>();
    if (b == "outcome") {
        if (req.observable != Observable::Energy) {
            config_error("collapse branch 'outcome' is energy-only; use 'yes' with intervals for position");
        }
        req.branch = CollapseRequest::Branch::Outcome;
        const json *n = find(doc, "n");
        if (!n) config_error("collapse outcome branch needs 'n'");
        req.level = count(*n, "collapse.n");
    } else if (b == "no-detection") {
        req.branch = CollapseRequest::Branch::NoDetection;
    } else if (b == "yes" || b == "no") {
        req.branch = b == "yes" ? CollapseRequest::Branch::Yes : CollapseRequest::Branch::No;
        if (req.observable == Observable::Energy) {
            req.energy_selection = parse_energy_selection(doc);
        } else {
            req.position_selection = parse_interval_union(doc);
        }
    } else {
        config_error("unknown collapse branch '" + b + "'");
    }
    return req;
}

SampleRequest parse_sample(const json &doc, const RunConfig &config) {
    if (!doc.is_object()) config_error("sample must be an object");
    SampleRequest req;
    if (const json *t = find(doc, "trials")) req.trials = count(*t, "sample.trials");
    if (req.trials == 0) config_error("sample.trials must be positive");
    if (const json *t = find(doc, "threads")) req.threads = static_cast<unsigned>(count(*t, "sample.threads"));
    const json *seq = find(doc, "sequence");
    if (!seq || !seq->is_array() || seq->empty()) config_error("sample needs a non-empty 'sequence' array");
    for (const json &step : *seq) {
        if (!step.is_object()) config_error("sequence entries must be objects");
        const Observable obs = parse_observable(step, "sequence entry");
        const bool property = find(step, "levels") || find(step, "intervals") || find(step, "complement");
        if (obs == Observable::Energy) {
            if (property) {
                req.sequence.emplace_back(EnergyPropertyMeasurement{parse_energy_selection(step), config.energy_profile});
            } else {
                req.sequence.emplace_back(EnergyMeasurement{config.energy_profile});
            }
        } else if (property) {
            req.sequence.emplace_back(PositionPropertyMeasurement{parse_interval_union(step), config.position_profile});
        } else {
            const json *bins = find(step, "bins");
            req.sequence.emplace_back(PositionMeasurement{
                bins ? PositionBins::from_intervals(intervals(*bins, "bins")) : config.bins, config.position_profile});
        }
    }
    return req;
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::exception &e) {
        config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) config_error("config must be a JSON object");

    RunConfig config;
    if (const json *osc = find(doc, "oscillator")) {
        config.params = OscillatorParams(number_or(*osc, "mass", 1.0), number_or(*osc, "omega", 1.0),
                                         number_or(*osc, "hbar", 1.0));
    }
    if (const json *n = find(doc, "n_max")) config.n_max = count(*n, "n_max");
    config.grid = default_grid(config.params, config.n_max);
    if (const json *g = find(doc, "grid")) {
        const double extent = config.grid.q_max();
        const json *points = find(*g, "points");
        config.grid = build_grid(number_or(*g, "q_min", -extent), number_or(*g, "q_max", extent),
                                 points ? count(*points, "grid.points") : kDefaultGridPoints);
    }
    const json *state = find(doc, "state");
    config.state = state ? parse_state(*state, config.n_max, config.params)
                         : FockVector::basis_state(0, config.n_max, config.params);
    if (const json *p = find(doc, "energy_profile")) config.energy_profile = load_energy_profile(p->dump());
    if (const json *p = find(doc, "position_profile")) config.position_profile = load_position_profile(p->dump());
    config.h0 = number_or(doc, "h0", kDefaultH0);
    validate_no_registration_energy(config.h0, config.params);
    config.q0 = number_or(doc, "q0", kDefaultQ0);
    if (const json *b = find(doc, "position_bins")) {
        config.bins = PositionBins::from_intervals(intervals(*b, "position_bins"));
    }
    if (const json *obs = find(doc, "observables")) {
        if (!obs->is_array()) config_error("observables must be an array");
        config.energy_rows = config.position_rows = false;
        for (const json &o : *obs) {
            if (o == "energy") {
                config.energy_rows = true;
            } else if (o == "position") {
                config.position_rows = true;
            } else {
                config_error("observables entries must be \"energy\" or \"position\"");
            }
        }
    }
    if (const json *s = find(doc, "seed")) {
        if (!s->is_number_unsigned()) config_error("seed must be a non-negative integer");
        config.seed = s->get<std::uint64_t>();
    }
    if (const json *c = find(doc, "collapse")) config.collapse = parse_collapse(*c);
    if (const json *s = find(doc, "sample")) config.sample = parse_sample(*s, config);
    return config;
}

RunConfig load_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

}  // namespace esr::cli
