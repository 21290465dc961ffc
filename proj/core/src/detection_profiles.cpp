#include "esr/detection_profiles.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "esr/error.hpp"
#include "esr/format.hpp"

namespace esr {

namespace {

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

void require_probability(double p, const char *name) {
    if (!in_unit_interval(p)) {
        fail(ErrorCode::OutOfRange, std::string(name) + " = " + format_double(p, 17) + " is outside [0, 1]");
    }
}

double checked(double p) {
    if (!in_unit_interval(p)) {
        fail(ErrorCode::OutOfRange, "detection probability " + format_double(p, 17) + " escaped [0, 1]");
    }
    return p;
}

using json = nlohmann::json;

json parse_config(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception &e) {
        fail(ErrorCode::ParseError, std::string("profile config: ") + e.what());
    }
}

double number_field(const json &doc, const char *key) {
    const auto it = doc.find(key);
    if (it == doc.end() || !it->is_number()) {
        fail(ErrorCode::ParseError, std::string("profile config needs numeric field '") + key + "'");
    }
    return it->get<double>();
}

std::string kind_field(const json &doc) {
    if (!doc.is_object()) fail(ErrorCode::ParseError, "profile config must be a JSON object");
    const auto it = doc.find("kind");
    if (it == doc.end() || !it->is_string()) fail(ErrorCode::ParseError, "profile config needs a 'kind' string");
    return it->get<std::string>();
}

std::vector<std::pair<double, double>> table_field(const json &doc) {
    const auto it = doc.find("table");
    if (it == doc.end() || !it->is_array()) fail(ErrorCode::ParseError, "table profile needs a 'table' array");
    std::vector<std::pair<double, double>> knots;
    for (const json &row : *it) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
            fail(ErrorCode::ParseError, "table rows must be [x, p] number pairs");
        }
        knots.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return knots;
}

json knots_json(const PiecewiseLinear &table) {
    json rows = json::array();
    for (const auto &[x, p] : table.knots()) rows.push_back(json::array({x, p}));
    return rows;
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
    if (knots_.empty()) fail(ErrorCode::ParseError, "table profile needs at least one knot");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (!std::isfinite(knots_[i].first)) fail(ErrorCode::ParseError, "table abscissae must be finite");
        require_probability(knots_[i].second, "table value");
        if (i > 0 && knots_[i].first < knots_[i - 1].first) {
            fail(ErrorCode::ParseError, "table abscissae must be non-decreasing");
        }
    }
}

double PiecewiseLinear::operator()(double x) const noexcept {
    const auto upper = std::upper_bound(knots_.begin(), knots_.end(), x,
                                        [](double v, const auto &knot) { return v < knot.first; });
    if (upper == knots_.begin()) return knots_.front().second;
    if (upper == knots_.end()) return knots_.back().second;
    const auto &[x0, p0] = *(upper - 1);
    const auto &[x1, p1] = *upper;
    if (x == x0) return p0;
    const double t = (x - x0) / (x1 - x0);
    return p0 + t * (p1 - p0);
}

EnergyDetectionProfile::EnergyDetectionProfile(Kind kind, double a, double b, PiecewiseLinear table)
    : kind_(kind), a_(a), b_(b), table_(std::move(table)) {}

EnergyDetectionProfile EnergyDetectionProfile::constant(double p) {
    require_probability(p, "p");
    return {Kind::Constant, p, 1.0, {}};
}

EnergyDetectionProfile EnergyDetectionProfile::geometric(double p0, double r) {
    require_probability(p0, "p0");
    if (!(r > 0.0 && r <= 1.0)) fail(ErrorCode::OutOfRange, "geometric ratio r must lie in (0, 1]");
    return {Kind::GeometricDecay, p0, r, {}};
}

EnergyDetectionProfile EnergyDetectionProfile::table(std::vector<std::pair<double, double>> knots) {
    return {Kind::Table, 0.0, 0.0, PiecewiseLinear(std::move(knots))};
}

double EnergyDetectionProfile::operator()(std::size_t n) const {
    switch (kind_) {
        case Kind::Constant: return checked(a_);
        case Kind::GeometricDecay: return checked(a_ * std::pow(b_, static_cast<double>(n)));
        case Kind::Table: return checked(table_(static_cast<double>(n)));
    }
    return checked(-1.0);
}

PositionDetectionProfile::PositionDetectionProfile(Kind kind, double p, double center, double width,
                                                   PiecewiseLinear table)
    : kind_(kind), p_(p), center_(center), width_(width), table_(std::move(table)) {}

PositionDetectionProfile PositionDetectionProfile::constant(double p) {
    require_probability(p, "p");
    return {Kind::Constant, p, 0.0, 0.0, {}};
}

PositionDetectionProfile PositionDetectionProfile::gaussian_window(double p_max, double center, double width) {
    require_probability(p_max, "p_max");
    if (!std::isfinite(center)) fail(ErrorCode::OutOfRange, "window center must be finite");
    if (!(width > 0.0) || !std::isfinite(width)) fail(ErrorCode::OutOfRange, "window width must be positive");
    return {Kind::GaussianWindow, p_max, center, width, {}};
}

PositionDetectionProfile PositionDetectionProfile::table(std::vector<std::pair<double, double>> knots) {
    return {Kind::Table, 0.0, 0.0, 0.0, PiecewiseLinear(std::move(knots))};
}

double PositionDetectionProfile::operator()(double q) const {
    switch (kind_) {
        case Kind::Constant: return checked(p_);
        case Kind::GaussianWindow: {
            const double z = (q - center_) / width_;
            return checked(p_ * std::exp(-0.5 * z * z));
        }
        case Kind::Table: return checked(table_(q));
    }
    return checked(-1.0);
}

EnergyDetectionProfile make_constant_energy_profile(double p) { return EnergyDetectionProfile::constant(p); }

PositionDetectionProfile make_constant_position_profile(double p) {
    return PositionDetectionProfile::constant(p);
}

EnergyDetectionProfile make_geometric_profile(double p0, double r) {
    return EnergyDetectionProfile::geometric(p0, r);
}

PositionDetectionProfile make_gaussian_window_profile(double p_max, double center, double width) {
    return PositionDetectionProfile::gaussian_window(p_max, center, width);
}

EnergyDetectionProfile load_energy_profile(std::string_view config_text) {
    const json doc = parse_config(config_text);
    const std::string kind = kind_field(doc);
    if (kind == "constant") return EnergyDetectionProfile::constant(number_field(doc, "p"));
    if (kind == "geometric-decay" || kind == "geometric") {
        return EnergyDetectionProfile::geometric(number_field(doc, "p0"), number_field(doc, "r"));
    }
    if (kind == "table") return EnergyDetectionProfile::table(table_field(doc));
    fail(ErrorCode::ParseError, "unknown energy profile kind '" + kind + "'");
}

PositionDetectionProfile load_position_profile(std::string_view config_text) {
    const json doc = parse_config(config_text);
    const std::string kind = kind_field(doc);
    if (kind == "constant") return PositionDetectionProfile::constant(number_field(doc, "p"));
    if (kind == "gaussian-window") {
        const double center = doc.contains("center") ? number_field(doc, "center") : 0.0;
        return PositionDetectionProfile::gaussian_window(number_field(doc, "p_max"), center,
                                                         number_field(doc, "width"));
    }
    if (kind == "table" || kind == "piecewise-linear") return PositionDetectionProfile::table(table_field(doc));
    fail(ErrorCode::ParseError, "unknown position profile kind '" + kind + "'");
}

std::string to_json(const EnergyDetectionProfile &profile) {
    json doc;
    switch (profile.kind()) {
        case EnergyDetectionProfile::Kind::Constant:
            doc = {{"kind", "constant"}, {"p", profile.p()}};
            break;
        case EnergyDetectionProfile::Kind::GeometricDecay:
            doc = {{"kind", "geometric-decay"}, {"p0", profile.p0()}, {"r", profile.ratio()}};
            break;
        case EnergyDetectionProfile::Kind::Table:
            doc = {{"kind", "table"}, {"table", knots_json(profile.knots())}};
            break;
    }
    return doc.dump();
}

std::string to_json(const PositionDetectionProfile &profile) {
    json doc;
    switch (profile.kind()) {
        case PositionDetectionProfile::Kind::Constant:
            doc = {{"kind", "constant"}, {"p", profile.p()}};
            break;
        case PositionDetectionProfile::Kind::GaussianWindow:
            doc = {{"kind", "gaussian-window"},
                   {"p_max", profile.p()},
                   {"center", profile.center()},
                   {"width", profile.width()}};
            break;
        case PositionDetectionProfile::Kind::Table:
            doc = {{"kind", "table"}, {"table", knots_json(profile.knots())}};
            break;
    }
    return doc.dump();
}

}  // namespace esr
