#include "esr/states.hpp"

#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "esr/error.hpp"
#include "esr/format.hpp"

namespace esr {

namespace {

constexpr double kZeroNorm = 1e-14;
constexpr double kGridNormTolerance = 1e-3;
constexpr double kTruncationTolerance = 1e-3;

std::vector<Complex> checked_finite(std::vector<Complex> v) {
    for (const Complex &c : v) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            fail(ErrorCode::InvalidParameter, "state amplitudes must be finite");
        }
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

double parse_number(const std::string &text, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception &) {
        fail(ErrorCode::ParseError, "bad number '" + text + "' on line " + std::to_string(line_no));
    }
}

// Reads the three numeric columns of a state CSV, skipping the header.
std::vector<std::array<double, 3>> read_rows(std::istream &in) {
    std::vector<std::array<double, 3>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            fail(ErrorCode::ParseError, "expected 3 columns on line " + std::to_string(line_no));
        }
        rows.push_back({parse_number(fields[0], line_no), parse_number(fields[1], line_no),
                        parse_number(fields[2], line_no)});
    }
    return rows;
}

}  // namespace

FockVector::FockVector(std::vector<Complex> amplitudes, OscillatorParams params, double tail_mass)
    : amplitudes_(checked_finite(std::move(amplitudes))), params_(params), tail_mass_(tail_mass) {
    if (amplitudes_.empty()) fail(ErrorCode::InvalidParameter, "Fock vector needs at least one amplitude");
    if (!(tail_mass_ >= 0.0) || tail_mass_ > 1.0) {
        fail(ErrorCode::InvalidParameter, "tail mass must lie in [0, 1]");
    }
}

FockVector FockVector::basis_state(std::size_t n, std::size_t n_max, OscillatorParams params) {
    if (n > n_max) {
        fail(ErrorCode::IndexBeyondTruncation,
             "level " + std::to_string(n) + " exceeds truncation " + std::to_string(n_max));
    }
    std::vector<Complex> c(n_max + 1, Complex{});
    c[n] = 1.0;
    return FockVector(std::move(c), params);
}

Complex FockVector::amplitude(std::size_t n) const {
    if (n > n_max()) {
        fail(ErrorCode::IndexBeyondTruncation,
             "level " + std::to_string(n) + " exceeds truncation " + std::to_string(n_max()));
    }
    return amplitudes_[n];
}

double FockVector::norm_squared() const noexcept {
    double sum = 0.0;
    for (const Complex &c : amplitudes_) sum += std::norm(c);
    return sum;
}

GridWavefunction::GridWavefunction(std::vector<Complex> samples, Grid grid, OscillatorParams params)
    : samples_(checked_finite(std::move(samples))), grid_(grid), params_(params) {
    if (samples_.size() != grid_.point_count()) {
        fail(ErrorCode::LengthMismatch, "sample count " + std::to_string(samples_.size()) +
                                            " != grid size " + std::to_string(grid_.point_count()));
    }
}

std::vector<double> GridWavefunction::density() const {
    std::vector<double> out(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) out[i] = std::norm(samples_[i]);
    return out;
}

double GridWavefunction::norm_squared() const { return integrate_grid(density(), grid_); }

GridWavefunction fock_to_position(const FockVector &state, const Grid &grid) {
    const std::size_t n_max = state.n_max();
    const auto c = state.amplitudes();
    std::vector<Complex> samples(grid.point_count());
    std::vector<double> phi;
    for (std::size_t i = 0; i < grid.point_count(); ++i) {
        hermite_functions(n_max, grid.node(i), state.params(), phi);
        Complex sum{};
        for (std::size_t n = 0; n <= n_max; ++n) sum += c[n] * phi[n];
        samples[i] = sum;
    }
    GridWavefunction wf(std::move(samples), grid, state.params());
    const double norm = wf.norm_squared();
    if (std::abs(norm - state.norm_squared()) > kGridNormTolerance) {
        fail(ErrorCode::GridTooSmall,
             "grid [" + format_double(grid.q_min(), 6) + ", " + format_double(grid.q_max(), 6) +
                 "] with " + std::to_string(grid.point_count()) + " points loses norm: " +
                 format_double(norm, 10));
    }
    return wf;
}

FockVector position_to_fock(const GridWavefunction &wf, std::size_t n_max) {
    const Grid &grid = wf.grid();
    const auto psi = wf.samples();
    std::vector<Complex> c(n_max + 1, Complex{});
    std::vector<double> phi;
    const double h = grid.spacing();
    const std::size_t last = grid.point_count() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
        hermite_functions(n_max, grid.node(i), wf.params(), phi);
        const double weight = (i == 0 || i == last) ? 0.5 * h : h;
        for (std::size_t n = 0; n <= n_max; ++n) c[n] += weight * phi[n] * psi[i];
    }
    double captured = 0.0;
    for (const Complex &v : c) captured += std::norm(v);
    const double total = wf.norm_squared();
    if (captured < total * (1.0 - kTruncationTolerance)) {
        fail(ErrorCode::TruncationLoss, "levels 0.." + std::to_string(n_max) + " capture only " +
                                            format_double(captured / total, 10) + " of the norm");
    }
    if (captured < kZeroNorm) fail(ErrorCode::ZeroNorm, "projected state has zero norm");
    const double tail = std::max(0.0, 1.0 - captured / total);
    const double scale = 1.0 / std::sqrt(captured);
    for (Complex &v : c) v *= scale;
    return FockVector(std::move(c), wf.params(), tail);
}

Complex inner_product(const FockVector &a, const FockVector &b) {
    if (a.size() != b.size() || !(a.params() == b.params())) {
        fail(ErrorCode::RepresentationMismatch, "Fock vectors differ in truncation or oscillator");
    }
    Complex sum{};
    const auto ca = a.amplitudes();
    const auto cb = b.amplitudes();
    for (std::size_t n = 0; n < ca.size(); ++n) sum += std::conj(ca[n]) * cb[n];
    return sum;
}

Complex inner_product(const GridWavefunction &a, const GridWavefunction &b) {
    if (!(a.grid() == b.grid()) || !(a.params() == b.params())) {
        fail(ErrorCode::RepresentationMismatch, "wavefunctions live on different grids");
    }
    const auto sa = a.samples();
    const auto sb = b.samples();
    std::vector<Complex> product(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) product[i] = std::conj(sa[i]) * sb[i];
    return integrate_grid(std::span<const Complex>(product), a.grid());
}

double fidelity(const FockVector &a, const FockVector &b) { return std::abs(inner_product(a, b)); }

double fidelity(const GridWavefunction &a, const GridWavefunction &b) {
    return std::abs(inner_product(a, b));
}

FockVector normalize(const FockVector &state) {
    const double norm = std::sqrt(state.norm_squared());
    if (norm < kZeroNorm) fail(ErrorCode::ZeroNorm, "cannot normalize a zero Fock vector");
    std::vector<Complex> c(state.amplitudes().begin(), state.amplitudes().end());
    for (Complex &v : c) v /= norm;
    return FockVector(std::move(c), state.params(), state.tail_mass());
}

GridWavefunction normalize(const GridWavefunction &state) {
    const double norm = std::sqrt(state.norm_squared());
    if (norm < kZeroNorm) fail(ErrorCode::ZeroNorm, "cannot normalize a zero wavefunction");
    std::vector<Complex> s(state.samples().begin(), state.samples().end());
    for (Complex &v : s) v /= norm;
    return GridWavefunction(std::move(s), state.grid(), state.params());
}

void write_fock_csv(std::ostream &out, const FockVector &state) {
    out << "n,re,im\n";
    const auto c = state.amplitudes();
    for (std::size_t n = 0; n < c.size(); ++n) {
        out << n << ',' << format_double(c[n].real(), kRoundTripDigits) << ','
            << format_double(c[n].imag(), kRoundTripDigits) << '\n';
    }
}

FockVector read_fock_csv(std::istream &in, OscillatorParams params) {
    const auto rows = read_rows(in);
    if (rows.empty()) fail(ErrorCode::ParseError, "state CSV has no rows");
    std::vector<Complex> c(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][0] != static_cast<double>(i)) {
            fail(ErrorCode::ParseError, "state CSV rows must list n = 0, 1, 2, ... in order");
        }
        c[i] = Complex(rows[i][1], rows[i][2]);
    }
    return FockVector(std::move(c), params);
}

void write_grid_csv(std::ostream &out, const GridWavefunction &state) {
    out << "q,re,im\n";
    const auto s = state.samples();
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << format_double(state.grid().node(i), kRoundTripDigits) << ','
            << format_double(s[i].real(), kRoundTripDigits) << ','
            << format_double(s[i].imag(), kRoundTripDigits) << '\n';
    }
}

GridWavefunction read_grid_csv(std::istream &in, OscillatorParams params) {
    const auto rows = read_rows(in);
    if (rows.size() < 3) fail(ErrorCode::ParseError, "grid CSV needs at least 3 rows");
    const Grid grid(rows.front()[0], rows.back()[0], rows.size());
    std::vector<Complex> s(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::abs(rows[i][0] - grid.node(i)) > 1e-9 * grid.spacing() + 1e-300) {
            fail(ErrorCode::ParseError, "grid CSV q column is not uniformly spaced");
        }
        s[i] = Complex(rows[i][1], rows[i][2]);
    }
    return GridWavefunction(std::move(s), grid, params);
}

}  // namespace esr
