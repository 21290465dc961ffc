#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "esr/fock_basis.hpp"

namespace esr {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultTruncation = 64;

/// Pure state as amplitudes c_n = <phi_n|psi> for n = 0..n_max.
///
/// `tail_mass` is the probability weight that was discarded when the state
/// was truncated to the retained basis (zero for states built directly from
/// coefficients). Completeness checks downstream add it to their tolerance.
class FockVector {
public:
    FockVector(std::vector<Complex> amplitudes, OscillatorParams params = {}, double tail_mass = 0.0);

    static FockVector basis_state(std::size_t n, std::size_t n_max = kDefaultTruncation,
                                  OscillatorParams params = {});

    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    Complex amplitude(std::size_t n) const;
    std::size_t n_max() const noexcept { return amplitudes_.size() - 1; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    const OscillatorParams &params() const noexcept { return params_; }
    double tail_mass() const noexcept { return tail_mass_; }

    double norm_squared() const noexcept;

private:
    std::vector<Complex> amplitudes_;
    OscillatorParams params_;
    double tail_mass_;
};

/// Pure state sampled as psi(q_i) on a uniform grid.
class GridWavefunction {
public:
    GridWavefunction(std::vector<Complex> samples, Grid grid, OscillatorParams params = {});

    std::span<const Complex> samples() const noexcept { return samples_; }
    const Grid &grid() const noexcept { return grid_; }
    const OscillatorParams &params() const noexcept { return params_; }

    /// |psi(q_i)|^2 at every node.
    std::vector<double> density() const;
    double norm_squared() const;

private:
    std::vector<Complex> samples_;
    Grid grid_;
    OscillatorParams params_;
};

GridWavefunction fock_to_position(const FockVector &state, const Grid &grid);
FockVector position_to_fock(const GridWavefunction &wf, std::size_t n_max = kDefaultTruncation);

Complex inner_product(const FockVector &a, const FockVector &b);
Complex inner_product(const GridWavefunction &a, const GridWavefunction &b);

/// |<a|b>|; global phase is never canonicalized, so states are compared this way.
double fidelity(const FockVector &a, const FockVector &b);
double fidelity(const GridWavefunction &a, const GridWavefunction &b);

FockVector normalize(const FockVector &state);
GridWavefunction normalize(const GridWavefunction &state);

// CSV with header "n,re,im" / "q,re,im"; values written at full precision.
void write_fock_csv(std::ostream &out, const FockVector &state);
FockVector read_fock_csv(std::istream &in, OscillatorParams params = {});
void write_grid_csv(std::ostream &out, const GridWavefunction &state);
GridWavefunction read_grid_csv(std::istream &in, OscillatorParams params = {});

}  // namespace esr
