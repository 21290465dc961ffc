#include "esr/expectations.hpp"

#include <cmath>

#include "esr/energy_observable.hpp"
#include "esr/fock_basis.hpp"

namespace esr {

double expectation_H(const FockVector &state) {
    double sum = 0.0;
    const auto c = state.amplitudes();
    for (std::size_t n = 0; n < c.size(); ++n) sum += energy_eigenvalue(n, state.params()) * std::norm(c[n]);
    return sum;
}

double expectation_Q(const GridWavefunction &state) {
    std::vector<double> f = state.density();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= state.grid().node(i);
    return integrate_grid(f, state.grid());
}

double expectation_H0(const FockVector &state, const EnergyDetectionProfile &profile, double h0) {
    validate_no_registration_energy(h0, state.params());
    double sum = h0 * no_detection_prob_energy(state, profile);
    for (std::size_t n = 0; n <= state.n_max(); ++n) {
        sum += energy_eigenvalue(n, state.params()) * overall_prob_energy(state, n, profile);
    }
    return sum;
}

double expectation_Q0(const GridWavefunction &state, const PositionDetectionProfile &profile, double q0) {
    std::vector<double> f = state.density();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double q = state.grid().node(i);
        f[i] *= (q - q0) * profile(q);
    }
    return q0 + integrate_grid(f, state.grid());
}

double expectation_gap_H(const FockVector &state, const EnergyDetectionProfile &profile) {
    double sum = 0.0;
    const auto c = state.amplitudes();
    for (std::size_t n = 0; n < c.size(); ++n) {
        sum += energy_eigenvalue(n, state.params()) * (1.0 - profile(n)) * std::norm(c[n]);
    }
    return sum;
}

double expectation_gap_Q(const GridWavefunction &state, const PositionDetectionProfile &profile,
                         PositionGapForm form) {
    std::vector<double> f = state.density();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double q = state.grid().node(i);
        const double weight = form == PositionGapForm::Consistent ? q : 1.0;
        f[i] *= weight * (1.0 - profile(q));
    }
    return integrate_grid(f, state.grid());
}

}  // namespace esr
