#pragma once

#include "esr/detection_profiles.hpp"
#include "esr/states.hpp"

namespace esr {

double expectation_H(const FockVector &state);
double expectation_Q(const GridWavefunction &state);

/// h0 p^t(h0) + sum_n E_n p^t(E_n).
double expectation_H0(const FockVector &state, const EnergyDetectionProfile &profile, double h0 = 0.0);
/// q0 + int (q - q0) p(q) |psi(q)|^2 dq.
double expectation_Q0(const GridWavefunction &state, const PositionDetectionProfile &profile,
                      double q0 = 0.0);

/// <H> - <H0> at h0 = 0: sum_n E_n (1 - p(n)) |c_n|^2.
double expectation_gap_H(const FockVector &state, const EnergyDetectionProfile &profile);

enum class PositionGapForm {
    /// int q (1 - p(q)) |psi|^2 dq, which is <Q> - <Q0> at q0 = 0.
    Consistent,
    /// int (1 - p(q)) |psi|^2 dq, the same integrand without the q factor.
    AsPrinted,
};

double expectation_gap_Q(const GridWavefunction &state, const PositionDetectionProfile &profile,
                         PositionGapForm form = PositionGapForm::Consistent);

}  // namespace esr
