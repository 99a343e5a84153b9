#pragma once

#include <Eigen/Dense>

#include "spinladder/hermitian.hpp"
#include "spinladder/params.hpp"

namespace spinladder {

// Envelope amplitudes of the two pulses at time t.
Eigen::Vector2d pulse_envelopes(double t, const PulsePair& p);

// 3x3 rotating-frame Hamiltonian of the driven ladder. Each transition is
// referenced to its own carrier; the residual cross couplings oscillate at
// the beat frequency, so each field also drives the other transition with a
// phase e^{+-i*delta*t}.
HermitianMatrix rwa_hamiltonian(double t, const PulsePair& p, const DriveParams& d);

// 4x4 lab-frame Hamiltonian of the two coupled spins in the triplet ladder
// plus singlet basis. The transverse bichromatic field couples only the
// ladder states; the singlet row and column stay exactly zero.
HermitianMatrix full_hamiltonian(double t, const PulsePair& p, const SpinParams& spin,
                                 const DriveParams& d);

// Effective three-level models valid in different detuning ranges. Each is
// the resonant channel dressed with the second-order Stark shifts of the
// non-resonant couplings.
enum class EffectiveModel {
    A,      // drive 1 on transition 1-2, drive 2 on 2-3, with Stark shifts
    A_weak, // same channel, Stark shifts dropped (very weak fields)
    B,      // drive 2 on transition 1-2, drive 1 on 2-3
    C,      // drive 2 resonant on both transitions
    D,      // drive 2 resonant on 1-2 only; level 3 detached
};

// The models are stationary in their respective frames: they depend on the
// envelope amplitudes, not on time. Throws SingularDenominator when an
// energy denominator of the selected model vanishes at these detunings.
HermitianMatrix effective_hamiltonian(EffectiveModel model, const DriveParams& d,
                                      double omega1_amp, double omega2_amp);

// Dressed (Floquet) operator of the strong-field two-level stage: both
// drives act on transition 1-2, level 3 carries only Stark shifts and stays
// decoupled. Truncated to Fourier modes -n_modes..n_modes; basis index is
// 3*(m + n_modes) + state. Requires n_modes >= 1 and non-vanishing
// denominators delta2 and delta2 - delta.
HermitianMatrix effective_floquet_dprime(double omega1_amp, double omega2_amp,
                                         const DriveParams& d, int n_modes);

} // namespace spinladder
