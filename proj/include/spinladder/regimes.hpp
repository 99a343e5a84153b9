#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spinladder/params.hpp"

namespace spinladder {

// Weak-field transfer regimes, named by which drive is quasi-resonant with
// which transition: A (drive 1 on 1-2, drive 2 on 2-3), B (the exchanged
// roles), C / C_tilde (one drive resonant with both transitions), D /
// D_tilde (only the 1-2 transition resonant). D_prime is the strong-field
// refinement of D where both drives act on the 1-2 transition.
enum class Regime { none, A, B, C, C_tilde, D, D_tilde, D_prime };

std::string to_string(Regime r);

struct Classification {
    Regime regime = Regime::none;
    // Distance of the detunings to the nearest box edge, in units of delta.
    double confidence = 0.0;
};

// Box classification in the detuning plane. A transition counts as
// quasi-resonant with a drive when the residual detuning lies in
// (-delta/2, delta/2], so points on a box edge belong to the lower box.
Classification classify_weak_field(const DriveParams& d);

// Field-aware refinement: inside the D box, above the dynamical 1-2
// resonance but below the 2-3 resonance the transfer proceeds through the
// strong-field two-level mechanism (D_prime).
Classification classify_at_field(const DriveParams& d, double omega0);

// Closed-form boundary curves of the high-transfer islands. All arguments
// share the frequency units of delta; DomainError is thrown outside a
// curve's domain of definition. "Sequence 1" has the drive-1 pulse first.

// Lower island boundary in regime A for sequence 1: detuning of the
// zero-field crossing on the drive-1-off axis versus the drive-2 amplitude;
// sign (+1/-1) picks the branch. The minus branch also bounds sequence 2.
double island_a_lower_delta(double omega2, double delta, int sign);

// Upper island boundary in regime A for sequence 1 (equal detunings):
// amplitude where the crossing on the drive-2-off axis disappears.
double island_a_upper_omega1(double detuning, double delta);

// Upper boundary pair in regime A for sequence 2 (equal detunings, < 0):
// crossings of the dressed 2 and 3 sheets on the drive-2-off axis.
double island_a_seq2_upper_omega1(double detuning, double delta, int sign);

// Amplitude of the 2-3 resonance that ends the validity of the
// detached-level model; requires delta1 + 2*delta2 + delta <= 0.
double resonance_23_omega2(double delta1, double delta2, double delta);

// Field-induced resonance of the 1-2 transition with the drive-1 carrier
// (boundary between the D and D_prime mechanisms); delta1 in [-2 delta, 0].
double dynamical_resonance_omega2(double delta1, double delta);

// Upper boundary of the detached-level island (equal detunings).
double island_d_upper_omega1(double detuning, double delta);

// Boundaries of the strong-field two-level island on the two axes
// (equal detunings).
double island_dprime_omega1(double detuning, double delta);
double island_dprime_omega2(double detuning, double delta);

// Very-weak-field limit: transfer is topologically allowed only for
// delta1 * delta2 > 0; returns the two bounding amplitudes.
std::pair<double, double> weak_field_limit_omega0(double delta1, double delta2);

struct CurvePoint {
    double omega0;
    double delta; // common detuning, equal-detuning restriction
};

struct BoundaryCurve {
    std::string id;
    std::vector<CurvePoint> points;
    std::vector<double> excluded; // parameter samples outside the domain
};

// Samples all overlay curves for a transfer map with the equal-detuning
// restriction: the island boundaries for the requested sequence, the two
// resonance curves, the strong-field island pair, the very-weak-field
// limit, and the guide lines delta = -delta_beat and delta = -delta_beat/2.
std::vector<BoundaryCurve> boundary_overlays(int sequence, double delta,
                                             double detuning_lo, double detuning_hi,
                                             double omega_max, int n_samples);

} // namespace spinladder
