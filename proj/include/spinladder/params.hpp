#pragma once

#include <Eigen/Dense>
#include <optional>

#include "spinladder/errors.hpp"

namespace spinladder {

// Two exchange-coupled spins in a static longitudinal field. Units: energies
// and field amplitudes are angular frequencies, hbar = 1.
struct SpinParams {
    double xi;     // exchange constant, < 0
    double beta_z; // static field (times gyromagnetic ratio), > 2|xi|
    double phi1 = 0.0;
    double phi2 = 0.0;

    SpinParams(double xi_, double beta_z_, double phi1_ = 0.0, double phi2_ = 0.0);

    // Bare energies of the triplet ladder, in ascending order.
    double e_ground() const { return xi - beta_z; }
    double e_mid() const { return -xi; }
    double e_top() const { return xi + beta_z; }

    double transition_12() const { return e_mid() - e_ground(); }
    double transition_23() const { return e_top() - e_mid(); }
};

// Detunings of the two drive fields from their respective transitions and
// the beat frequency between the carriers. The beat is stored signed so that
// the drive-exchange transform below is an exact involution; physical
// constructors only accept a positive beat.
class DriveParams {
public:
    DriveParams(double delta1, double delta2, double delta);

    // Carriers tied to a concrete spin pair; the beat frequency follows from
    // the spin coupling: delta = 4|xi| + delta2 - delta1.
    static DriveParams for_spin(const SpinParams& spin, double delta1, double delta2);

    double delta1() const { return d1_; }
    double delta2() const { return d2_; }
    double delta() const { return std::abs(delta_); }
    double delta_signed() const { return delta_; }

    bool has_spin() const { return spin_.has_value(); }
    const SpinParams& spin() const;

    // Carrier frequencies (require spin parameters).
    double omega1() const;
    double omega2() const;

    friend DriveParams drive_exchange(const DriveParams& d);

private:
    DriveParams(double d1, double d2, double delta, std::optional<SpinParams> spin, bool)
        : d1_(d1), d2_(d2), delta_(delta), spin_(std::move(spin)) {}

    double d1_;
    double d2_;
    double delta_; // signed
    std::optional<SpinParams> spin_;
};

// Exchange of the roles of the two drive fields: both detunings shift by the
// beat frequency, the beat changes sign, and the pulse envelopes swap. The
// populations of the driven ladder are invariant under this transform, and
// applying it twice is the identity. For the pulse pair the swap is the sign
// flip of the delay.
DriveParams drive_exchange(const DriveParams& d);

// Pair of delayed Gaussian pulses sharing one peak amplitude and width.
// delay > 0 means the drive-1 pulse peaks first (sequence 1), delay < 0 the
// drive-2 pulse peaks first (sequence 2).
struct PulsePair {
    double omega0; // peak Rabi frequency, >= 0
    double width;  // Gaussian width, > 0
    double delay;  // signed peak offset: pulses peak at -delay and +delay

    PulsePair(double omega0_, double width_, double delay_);

    // Fixed pulse area omega0 * width. delay_over_width is the peak-to-peak
    // separation in units of the width; the sequence picks which pulse leads.
    static PulsePair from_area(double area, double omega0, double delay_over_width,
                               int sequence);

    // (drive-1, drive-2) envelope amplitudes at time t.
    Eigen::Vector2d envelopes(double t) const;

    int sequence() const { return delay >= 0.0 ? 1 : 2; }
};

PulsePair drive_exchange(const PulsePair& p);

enum class Frame { rwa, lab };

// Normalized state vector with the frame it lives in. Population order is
// the ladder order; in the lab frame a fourth component holds the decoupled
// singlet amplitude.
class StateAmplitudes {
public:
    StateAmplitudes(Eigen::VectorXcd a, Frame frame, double tol = 1e-9);

    // Bypasses the norm check; for propagation output whose drift is
    // reported separately.
    static StateAmplitudes unchecked(Eigen::VectorXcd a, Frame frame);

    const Eigen::VectorXcd& amplitudes() const { return a_; }
    Frame frame() const { return frame_; }
    Eigen::Index dim() const { return a_.size(); }
    Eigen::VectorXd populations() const { return a_.cwiseAbs2(); }

private:
    StateAmplitudes() = default;
    Eigen::VectorXcd a_;
    Frame frame_ = Frame::rwa;
};

} // namespace spinladder
