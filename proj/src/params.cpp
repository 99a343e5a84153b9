#include "spinladder/params.hpp"

#include <cmath>

namespace spinladder {

SpinParams::SpinParams(double xi_, double beta_z_, double phi1_, double phi2_)
    : xi(xi_), beta_z(beta_z_), phi1(phi1_), phi2(phi2_)
{
    if (!(xi < 0.0))
        throw ValidationError("spin: exchange constant must be negative");
    if (!(beta_z > 2.0 * std::abs(xi)))
        throw ValidationError("spin: static field must exceed 2|xi| for a ladder");
}

DriveParams::DriveParams(double delta1, double delta2, double delta)
    : d1_(delta1), d2_(delta2), delta_(delta)
{
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw ValidationError("drive: beat frequency must be positive");
    if (!std::isfinite(delta1) || !std::isfinite(delta2))
        throw ValidationError("drive: detunings must be finite");
}

DriveParams DriveParams::for_spin(const SpinParams& spin, double delta1, double delta2)
{
    const double delta = 4.0 * std::abs(spin.xi) + delta2 - delta1;
    DriveParams d(delta1, delta2, delta);
    d.spin_ = spin;
    return d;
}

const SpinParams& DriveParams::spin() const
{
    if (!spin_)
        throw ValidationError("drive: no spin parameters attached");
    return *spin_;
}

double DriveParams::omega1() const { return spin().transition_12() - d1_; }

double DriveParams::omega2() const { return spin().transition_23() - d2_; }

DriveParams drive_exchange(const DriveParams& d)
{
    // The detunings translate by the signed beat and the beat flips; with
    // spin attached the two carriers swap exactly.
    return DriveParams(d.d1_ + d.delta_, d.d2_ - d.delta_, -d.delta_, d.spin_, true);
}

PulsePair::PulsePair(double omega0_, double width_, double delay_)
    : omega0(omega0_), width(width_), delay(delay_)
{
    if (!(omega0 >= 0.0) || !std::isfinite(omega0))
        throw ValidationError("pulses: peak amplitude must be >= 0");
    if (!(width > 0.0) || !std::isfinite(width))
        throw ValidationError("pulses: width must be positive");
    if (!std::isfinite(delay))
        throw ValidationError("pulses: delay must be finite");
}

PulsePair PulsePair::from_area(double area, double omega0_, double delay_over_width,
                               int sequence)
{
    if (!(area > 0.0))
        throw ValidationError("pulses: area must be positive");
    if (sequence != 1 && sequence != 2)
        throw ValidationError("pulses: sequence must be 1 or 2");
    if (!(delay_over_width >= 0.0))
        throw ValidationError("pulses: delay/width must be >= 0");
    const double w = area / omega0_;
    // delay_over_width is the peak-to-peak separation in units of the width;
    // the stored delay is the half-offset of each peak from t = 0.
    const double tau = 0.5 * delay_over_width * w * (sequence == 1 ? 1.0 : -1.0);
    return PulsePair(omega0_, w, tau);
}

Eigen::Vector2d PulsePair::envelopes(double t) const
{
    const double u1 = (t + delay) / width;
    const double u2 = (t - delay) / width;
    return {omega0 * std::exp(-u1 * u1), omega0 * std::exp(-u2 * u2)};
}

PulsePair drive_exchange(const PulsePair& p)
{
    return PulsePair(p.omega0, p.width, -p.delay);
}

StateAmplitudes::StateAmplitudes(Eigen::VectorXcd a, Frame frame, double tol)
    : a_(std::move(a)), frame_(frame)
{
    if (a_.size() != 3 && a_.size() != 4)
        throw DimensionMismatch("state: expected 3 (rotating frame) or 4 (lab) amplitudes");
    const double norm2 = a_.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol)
        throw ValidationError("state: norm^2 deviates from 1 by " +
                              std::to_string(std::abs(norm2 - 1.0)));
}

StateAmplitudes StateAmplitudes::unchecked(Eigen::VectorXcd a, Frame frame)
{
    StateAmplitudes s;
    s.a_ = std::move(a);
    s.frame_ = frame;
    return s;
}

} // namespace spinladder
