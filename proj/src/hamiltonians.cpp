#include "spinladder/hamiltonians.hpp"

#include <cmath>
#include <complex>

namespace spinladder {

using std::complex;
static const complex<double> I(0.0, 1.0);

Eigen::Vector2d pulse_envelopes(double t, const PulsePair& p)
{
    return p.envelopes(t);
}

HermitianMatrix rwa_hamiltonian(double t, const PulsePair& p, const DriveParams& d)
{
    const Eigen::Vector2d om = p.envelopes(t);
    const double s = d.delta_signed();
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    h(0, 0) = 0.0;
    h(1, 1) = d.delta1();
    h(2, 2) = d.delta1() + d.delta2();
    h(0, 1) = 0.5 * (om(0) + std::exp(-I * s * t) * om(1));
    h(1, 0) = std::conj(h(0, 1));
    h(1, 2) = 0.5 * (om(1) + std::exp(I * s * t) * om(0));
    h(2, 1) = std::conj(h(1, 2));
    return HermitianMatrix(h);
}

HermitianMatrix full_hamiltonian(double t, const PulsePair& p, const SpinParams& spin,
                                 const DriveParams& d)
{
    const Eigen::Vector2d om = p.envelopes(t);
    const double w1 = spin.transition_12() - d.delta1();
    const double w2 = spin.transition_23() - d.delta2();
    const double beta_x = om(0) * std::cos(w1 * t + spin.phi1) +
                          om(1) * std::cos(w2 * t + spin.phi2);
    const double c = beta_x / std::sqrt(2.0);
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    h(0, 0) = spin.e_ground();
    h(1, 1) = spin.e_mid();
    h(2, 2) = spin.e_top();
    h(3, 3) = -spin.xi; // decoupled singlet
    h(0, 1) = h(1, 0) = c;
    h(1, 2) = h(2, 1) = c;
    return HermitianMatrix(h);
}

namespace {

// Reciprocal of a Stark-shift denominator; the perturbative model is
// meaningless where it vanishes.
double checked_inv(double den, double scale, const char* name)
{
    if (std::abs(den) < 1e-12 * scale)
        throw SingularDenominator(std::string("effective model: denominator ") + name +
                                  " vanishes at these detunings");
    return 1.0 / den;
}

} // namespace

HermitianMatrix effective_hamiltonian(EffectiveModel model, const DriveParams& d,
                                      double omega1_amp, double omega2_amp)
{
    const double d1 = d.delta1();
    const double d2 = d.delta2();
    const double s = d.delta_signed();
    const double scale = d.delta();
    const double o1 = omega1_amp, o2 = omega2_amp;
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();

    switch (model) {
    case EffectiveModel::A: {
        const double inv_a = checked_inv(s + d1, scale, "delta + delta1");
        const double inv_b = checked_inv(s - d2, scale, "delta - delta2");
        const double s1 = 0.25 * o2 * o2 * inv_a; // shift from drive 2 on 1-2
        const double s2 = 0.25 * o1 * o1 * inv_b; // shift from drive 1 on 2-3
        h(0, 0) = -s1;
        h(1, 1) = d1 + s1 + s2;
        h(2, 2) = d1 + d2 - s2;
        h(0, 1) = h(1, 0) = 0.5 * o1;
        h(1, 2) = h(2, 1) = 0.5 * o2;
        break;
    }
    case EffectiveModel::A_weak: {
        h(0, 0) = 0.0;
        h(1, 1) = d1;
        h(2, 2) = d1 + d2;
        h(0, 1) = h(1, 0) = 0.5 * o1;
        h(1, 2) = h(2, 1) = 0.5 * o2;
        break;
    }
    case EffectiveModel::B: {
        const double inv1 = checked_inv(d1, scale, "delta1");
        const double inv2 = checked_inv(d2, scale, "delta2");
        const double s1 = 0.25 * o1 * o1 * inv1;
        const double s2 = 0.25 * o2 * o2 * inv2;
        h(0, 0) = -s1;
        h(1, 1) = d1 + s + s1 - s2;
        h(2, 2) = d1 + d2 + s2;
        h(0, 1) = h(1, 0) = 0.5 * o2;
        h(1, 2) = h(2, 1) = 0.5 * o1;
        break;
    }
    case EffectiveModel::C: {
        const double inv1 = checked_inv(d1, scale, "delta1");
        const double inv2 = checked_inv(d2 - s, scale, "delta2 - delta");
        const double s1 = 0.25 * o1 * o1 * inv1;
        const double s2 = 0.25 * o1 * o1 * inv2;
        h(0, 0) = -s1;
        h(1, 1) = d1 + s + s1 - s2;
        h(2, 2) = d1 + d2 + s + s2;
        h(0, 1) = h(1, 0) = 0.5 * o2;
        h(1, 2) = h(2, 1) = 0.5 * o2;
        break;
    }
    case EffectiveModel::D: {
        const double inv1 = checked_inv(d1, scale, "delta1");
        const double inv2 = checked_inv(d2 - s, scale, "delta2 - delta");
        const double inv3 = checked_inv(d2, scale, "delta2");
        const double s1 = 0.25 * o1 * o1 * inv1;
        const double s2 = 0.25 * o1 * o1 * inv2;
        const double s3 = 0.25 * o2 * o2 * inv3;
        h(0, 0) = -s1;
        h(1, 1) = d1 + s + s1 - s2 - s3;
        h(2, 2) = d1 + d2 + s + s2 + s3;
        h(0, 1) = h(1, 0) = 0.5 * o2;
        break;
    }
    default:
        throw ValidationError("effective model: unknown model");
    }
    return HermitianMatrix(h);
}

HermitianMatrix effective_floquet_dprime(double omega1_amp, double omega2_amp,
                                         const DriveParams& d, int n_modes)
{
    if (n_modes < 1)
        throw ValidationError("dressed two-level model: need n_modes >= 1");
    const double d1 = d.delta1();
    const double d2 = d.delta2();
    const double s = d.delta_signed();
    const double scale = d.delta();
    const double inv2 = checked_inv(d2 - s, scale, "delta2 - delta");
    const double inv3 = checked_inv(d2, scale, "delta2");
    const double o1 = omega1_amp, o2 = omega2_amp;
    const double stark = 0.25 * o1 * o1 * inv2 + 0.25 * o2 * o2 * inv3;

    const int nb = 2 * n_modes + 1;
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(3 * nb, 3 * nb);
    for (int b = 0; b < nb; ++b) {
        const int m = b - n_modes;
        const int off = 3 * b;
        k(off + 0, off + 0) = m * s;
        k(off + 1, off + 1) = d1 + s - stark + m * s;
        k(off + 2, off + 2) = d1 + d2 + s + stark + m * s;
        k(off + 0, off + 1) = 0.5 * o2;
        k(off + 1, off + 0) = 0.5 * o2;
        if (b + 1 < nb) {
            // e^{i theta} part of the 1-2 coupling: one Fourier mode up
            k(off + 3 + 0, off + 1) = 0.5 * o1;
            k(off + 1, off + 3 + 0) = 0.5 * o1;
        }
    }
    return HermitianMatrix(k);
}

} // namespace spinladder
