#include "spinladder/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinladder/errors.hpp"

namespace spinladder {

std::string to_string(Regime r)
{
    switch (r) {
    case Regime::none: return "none";
    case Regime::A: return "A";
    case Regime::B: return "B";
    case Regime::C: return "C";
    case Regime::C_tilde: return "C_tilde";
    case Regime::D: return "D";
    case Regime::D_tilde: return "D_tilde";
    case Regime::D_prime: return "D_prime";
    }
    return "none";
}

namespace {

bool in_band(double r, double delta)
{
    return r > -0.5 * delta && r <= 0.5 * delta;
}

double band_distance(double r, double delta)
{
    return std::min(std::abs(r - 0.5 * delta), std::abs(r + 0.5 * delta));
}

} // namespace

Classification classify_weak_field(const DriveParams& d)
{
    const double delta = d.delta();
    const double s = d.delta_signed();
    // Residual detunings of each transition from each drive. Under the
    // drive exchange these four swap pairwise, so the boxes map exactly
    // onto their duals (A <-> B, C <-> C_tilde, D <-> D_tilde).
    const double r12_1 = d.delta1();
    const double r12_2 = d.delta1() + s;
    const double r23_2 = d.delta2();
    const double r23_1 = d.delta2() - s;

    const bool w12_1 = in_band(r12_1, delta);
    const bool w12_2 = in_band(r12_2, delta);
    const bool w23_2 = in_band(r23_2, delta);
    const bool w23_1 = in_band(r23_1, delta);

    Classification c;
    if (w12_1 && w23_2) c.regime = Regime::A;
    else if (w12_2 && w23_1) c.regime = Regime::B;
    else if (w12_2 && w23_2) c.regime = Regime::C;
    else if (w12_1 && w23_1) c.regime = Regime::C_tilde;
    else if (w12_2) c.regime = Regime::D;
    else if (w12_1) c.regime = Regime::D_tilde;
    else c.regime = Regime::none;

    c.confidence = std::min(std::min(band_distance(r12_1, delta),
                                     band_distance(r12_2, delta)),
                            std::min(band_distance(r23_1, delta),
                                     band_distance(r23_2, delta))) /
                   delta;
    return c;
}

Classification classify_at_field(const DriveParams& d, double omega0)
{
    if (!(omega0 >= 0.0))
        throw ValidationError("classify: amplitude must be >= 0");
    Classification c = classify_weak_field(d);
    if (c.regime != Regime::D)
        return c;

    double dr = 0.0;
    try {
        dr = dynamical_resonance_omega2(d.delta1(), d.delta());
    } catch (const DomainError&) {
        return c; // no field-induced resonance in reach
    }
    if (omega0 <= dr)
        return c;

    double res = std::numeric_limits<double>::infinity();
    try {
        res = resonance_23_omega2(d.delta1(), d.delta2(), d.delta());
    } catch (const DomainError&) {
        // no 2-3 resonance: the strong-field window is unbounded above
    }
    if (omega0 < res)
        c.regime = Regime::D_prime;
    return c;
}

namespace {

double domain_sqrt(double v, const char* what)
{
    if (v < 0.0)
        throw DomainError(std::string(what) + ": outside the domain of definition");
    return std::sqrt(v);
}

void check_delta(double delta)
{
    if (!(delta > 0.0))
        throw ValidationError("boundary: beat frequency must be positive");
}

void check_sign(int sign)
{
    if (sign != 1 && sign != -1)
        throw ValidationError("boundary: sign must be +1 or -1");
}

} // namespace

double island_a_lower_delta(double omega2, double delta, int sign)
{
    check_delta(delta);
    check_sign(sign);
    const double root = std::sqrt(9.0 * omega2 * omega2 + 32.0 * delta * delta);
    return omega2 / (16.0 * delta) * (-5.0 * omega2 + sign * root);
}

double island_a_upper_omega1(double detuning, double delta)
{
    check_delta(delta);
    // Stated in units of the beat frequency; not scale-invariant otherwise.
    const double x = detuning / delta;
    const double w = domain_sqrt(2.0 * (1.0 + x), "upper boundary (A, sequence 1)");
    const double v = 2.0 * (1.0 - x) * (2.0 * (1.0 + x) - w);
    return delta * domain_sqrt(v, "upper boundary (A, sequence 1)");
}

double island_a_seq2_upper_omega1(double detuning, double delta, int sign)
{
    check_delta(delta);
    check_sign(sign);
    if (!(detuning < 0.0))
        throw DomainError("upper boundary (A, sequence 2): defined for negative detuning");
    const double root =
        domain_sqrt(delta * (delta + 8.0 * detuning), "upper boundary (A, sequence 2)");
    const double v = (delta - detuning) * (4.0 * detuning + delta + sign * root);
    return domain_sqrt(v, "upper boundary (A, sequence 2)");
}

double resonance_23_omega2(double delta1, double delta2, double delta)
{
    check_delta(delta);
    if (delta1 + 2.0 * delta2 + delta > 0.0)
        throw DomainError("2-3 resonance: requires delta1 + 2 delta2 + delta <= 0");
    return 2.0 * domain_sqrt(delta2 * (delta1 + delta2 + delta), "2-3 resonance");
}

double dynamical_resonance_omega2(double delta1, double delta)
{
    check_delta(delta);
    return domain_sqrt(-delta1 * (delta1 + 2.0 * delta), "dynamical 1-2 resonance");
}

double island_d_upper_omega1(double detuning, double delta)
{
    check_delta(delta);
    const double den = 2.0 * delta - detuning;
    if (den == 0.0)
        throw DomainError("upper boundary (D): denominator vanishes");
    const double v = detuning * (detuning * detuning - delta * delta) / den;
    return 2.0 * domain_sqrt(v, "upper boundary (D)");
}

double island_dprime_omega1(double detuning, double delta)
{
    check_delta(delta);
    const double root =
        domain_sqrt(delta * (2.0 * delta - detuning), "strong-field boundary (omega1)");
    const double v = (detuning - delta) * (2.0 * delta - detuning - 2.0 * root);
    return 2.0 * domain_sqrt(v, "strong-field boundary (omega1)");
}

double island_dprime_omega2(double detuning, double delta)
{
    check_delta(delta);
    const double root =
        domain_sqrt(delta * (delta - 4.0 * detuning), "strong-field boundary (omega2)");
    const double v = detuning * (delta - detuning - root);
    return 2.0 * domain_sqrt(v, "strong-field boundary (omega2)");
}

std::pair<double, double> weak_field_limit_omega0(double delta1, double delta2)
{
    if (!(delta1 * delta2 > 0.0))
        throw DomainError("weak-field limit: transfer requires delta1 * delta2 > 0");
    return {2.0 * std::sqrt(delta1 * (delta1 + delta2)),
            2.0 * std::sqrt(delta2 * (delta1 + delta2))};
}

namespace {

// Samples curve_fn(parameter) over [lo, hi], recording out-of-domain samples.
template <typename F>
BoundaryCurve sample_curve(std::string id, double lo, double hi, int n, F&& curve_fn)
{
    BoundaryCurve c;
    c.id = std::move(id);
    c.points.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / n;
        try {
            c.points.push_back(curve_fn(x));
        } catch (const DomainError&) {
            c.excluded.push_back(x);
        }
    }
    return c;
}

} // namespace

std::vector<BoundaryCurve> boundary_overlays(int sequence, double delta,
                                             double detuning_lo, double detuning_hi,
                                             double omega_max, int n_samples)
{
    check_delta(delta);
    if (sequence != 1 && sequence != 2)
        throw ValidationError("overlays: sequence must be 1 or 2");
    if (!(detuning_lo < detuning_hi) || !(omega_max > 0.0) || n_samples < 2)
        throw ValidationError("overlays: bad sampling window");

    std::vector<BoundaryCurve> curves;
    const int n = n_samples;

    if (sequence == 1) {
        curves.push_back(sample_curve("a_lower_plus", 0.0, omega_max, n, [&](double om) {
            return CurvePoint{om, island_a_lower_delta(om, delta, +1)};
        }));
        curves.push_back(sample_curve("a_lower_minus", 0.0, omega_max, n, [&](double om) {
            return CurvePoint{om, island_a_lower_delta(om, delta, -1)};
        }));
        curves.push_back(sample_curve("a_upper", detuning_lo, detuning_hi, n,
                                      [&](double det) {
                                          return CurvePoint{
                                              island_a_upper_omega1(det, delta), det};
                                      }));
    } else {
        curves.push_back(sample_curve("a_lower_minus", 0.0, omega_max, n, [&](double om) {
            return CurvePoint{om, island_a_lower_delta(om, delta, -1)};
        }));
        curves.push_back(sample_curve("a_upper_plus", detuning_lo, detuning_hi, n,
                                      [&](double det) {
                                          return CurvePoint{
                                              island_a_seq2_upper_omega1(det, delta, +1),
                                              det};
                                      }));
        curves.push_back(sample_curve("a_upper_minus", detuning_lo, detuning_hi, n,
                                      [&](double det) {
                                          return CurvePoint{
                                              island_a_seq2_upper_omega1(det, delta, -1),
                                              det};
                                      }));
    }

    curves.push_back(sample_curve("res_23", detuning_lo, detuning_hi, n, [&](double det) {
        return CurvePoint{resonance_23_omega2(det, det, delta), det};
    }));
    curves.push_back(
        sample_curve("dynres_12", detuning_lo, detuning_hi, n, [&](double det) {
            return CurvePoint{dynamical_resonance_omega2(det, delta), det};
        }));
    curves.push_back(sample_curve("d_upper", detuning_lo, detuning_hi, n, [&](double det) {
        return CurvePoint{island_d_upper_omega1(det, delta), det};
    }));
    curves.push_back(
        sample_curve("dprime_omega1", detuning_lo, detuning_hi, n, [&](double det) {
            return CurvePoint{island_dprime_omega1(det, delta), det};
        }));
    curves.push_back(
        sample_curve("dprime_omega2", detuning_lo, detuning_hi, n, [&](double det) {
            return CurvePoint{island_dprime_omega2(det, delta), det};
        }));
    curves.push_back(
        sample_curve("weakfield_limit", detuning_lo, detuning_hi, n, [&](double det) {
            if (det == 0.0)
                throw DomainError("weak-field limit: undefined at zero detuning");
            return CurvePoint{weak_field_limit_omega0(det, det).first, det};
        }));
    curves.push_back(sample_curve("line_res_12", 0.0, omega_max, n, [&](double om) {
        return CurvePoint{om, -delta};
    }));
    curves.push_back(sample_curve("line_regime_edge", 0.0, omega_max, n, [&](double om) {
        return CurvePoint{om, -0.5 * delta};
    }));
    return curves;
}

} // namespace spinladder
