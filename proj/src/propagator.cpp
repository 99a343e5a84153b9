#include "spinladder/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spinladder/errors.hpp"
#include "spinladder/hamiltonians.hpp"

namespace spinladder {

void PropagationConfig::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw ValidationError("propagation: tolerances must be positive");
    if (max_step < 0.0 || initial_step < 0.0)
        throw ValidationError("propagation: step bounds must be >= 0");
    if (!(window_pad > 0.0))
        throw ValidationError("propagation: window pad must be positive");
    if (t_start && t_end && !(*t_start < *t_end))
        throw ValidationError("propagation: window must have t_start < t_end");
}

namespace {

// Dormand-Prince 5(4) tableau; the last stage is the first of the next step.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference between the 5th and the embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

} // namespace

OdeResult propagate(const HamiltonianFn& h, const Eigen::VectorXcd& y0, double t0,
                    double t1, const PropagationConfig& cfg)
{
    cfg.validate();
    if (!(t1 > t0))
        throw ValidationError("propagation: need t1 > t0");
    const Eigen::Index n = y0.size();
    if (n == 0)
        throw DimensionMismatch("propagation: empty state");

    const std::complex<double> mi(0.0, -1.0);
    auto f = [&](double t, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        Eigen::MatrixXcd m = h(t);
        if (m.rows() != n || m.cols() != n)
            throw DimensionMismatch("propagation: operator dimension does not match state");
        return mi * (m * y);
    };

    const double span = t1 - t0;
    const double hmax = cfg.max_step > 0.0 ? std::min(cfg.max_step, span) : span;
    double hs = cfg.initial_step > 0.0 ? cfg.initial_step : std::min(1e-3 * span, hmax);
    hs = std::min(hs, hmax);
    const double hfloor = std::max(1e-14 * span,
                                   8.0 * std::numeric_limits<double>::epsilon() *
                                       std::max(std::abs(t0), std::abs(t1)));

    Eigen::VectorXcd y = y0;
    Eigen::VectorXcd k1 = f(t0, y), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    Eigen::VectorXcd yt(n), y5(n), err(n);

    const double norm0 = y0.squaredNorm();
    double t = t0;
    OdeStats stats;

    while (t < t1) {
        hs = std::min(hs, t1 - t);
        if (hs < hfloor && t + hs < t1)
            throw StepSizeUnderflow("propagation: step size underflow at t = " +
                                    std::to_string(t));

        yt = y + hs * (a21 * k1);
        k2 = f(t + c2 * hs, yt);
        yt = y + hs * (a31 * k1 + a32 * k2);
        k3 = f(t + c3 * hs, yt);
        yt = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
        k4 = f(t + c4 * hs, yt);
        yt = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        k5 = f(t + c5 * hs, yt);
        yt = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        k6 = f(t + hs, yt);
        y5 = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = f(t + hs, y5);

        err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double sc = cfg.abs_tol +
                              cfg.rel_tol * std::max(std::abs(y(i)), std::abs(y5(i)));
            const double q = std::abs(err(i)) / sc;
            acc += q * q;
        }
        const double enorm = std::sqrt(acc / static_cast<double>(n));

        if (enorm <= 1.0) {
            t += hs;
            y.swap(y5);
            k1.swap(k7);
            ++stats.n_accepted;
        } else {
            ++stats.n_rejected;
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(enorm, 1e-16), -0.2),
                                      0.2, 5.0);
        hs = std::min(hs * fac, hmax);
    }

    OdeResult r;
    r.y = std::move(y);
    r.norm_drift = std::abs(r.y.squaredNorm() - norm0);
    r.stats = stats;
    return r;
}

namespace {

std::pair<double, double> window_for(const PulsePair& p, const PropagationConfig& cfg)
{
    const double half = std::abs(p.delay) + cfg.window_pad * p.width;
    double t0 = cfg.t_start.value_or(-half);
    double t1 = cfg.t_end.value_or(half);
    return {t0, t1};
}

void check_window_tails(const PulsePair& p, double t0, double t1,
                        std::vector<std::string>& warnings)
{
    if (p.omega0 <= 0.0)
        return;
    const double tail = std::max({p.envelopes(t0)(0), p.envelopes(t0)(1),
                                  p.envelopes(t1)(0), p.envelopes(t1)(1)});
    if (tail >= 1e-7 * p.omega0)
        warnings.push_back("integration window clips the pulse tails: envelope/peak = " +
                           std::to_string(tail / p.omega0) + " at the window ends");
}

} // namespace

TransferResult simulate_transfer(const PulsePair& p, const DriveParams& d,
                                 const PropagationConfig& cfg)
{
    cfg.validate();
    auto [t0, t1] = window_for(p, cfg);

    TransferResult res;
    check_window_tails(p, t0, t1, res.warnings);

    Eigen::VectorXcd y0 = Eigen::VectorXcd::Zero(3);
    y0(0) = 1.0;

    auto h = [&](double t) { return rwa_hamiltonian(t, p, d).mat(); };
    OdeResult ode = propagate(h, y0, t0, t1, cfg);

    if (ode.norm_drift > 1e-6)
        res.warnings.push_back("norm drift " + std::to_string(ode.norm_drift) +
                               " exceeds 1e-6; tighten the tolerances");

    res.populations = ode.y.cwiseAbs2().head<3>();
    res.final_state = StateAmplitudes::unchecked(ode.y, Frame::rwa);
    res.norm_drift = ode.norm_drift;
    res.t_start = t0;
    res.t_end = t1;
    res.stats = ode.stats;
    return res;
}

FullTransferResult simulate_full(const PulsePair& p, const SpinParams& spin,
                                 const DriveParams& d, const PropagationConfig& cfg)
{
    cfg.validate();
    auto [t0, t1] = window_for(p, cfg);

    FullTransferResult res;
    check_window_tails(p, t0, t1, res.warnings);

    // Envelope amplitudes are Rabi frequencies of the respective transitions;
    // the ladder matrix element is 1/sqrt(2) of the transverse field, so the
    // field is scaled up accordingly.
    const PulsePair scaled(p.omega0 * std::sqrt(2.0), p.width, p.delay);

    const double w1 = spin.transition_12() - d.delta1();
    const double w2 = spin.transition_23() - d.delta2();
    if (!(w1 > 0.0) || !(w2 > 0.0))
        throw ValidationError("lab-frame run: carrier frequencies must be positive");

    PropagationConfig c = cfg;
    const double cap = 0.05 * 2.0 * std::numbers::pi / std::max(w1, w2);
    c.max_step = c.max_step > 0.0 ? std::min(c.max_step, cap) : cap;

    Eigen::VectorXcd y0 = Eigen::VectorXcd::Zero(4);
    y0(0) = 1.0;

    auto h = [&](double t) { return full_hamiltonian(t, scaled, spin, d).mat(); };
    OdeResult ode = propagate(h, y0, t0, t1, c);

    if (ode.norm_drift > 1e-6)
        res.warnings.push_back("norm drift " + std::to_string(ode.norm_drift) +
                               " exceeds 1e-6; tighten the tolerances");

    res.populations = ode.y.cwiseAbs2().head<4>();
    res.singlet_drift = std::abs(res.populations(3) - std::norm(y0(3)));
    res.final_state = StateAmplitudes::unchecked(ode.y, Frame::lab);
    res.norm_drift = ode.norm_drift;
    res.t_start = t0;
    res.t_end = t1;
    res.stats = ode.stats;
    return res;
}

ExchangeCheck verify_drive_exchange(const PulsePair& p, const DriveParams& d,
                                    const PropagationConfig& cfg)
{
    ExchangeCheck chk;
    chk.p_direct = simulate_transfer(p, d, cfg).populations;
    chk.p_exchanged =
        simulate_transfer(drive_exchange(p), drive_exchange(d), cfg).populations;
    chk.max_pop_diff = (chk.p_direct - chk.p_exchanged).cwiseAbs().maxCoeff();
    return chk;
}

} // namespace spinladder
