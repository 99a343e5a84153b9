#include "spinladder/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "spinladder/errors.hpp"

namespace spinladder {

EigResult eigensolve(const HermitianMatrix& m)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.mat());
    if (es.info() != Eigen::Success)
        throw ConvergenceFailure("eigensolve: iteration did not converge");
    EigResult r{es.eigenvalues(), es.eigenvectors()};

    const double scale = std::max(1.0, m.mat().norm());
    const double resid =
        (m.mat() * r.vectors - r.vectors * r.values.asDiagonal()).cwiseAbs().maxCoeff();
    const double ortho =
        (r.vectors.adjoint() * r.vectors -
         Eigen::MatrixXcd::Identity(m.dim(), m.dim()))
            .cwiseAbs()
            .maxCoeff();
    if (resid > 1e-10 * scale || ortho > 1e-10)
        throw ConvergenceFailure("eigensolve: decomposition failed the residual check");
    return r;
}

std::string to_string(const SheetLabel& l)
{
    return "|" + std::to_string(l.n) + "; " + std::to_string(l.k1) + ", " +
           std::to_string(l.k2) + ">";
}

SheetLabel QuasienergyOperator::label_of_index(Eigen::Index idx, int n_modes)
{
    const int b = static_cast<int>(idx) / 3;
    const int state = static_cast<int>(idx) % 3;
    const int m = b - n_modes;
    switch (state) {
    case 0: return {1, m, -m};
    case 1: return {2, m - 1, -m};
    default: return {3, m - 1, -m - 1};
    }
}

Eigen::Index QuasienergyOperator::index_of_label(const SheetLabel& l, int n_modes)
{
    int m = 0;
    switch (l.n) {
    case 1:
        if (l.k2 != -l.k1) return -1;
        m = l.k1;
        break;
    case 2:
        if (l.k1 + l.k2 != -1) return -1;
        m = -l.k2;
        break;
    case 3:
        if (l.k1 + l.k2 != -2) return -1;
        m = l.k1 + 1;
        break;
    default:
        return -1;
    }
    if (std::abs(m) > n_modes) return -1;
    return 3 * (m + n_modes) + (l.n - 1);
}

QuasienergyOperator build_quasienergy_operator(double omega1_amp, double omega2_amp,
                                               const DriveParams& d, int n_modes)
{
    if (n_modes < 4)
        throw ValidationError("quasienergy operator: need n_modes >= 4");
    if (omega1_amp < 0.0 || omega2_amp < 0.0)
        throw ValidationError("quasienergy operator: amplitudes must be >= 0");

    const double s = d.delta_signed();
    const double d1 = d.delta1(), d2 = d.delta2();
    const int nb = 2 * n_modes + 1;
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(3 * nb, 3 * nb);

    for (int b = 0; b < nb; ++b) {
        const int m = b - n_modes;
        const int off = 3 * b;
        k(off + 0, off + 0) = m * s;
        k(off + 1, off + 1) = d1 + m * s;
        k(off + 2, off + 2) = d1 + d2 + m * s;
        k(off + 0, off + 1) = k(off + 1, off + 0) = 0.5 * omega1_amp;
        k(off + 1, off + 2) = k(off + 2, off + 1) = 0.5 * omega2_amp;
        if (b + 1 < nb) {
            // One-mode raising part: the drive-2 field on the 1-2 transition
            // and the drive-1 field on the 2-3 transition.
            k(off + 3 + 1, off + 0) = k(off + 0, off + 3 + 1) = 0.5 * omega2_amp;
            k(off + 3 + 1, off + 2) = k(off + 2, off + 3 + 1) = 0.5 * omega1_amp;
        }
    }
    return {HermitianMatrix(k), n_modes, d.delta()};
}

const Eigen::MatrixXd& QuasienergySurface::sheet(const SheetLabel& l) const
{
    for (std::size_t s = 0; s < labels.size(); ++s)
        if (labels[s] == l) return values[s];
    throw ValidationError("surface: label " + to_string(l) + " is not tracked");
}

namespace {

// Greedy sheet-to-eigenvector assignment by descending overlap, consuming
// each eigenvector at most once.
void assign_sheets(const Eigen::MatrixXd& overlap, std::vector<int>& assign,
                   std::vector<double>& margins)
{
    const Eigen::Index n = overlap.rows();
    assign.assign(n, -1);
    margins.assign(n, 1.0);

    std::vector<std::pair<double, int>> order(n);
    for (Eigen::Index s = 0; s < n; ++s) {
        double best = -1.0, second = -1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double v = overlap(s, j);
            if (v > best) {
                second = best;
                best = v;
            } else if (v > second) {
                second = v;
            }
        }
        margins[s] = best - second;
        order[s] = {best, static_cast<int>(s)};
    }
    std::sort(order.begin(), order.end(), std::greater<>());

    std::vector<char> used(n, 0);
    for (auto [unused_best, s] : order) {
        int pick = -1;
        double pickv = -1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!used[j] && overlap(s, j) > pickv) {
                pickv = overlap(s, j);
                pick = static_cast<int>(j);
            }
        }
        assign[s] = pick;
        used[pick] = 1;
    }
}

void check_grid(const Eigen::VectorXd& g, const char* name)
{
    if (g.size() < 1)
        throw ValidationError(std::string("surface: empty ") + name + " grid");
    if (g(0) != 0.0)
        throw ValidationError(std::string("surface: ") + name +
                              " grid must start at zero field");
    for (Eigen::Index i = 1; i < g.size(); ++i)
        if (!(g(i) > g(i - 1)))
            throw ValidationError(std::string("surface: ") + name +
                                  " grid must be strictly increasing");
}

} // namespace

QuasienergySurface compute_surface(const Eigen::VectorXd& omega1_grid,
                                   const Eigen::VectorXd& omega2_grid,
                                   const DriveParams& d, const SurfaceOptions& opts)
{
    check_grid(omega1_grid, "omega1");
    check_grid(omega2_grid, "omega2");

    const int K = opts.n_modes;
    const Eigen::Index dim = 3 * (2 * K + 1);
    const Eigen::Index n1 = omega1_grid.size(), n2 = omega2_grid.size();

    QuasienergySurface surf;
    surf.omega1 = omega1_grid;
    surf.omega2 = omega2_grid;
    surf.n_modes = K;
    surf.labels.resize(dim);
    for (Eigen::Index s = 0; s < dim; ++s)
        surf.labels[s] = QuasienergyOperator::label_of_index(s, K);
    surf.values.assign(dim, Eigen::MatrixXd::Zero(n1, n2));

    // At zero field the operator is diagonal, so sheet s starts on basis
    // vector s; no eigensolve and no ambiguity there.
    Eigen::MatrixXcd v_prev = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd v_rowstart = v_prev;
    {
        const QuasienergyOperator op = build_quasienergy_operator(0.0, 0.0, d, K);
        for (Eigen::Index s = 0; s < dim; ++s)
            surf.values[s](0, 0) = op.k.mat()(s, s).real();
    }

    std::vector<int> assign;
    std::vector<double> margins;

    for (Eigen::Index i = 0; i < n1; ++i) {
        for (Eigen::Index j = 0; j < n2; ++j) {
            if (i == 0 && j == 0) continue;
            if (j == 0)
                v_prev = v_rowstart;

            const QuasienergyOperator op =
                build_quasienergy_operator(omega1_grid(i), omega2_grid(j), d, K);
            const EigResult eig = eigensolve(op.k);

            const Eigen::MatrixXd overlap =
                (v_prev.adjoint() * eig.vectors).cwiseAbs();
            assign_sheets(overlap, assign, margins);

            Eigen::MatrixXcd v_new(dim, dim);
            for (Eigen::Index s = 0; s < dim; ++s) {
                surf.values[s](i, j) = eig.values(assign[s]);
                v_new.col(s) = eig.vectors.col(assign[s]);
                if (margins[s] < opts.ambiguity_margin)
                    surf.ambiguous.push_back(
                        {static_cast<int>(i), static_cast<int>(j), margins[s]});
            }
            v_prev = std::move(v_new);
            if (j == 0)
                v_rowstart = v_prev;
        }
    }
    return surf;
}

namespace {

struct BranchPair {
    Eigen::Index j1 = 0, j2 = 0; // best and second-best branch by overlap
    double p1 = 0.0, p2 = 0.0;   // their squared overlaps
};

BranchPair top_two(const Eigen::VectorXcd& w)
{
    BranchPair b;
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        const double pj = std::norm(w(j));
        if (pj > b.p1) {
            b.j2 = b.j1;
            b.p2 = b.p1;
            b.j1 = j;
            b.p1 = pj;
        } else if (pj > b.p2) {
            b.j2 = j;
            b.p2 = pj;
        }
    }
    return b;
}

} // namespace

PathResult track_adiabatic_path(const PulsePair& p, const DriveParams& d,
                                const PathOptions& opts)
{
    if (opts.n_samples < 16)
        throw ValidationError("path: need at least 16 samples");
    if (opts.region_cap < 2)
        throw ValidationError("path: region cap must be at least 2");
    opts.window.validate();
    const double half = std::abs(p.delay) + opts.window.window_pad * p.width;
    const double t0 = opts.window.t_start.value_or(-half);
    const double t1 = opts.window.t_end.value_or(half);
    const double dt = (t1 - t0) / (opts.n_samples - 1);

    const int K = opts.n_modes;
    const Eigen::Index dim = 3 * (2 * K + 1);
    const Eigen::Index start = QuasienergyOperator::index_of_label({1, 0, 0}, K);

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(start) = 1.0;

    // Nominal quasienergy sweep rate of this path: the peak slope of a
    // Gaussian envelope. Using the analytic rate keeps the crossing verdicts
    // independent of the sample spacing.
    const double rate_nominal =
        std::numbers::sqrt2 * std::exp(-0.5) * p.omega0 / p.width;

    // State of an open crossing event: the pre-event vector, the two pair
    // members and a branch follower (all continued sample to sample by
    // maximal eigenvector overlap), and the pair-gap history.
    bool open = false;
    Eigen::VectorXcd pre, u1, u2, uf;
    double gap_min = 0.0, gap_prev = 0.0;
    int age = 0;

    for (int s = 1; s < opts.n_samples; ++s) {
        const double t = t0 + dt * s;
        const Eigen::Vector2d om = p.envelopes(t);
        const QuasienergyOperator op =
            build_quasienergy_operator(om(0), om(1), d, K);
        const EigResult eig = eigensolve(op.k);

        if (!open) {
            const Eigen::VectorXcd w = eig.vectors.adjoint() * v;
            const BranchPair b = top_two(w);
            if (b.p2 < opts.region_floor) {
                if (b.p1 < opts.keep_fraction)
                    throw LostBranch("path: followed state dispersed at t = " +
                                     std::to_string(t) + " (weight " +
                                     std::to_string(b.p1) + ")");
                v = eig.vectors.col(b.j1); // smooth stretch: stay on the branch
                continue;
            }
            open = true;
            pre = v;
            u1 = eig.vectors.col(b.j1);
            u2 = eig.vectors.col(b.j2);
            uf = u1;
            gap_min = std::abs(eig.values(b.j1) - eig.values(b.j2));
            gap_prev = gap_min;
            age = 1;
        } else {
            Eigen::Index j1 = 0, j2 = 0, jf = 0;
            (eig.vectors.adjoint() * u1).cwiseAbs2().maxCoeff(&j1);
            const Eigen::VectorXcd w2 = eig.vectors.adjoint() * u2;
            w2.cwiseAbs2().maxCoeff(&j2);
            (eig.vectors.adjoint() * uf).cwiseAbs2().maxCoeff(&jf);
            if (j2 == j1) {
                const BranchPair b2 = top_two(w2);
                j2 = b2.j1 == j1 ? b2.j2 : b2.j1;
            }
            u1 = eig.vectors.col(j1);
            u2 = eig.vectors.col(j2);
            uf = eig.vectors.col(jf);
            const double g = std::abs(eig.values(j1) - eig.values(j2));
            gap_min = std::min(gap_min, g);
            gap_prev = g;
            ++age;
        }

        const std::complex<double> c1 = u1.dot(pre);
        const std::complex<double> c2 = u2.dot(pre);
        if (std::norm(c1) + std::norm(c2) < opts.keep_fraction)
            throw LostBranch("path: followed state dispersed at t = " +
                             std::to_string(t) + " (pair weight " +
                             std::to_string(std::norm(c1) + std::norm(c2)) +
                             ")");

        const bool passed = age > 1 && gap_prev >= opts.gap_ratio * gap_min;
        const bool last = s + 1 == opts.n_samples;
        if (passed || last || age >= opts.region_cap) {
            // Two-state Landau-Zener exponent of the swept pair at the
            // nominal rate. A capped event resolves with the gap minimum
            // gathered so far and reopens if it is still close.
            const double lz =
                0.5 * std::numbers::pi * gap_min * gap_min / rate_nominal;
            if (lz < opts.lz_threshold)
                v = (c1 * u1 + c2 * u2).normalized(); // keep the character
            else
                v = uf; // follow the branch
            open = false;
        }
    }

    Eigen::Index ibest = 0;
    v.cwiseAbs2().maxCoeff(&ibest);

    PathResult r;
    r.initial = {1, 0, 0};
    r.final = QuasienergyOperator::label_of_index(ibest, K);
    r.final_weight = std::norm(v(ibest));
    r.n_samples = opts.n_samples;
    return r;
}

namespace {

struct ChainPos {
    int k;   // chain index
    int pos; // 0..2 within the chain
};

// With one field off the quasienergy operator splits into independent
// three-state chains; these give the chain membership of a label.
ChainPos chain_of(Axis axis, const SheetLabel& l)
{
    if (axis == Axis::omega2_zero) {
        if (l.n == 1 && l.k2 == -l.k1) return {l.k1, 0};
        if (l.n == 2 && l.k1 + l.k2 == -1) return {-l.k2, 1};
        if (l.n == 3 && l.k2 == -(l.k1 + 2)) return {l.k1 + 2, 2};
    } else {
        if (l.n == 1 && l.k2 == -l.k1) return {l.k1, 0};
        if (l.n == 2 && l.k2 == -l.k1 - 1) return {l.k1, 1};
        if (l.n == 3 && l.k2 == -l.k1 - 2) return {l.k1, 2};
    }
    throw ValidationError("crossing: label " + to_string(l) +
                          " is not a zero-field state on this axis");
}

Eigen::Vector3d chain_diag(Axis axis, int k, const DriveParams& d)
{
    const double s = d.delta_signed(), d1 = d.delta1(), d2 = d.delta2();
    if (axis == Axis::omega2_zero)
        return {k * s, d1 + k * s, d1 + d2 + (k - 1) * s};
    return {k * s, d1 + (k + 1) * s, d1 + d2 + (k + 1) * s};
}

double chain_eigenvalue(const Eigen::Vector3d& diag, double amp, int rank)
{
    Eigen::Matrix3d h = diag.asDiagonal();
    h(0, 1) = h(1, 0) = 0.5 * amp;
    h(1, 2) = h(2, 1) = 0.5 * amp;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
    return es.eigenvalues()(rank);
}

int rank_at_zero(const Eigen::Vector3d& diag, int pos, double tol)
{
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (std::abs(diag(a) - diag(b)) < tol)
                throw ValidationError(
                    "crossing: chain is degenerate at zero field; branch undefined");
    int rank = 0;
    for (int q = 0; q < 3; ++q)
        if (diag(q) < diag(pos)) ++rank;
    return rank;
}

} // namespace

std::vector<Crossing> find_axis_intersections(const DriveParams& d,
                                              const CrossingQuery& q, int n_modes)
{
    if (!(q.amp_max > q.amp_min) || q.amp_min < 0.0)
        throw ValidationError("crossing: need 0 <= amp_min < amp_max");
    if (q.n_scan < 2)
        throw ValidationError("crossing: need n_scan >= 2");

    const ChainPos ca = chain_of(q.axis, q.a);
    const ChainPos cb = chain_of(q.axis, q.b);
    if (ca.k == cb.k)
        throw ValidationError("crossing: labels share a chain; their crossing is avoided");

    const double degtol = 1e-12 * d.delta();
    const Eigen::Vector3d da = chain_diag(q.axis, ca.k, d);
    const Eigen::Vector3d db = chain_diag(q.axis, cb.k, d);
    const int ra = rank_at_zero(da, ca.pos, degtol);
    const int rb = rank_at_zero(db, cb.pos, degtol);

    auto f = [&](double amp) {
        return chain_eigenvalue(da, amp, ra) - chain_eigenvalue(db, amp, rb);
    };

    const double tol = q.tol_factor * d.delta();
    std::vector<Crossing> out;
    double x_prev = q.amp_min, f_prev = f(x_prev);
    for (int i = 1; i <= q.n_scan; ++i) {
        const double x = q.amp_min +
                         (q.amp_max - q.amp_min) * static_cast<double>(i) / q.n_scan;
        const double fx = f(x);
        if ((f_prev < 0.0) != (fx < 0.0) || fx == 0.0 || f_prev == 0.0) {
            double a = x_prev, b = x, fa = f_prev;
            while (b - a > tol) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if ((fa < 0.0) != (fm < 0.0)) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            Crossing c;
            c.amplitude = 0.5 * (a + b);

            // Verify against the full truncated operator: the located pair
            // must be (numerically) degenerate there.
            const double o1 = q.axis == Axis::omega2_zero ? c.amplitude : 0.0;
            const double o2 = q.axis == Axis::omega2_zero ? 0.0 : c.amplitude;
            const QuasienergyOperator op = build_quasienergy_operator(o1, o2, d, n_modes);
            const EigResult eig = eigensolve(op.k);
            const double target = chain_eigenvalue(da, c.amplitude, ra);
            Eigen::Index i1 = -1, i2 = -1;
            double best = std::numeric_limits<double>::max(), second = best;
            for (Eigen::Index s = 0; s < eig.values.size(); ++s) {
                const double dist = std::abs(eig.values(s) - target);
                if (dist < best) {
                    second = best;
                    i2 = i1;
                    best = dist;
                    i1 = s;
                } else if (dist < second) {
                    second = dist;
                    i2 = s;
                }
            }
            c.gap = std::abs(eig.values(i1) - eig.values(i2));
            out.push_back(c);
        }
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

} // namespace spinladder
