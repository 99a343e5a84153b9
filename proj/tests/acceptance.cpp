// Acceptance gate: one line per criterion, exit code = number of failures.
// Tolerances are pinned here on purpose; a failing line means the library
// does not reproduce the physics, not that a knob needs loosening.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "spinladder/errors.hpp"
#include "spinladder/floquet.hpp"
#include "spinladder/params.hpp"
#include "spinladder/propagator.hpp"
#include "spinladder/regimes.hpp"

using namespace spinladder;

namespace {

int failures = 0;

void report(int id, bool pass, const char* what, const std::string& detail)
{
    if (!pass) ++failures;
    std::printf("criterion %2d: %s  %s (%s)\n", id, pass ? "PASS" : "FAIL", what,
                detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TransferResult transfer(double om, double det, int seq)
{
    return simulate_transfer(PulsePair::from_area(50.0, om, 1.7, seq),
                             DriveParams(det, det, 1.0));
}

PathResult track(double om, double det, int seq, int n_samples = 2001)
{
    PathOptions opts;
    opts.n_samples = n_samples;
    return track_adiabatic_path(PulsePair::from_area(50.0, om, 1.7, seq),
                                DriveParams(det, det, 1.0), opts);
}

std::string fmt(const char* f, ...)
{
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

// Criteria 1, 2: the pulse order selects the reached state near resonance.
void criterion_1()
{
    const auto t0 = std::chrono::steady_clock::now();
    const TransferResult r1 = transfer(0.35, -0.05, 1);
    const double s1 = seconds_since(t0);
    const auto t1 = std::chrono::steady_clock::now();
    const TransferResult r2 = transfer(0.35, -0.05, 2);
    const double s2 = seconds_since(t1);

    const bool pass =
        r1.populations(1) >= 0.9 && r2.populations(2) >= 0.9 && s1 <= 10.0 && s2 <= 10.0;
    report(1, pass, "pulse order selects the target state near resonance",
           fmt("P2=%.4f seq1, P3=%.4f seq2, %.2fs/%.2fs", r1.populations(1),
               r2.populations(2), s1, s2));
}

void criterion_2()
{
    const TransferResult r1 = transfer(0.7, -0.25, 1);
    const TransferResult r2 = transfer(0.7, -0.25, 2);
    const bool pass = r1.populations(1) >= 0.9 && r2.populations(1) >= 0.9;
    report(2, pass, "order-independent transfer deeper in the lower island",
           fmt("P2=%.4f seq1, P2=%.4f seq2", r1.populations(1), r2.populations(1)));
}

void criterion_3()
{
    const TransferResult r1 = transfer(0.8, -0.9, 1);
    const TransferResult r2 = transfer(0.8, -0.9, 2);
    const PathResult p1 = track(0.8, -0.9, 1);
    const PathResult p2 = track(0.8, -0.9, 2);
    const SheetLabel want{2, 0, -1};
    const bool pass = r1.populations(1) >= 0.9 && r2.populations(1) >= 0.9 &&
                      p1.final == want && p2.final == want;
    report(3, pass, "detached-level island transfers on the one-photon sheet",
           fmt("P2=%.4f/%.4f, path %s/%s", r1.populations(1), r2.populations(1),
               to_string(p1.final).c_str(), to_string(p2.final).c_str()));
}

void criterion_4()
{
    const TransferResult r1 = transfer(1.5, -1.4, 1);
    const TransferResult r2 = transfer(1.5, -1.4, 2);
    const PathResult p1 = track(1.5, -1.4, 1);
    const PathResult p2 = track(1.5, -1.4, 2);
    const SheetLabel want{2, 1, -2};
    const bool pass = r1.populations(1) >= 0.9 && r2.populations(1) >= 0.9 &&
                      p1.final == want && p2.final == want;
    report(4, pass, "strong-field island transfers on the two-photon sheet",
           fmt("P2=%.4f/%.4f, path %s/%s", r1.populations(1), r2.populations(1),
               to_string(p1.final).c_str(), to_string(p2.final).c_str()));
}

void criterion_5()
{
    const TransferResult r1 = transfer(0.5, -1.05, 1);
    const TransferResult r2 = transfer(0.5, -1.05, 2);
    const bool pass = r1.populations(1) <= 0.1 && r2.populations(1) <= 0.1;
    report(5, pass, "between the islands the transfer is suppressed",
           fmt("P2=%.4f seq1, P2=%.4f seq2", r1.populations(1), r2.populations(1)));
}

// Criterion 6: the closed-form island boundaries match exact crossings of
// the dressed sheets on the zero-field axes, sampled where the underlying
// perturbative models hold (small amplitude, far from competing
// resonances).
struct BoundaryCase {
    const char* name;
    Axis axis;
    SheetLabel a, b;
    double det_lo, det_hi;
    double (*boundary)(double det);
};

double worst_boundary_gap(const BoundaryCase& c)
{
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double det = c.det_lo + (c.det_hi - c.det_lo) * k / 9.0;
        const DriveParams d(det, det, 1.0);
        CrossingQuery q;
        q.axis = c.axis;
        q.a = c.a;
        q.b = c.b;
        q.amp_min = 1e-4;
        q.amp_max = 2.5;
        q.n_scan = 1000;
        const std::vector<Crossing> cs = find_axis_intersections(d, q);
        const double expected = c.boundary(det);
        double best = 1e9;
        for (const Crossing& x : cs)
            best = std::min(best, std::abs(x.amplitude - expected));
        worst = std::max(worst, best);
    }
    return worst;
}

// The lower boundary is stated as detuning(amplitude); invert it by
// bisection (it decreases monotonically on this branch).
double a_lower_inverse(double det)
{
    double lo = 1e-6, hi = 2.5;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (island_a_lower_delta(mid, 1.0, -1) > det ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

void criterion_6()
{
    const BoundaryCase cases[] = {
        {"a_lower", Axis::omega1_zero, {1, 0, 0}, {2, -1, 0}, -0.20, -0.02,
         a_lower_inverse},
        {"a_upper", Axis::omega2_zero, {1, 0, 0}, {3, 0, -2}, -0.48, -0.31,
         [](double det) { return island_a_upper_omega1(det, 1.0); }},
        {"a_seq2_upper", Axis::omega2_zero, {2, -1, 0}, {3, -1, -1}, -0.09, -0.01,
         [](double det) { return island_a_seq2_upper_omega1(det, 1.0, -1); }},
        {"d_upper", Axis::omega2_zero, {1, 0, 0}, {2, 0, -1}, -0.99, -0.90,
         [](double det) { return island_d_upper_omega1(det, 1.0); }},
        {"dprime_omega2", Axis::omega1_zero, {1, 0, 0}, {2, 1, -2}, -1.98, -1.72,
         [](double det) { return island_dprime_omega2(det, 1.0); }},
        {"dprime_omega1", Axis::omega2_zero, {1, 0, 0}, {2, 1, -2}, -1.98, -1.78,
         [](double det) { return island_dprime_omega1(det, 1.0); }},
    };

    bool pass = true;
    std::string detail;
    for (const BoundaryCase& c : cases) {
        const double worst = worst_boundary_gap(c);
        if (worst > 2e-2) pass = false;
        if (!detail.empty()) detail += ", ";
        detail += fmt("%s=%.1e", c.name, worst);
    }
    report(6, pass, "closed-form boundaries match exact axis crossings to 2e-2",
           detail);
}

// Criterion 7: every tracked quasienergy sheet repeats with the beat
// period: (n; k1, k2) sits exactly delta above (n; k1-1, k2+1).
void criterion_7()
{
    const struct {
        double om_max, det;
    } settings[] = {{0.35, -0.05}, {0.7, -0.25}, {0.8, -0.9}, {1.5, -1.4}};

    double worst = 0.0;
    int pairs_checked = 0;
    for (const auto& s : settings) {
        const DriveParams d(s.det, s.det, 1.0);
        Eigen::VectorXd grid(20);
        for (int i = 0; i < 20; ++i)
            grid(i) = s.om_max * i / 19.0;
        const QuasienergySurface surf = compute_surface(grid, grid, d);

        int pairs = 0;
        for (int n = 1; n <= 3; ++n) {
            for (int k1 = -2; k1 <= 2; ++k1) {
                const int k2 = n == 1 ? -k1 : (n == 2 ? -1 - k1 : -2 - k1);
                const SheetLabel a{n, k1, k2};
                const SheetLabel b{n, k1 - 1, k2 + 1};
                if (std::abs(b.k1) > 2 || std::abs(b.k2) > 2 || std::abs(k2) > 2)
                    continue;
                const Eigen::MatrixXd diff =
                    surf.sheet(a) - surf.sheet(b) -
                    Eigen::MatrixXd::Constant(20, 20, d.delta());
                worst = std::max(worst, diff.cwiseAbs().maxCoeff());
                ++pairs;
            }
        }
        pairs_checked = pairs;
    }
    const bool pass = worst <= 1e-6 && pairs_checked == 9;
    report(7, pass, "quasienergy sheets repeat with the beat period",
           fmt("max deviation %.1e over %d pairs x 4 settings", worst, pairs_checked));
}

// Criterion 8: the populations are exactly invariant under the exchange of
// the two drive roles; the numerical check holds over random settings.
void criterion_8()
{
    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> om_dist(0.02, 1.0);
    std::uniform_real_distribution<double> det_dist(-2.0, 1.0);
    std::uniform_int_distribution<int> seq_dist(1, 2);

    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double om = om_dist(rng);
        const double det = det_dist(rng);
        const int seq = seq_dist(rng);
        const ExchangeCheck chk =
            verify_drive_exchange(PulsePair::from_area(50.0, om, 1.7, seq),
                                  DriveParams(det, det, 1.0));
        worst = std::max(worst, chk.max_pop_diff);
    }
    report(8, worst <= 1e-4, "drive exchange leaves the populations invariant",
           fmt("max population difference %.1e over 100 draws", worst));
}

// Criterion 9: the rotating-frame model reproduces the lab-frame dynamics
// of the two driven spins, and the singlet stays decoupled exactly.
void criterion_9()
{
    const SpinParams spin(-0.25, 60.0);
    double worst_diff = 0.0, worst_singlet = 0.0;
    for (const auto& [om, det] : {std::pair{0.35, -0.05}, std::pair{0.5, -0.9}}) {
        const DriveParams d = DriveParams::for_spin(spin, det, det);
        const PulsePair p = PulsePair::from_area(50.0, om, 1.7, 1);
        const FullTransferResult f = simulate_full(p, spin, d);
        const TransferResult r = simulate_transfer(p, d);
        for (int k = 0; k < 3; ++k)
            worst_diff =
                std::max(worst_diff, std::abs(f.populations(k) - r.populations(k)));
        worst_singlet = std::max(worst_singlet, f.singlet_drift);
    }
    const bool pass = worst_diff <= 0.05 && worst_singlet <= 1e-9;
    report(9, pass, "lab-frame dynamics match the rotating frame",
           fmt("max population diff %.1e, singlet drift %.1e", worst_diff,
               worst_singlet));
}

// Criterion 10: the transfer map shows disjoint high-transfer islands and
// the adiabatic paths identify distinct dressed sheets behind them.
void criterion_10()
{
    const auto t0 = std::chrono::steady_clock::now();
    const int n_om = 41, n_det = 21;
    std::vector<double> om(n_om), det(n_det);
    for (int i = 0; i < n_om; ++i)
        om[i] = 5.0 * (i + 1) / n_om;
    for (int j = 0; j < n_det; ++j)
        det[j] = -2.0 + 1.0 * j / (n_det - 1);

    std::vector<double> p2(static_cast<std::size_t>(n_om) * n_det, 0.0);
    for (int i = 0; i < n_om; ++i)
        for (int j = 0; j < n_det; ++j)
            p2[static_cast<std::size_t>(i) * n_det + j] =
                transfer(om[i], det[j], 1).populations(1);
    const double map_seconds = seconds_since(t0);

    // 4-connected components of the cells above the transfer threshold.
    std::vector<int> comp(p2.size(), -1);
    int n_comp = 0;
    for (std::size_t seed = 0; seed < p2.size(); ++seed) {
        if (p2[seed] < 0.9 || comp[seed] >= 0) continue;
        std::vector<std::size_t> stack{seed};
        comp[seed] = n_comp;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            const int i = static_cast<int>(cur) / n_det;
            const int j = static_cast<int>(cur) % n_det;
            const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
            for (int q = 0; q < 4; ++q) {
                const int ni = i + di[q], nj = j + dj[q];
                if (ni < 0 || ni >= n_om || nj < 0 || nj >= n_det) continue;
                const std::size_t np = static_cast<std::size_t>(ni) * n_det + nj;
                if (p2[np] >= 0.9 && comp[np] < 0) {
                    comp[np] = n_comp;
                    stack.push_back(np);
                }
            }
        }
        ++n_comp;
    }

    // Label each island by the dressed sheet its best cells connect to,
    // inner islands first; a dispersed path falls through to the next cell.
    struct Island {
        double min_om = 1e9;
        std::vector<std::size_t> cells;
    };
    std::vector<Island> islands(n_comp);
    for (std::size_t c = 0; c < p2.size(); ++c) {
        if (comp[c] < 0) continue;
        islands[comp[c]].cells.push_back(c);
        islands[comp[c]].min_om =
            std::min(islands[comp[c]].min_om, om[c / n_det]);
    }
    std::sort(islands.begin(), islands.end(),
              [](const Island& a, const Island& b) { return a.min_om < b.min_om; });

    bool found_one_photon = false, found_two_photon = false;
    for (const Island& isl : islands) {
        if (found_one_photon && found_two_photon) break;
        std::vector<std::size_t> cells = isl.cells;
        std::sort(cells.begin(), cells.end(),
                  [&](std::size_t a, std::size_t b) { return p2[a] > p2[b]; });
        const int attempts = std::min<std::size_t>(3, cells.size());
        for (int a = 0; a < attempts; ++a) {
            const double cell_om = om[cells[a] / n_det];
            const double cell_det = det[cells[a] % n_det];
            try {
                const PathResult r =
                    track(cell_om, cell_det, 1, cell_om > 1.2 ? 8001 : 2001);
                if (r.final == SheetLabel{2, 0, -1}) found_one_photon = true;
                if (r.final == SheetLabel{2, 1, -2}) found_two_photon = true;
                break;
            } catch (const LostBranch&) {
                continue;
            }
        }
    }

    const bool pass = n_comp >= 2 && found_one_photon && found_two_photon &&
                      map_seconds <= 1800.0;
    report(10, pass, "transfer map resolves disjoint islands on distinct sheets",
           fmt("%d islands, one-photon %s, two-photon %s, map %.0fs", n_comp,
               found_one_photon ? "yes" : "no", found_two_photon ? "yes" : "no",
               map_seconds));
}

} // namespace

int main()
{
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}
