#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spinladder/hermitian.hpp"
#include "spinladder/params.hpp"
#include "spinladder/propagator.hpp"

namespace spinladder {

// Photon labels of a dressed sheet: ladder state n (1..3) and the net photon
// numbers (k1, k2) of the two drives relative to the undressed origin.
// Quasienergies repeat with period delta: (n; k1, k2) = (n; k1-1, k2+1) + delta.
struct SheetLabel {
    int n = 1;
    int k1 = 0;
    int k2 = 0;
    bool operator==(const SheetLabel&) const = default;
};

std::string to_string(const SheetLabel& l);

// Quasienergy operator of the beat-periodic rotating-frame Hamiltonian at
// frozen envelope amplitudes, truncated to Fourier blocks m = -n_modes ..
// n_modes of size 3 (basis index 3*(m+n_modes) + n - 1). Block m carries the
// labels (1; m, -m), (2; m-1, -m), (3; m-1, -m-1).
struct QuasienergyOperator {
    HermitianMatrix k;
    int n_modes;
    double delta;

    static SheetLabel label_of_index(Eigen::Index idx, int n_modes);
    // -1 when the label falls outside the truncated basis.
    static Eigen::Index index_of_label(const SheetLabel& l, int n_modes);
};

QuasienergyOperator build_quasienergy_operator(double omega1_amp, double omega2_amp,
                                               const DriveParams& d, int n_modes = 12);

struct SurfaceOptions {
    int n_modes = 12;
    // A continuation step whose best-to-second overlap margin drops below
    // this is recorded as ambiguous.
    double ambiguity_margin = 0.1;
};

struct SurfaceAmbiguity {
    int i, j;
    double margin;
};

// Quasienergy sheets over an (amplitude 1, amplitude 2) grid, each sheet
// followed by eigenvector continuation from its exact zero-field label.
// Grids must start at zero field where the labels are defined.
struct QuasienergySurface {
    Eigen::VectorXd omega1, omega2;
    std::vector<SheetLabel> labels;
    std::vector<Eigen::MatrixXd> values; // values[sheet](i, j)
    std::vector<SurfaceAmbiguity> ambiguous;
    int n_modes = 0;

    const Eigen::MatrixXd& sheet(const SheetLabel& l) const;
};

QuasienergySurface compute_surface(const Eigen::VectorXd& omega1_grid,
                                   const Eigen::VectorXd& omega2_grid,
                                   const DriveParams& d,
                                   const SurfaceOptions& opts = {});

struct PathOptions {
    int n_modes = 12;
    int n_samples = 2001;
    // A crossing region opens when more than this fraction of the followed
    // vector leaks onto a second branch within one sample step.
    double region_floor = 0.005;
    // Landau-Zener adiabaticity exponent separating the two outcomes of a
    // crossing region: below it the sweep keeps its diabatic character,
    // above it the energy-ordered branch is followed. The exponent uses the
    // pulse pair's peak envelope slope as the sweep rate, so the verdict does
    // not depend on the sample spacing. The default keeps the character when
    // more than half the population would jump.
    double lz_threshold = 0.693147;
    // Minimum weight the dominant branch pair must hold at every sample.
    double keep_fraction = 0.9;
    // A region also resolves once the pair gap has reopened past this
    // multiple of its running minimum (the crossing has been passed).
    double gap_ratio = 2.5;
    // Samples after which an open region resolves with the history gathered
    // so far; bounds the staleness of the pre-region reference vector.
    int region_cap = 64;
    PropagationConfig window; // only the window fields are used
};

struct PathResult {
    SheetLabel initial;
    SheetLabel final;
    double final_weight = 0.0; // weight on the final label's basis state
    int n_samples = 0;
};

// Follows the dressed state that starts on (1; 0, 0) along the pulse path
// (amplitudes swept through the pulse sequence) and reports the sheet it is
// connected to at the end. Smooth stretches follow the eigenvector-continuous
// branch. At each avoided crossing a two-state Landau-Zener estimate built
// from the local gap minimum and sweep rate decides whether the character
// jumps through (narrow crossings near the zero-field axes, where a coupling
// is exponentially small) or follows the branch (interior seams). Throws
// LostBranch when the followed vector disperses over three or more branches.
PathResult track_adiabatic_path(const PulsePair& p, const DriveParams& d,
                                const PathOptions& opts = {});

// Axis along which one amplitude is held at zero while the other is scanned.
enum class Axis { omega1_zero, omega2_zero };

struct CrossingQuery {
    Axis axis = Axis::omega2_zero;
    SheetLabel a, b;
    double amp_min = 0.0;
    double amp_max = 2.0;
    int n_scan = 400;
    double tol_factor = 1e-8; // bisection tolerance in units of delta
};

struct Crossing {
    double amplitude = 0.0;
    double gap = 0.0; // full-operator gap at the located amplitude
};

// True crossings between two dressed sheets on a zero-field axis. With one
// field off the quasienergy operator decomposes into independent three-state
// chains, so sheets from different chains cross exactly; the scan brackets
// sign changes of their difference and bisects each bracket.
std::vector<Crossing> find_axis_intersections(const DriveParams& d,
                                              const CrossingQuery& q, int n_modes = 12);

} // namespace spinladder
