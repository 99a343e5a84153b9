#pragma once

#include <iosfwd>
#include <string>

#include "spinladder/params.hpp"

namespace spinladder {

// Parameter-scan and single-run configuration. All frequencies are in units
// of the beat frequency between the two carriers, all times in units of its
// inverse.
struct ScanConfig {
    std::string mode = "map"; // map | surface | boundaries | simulate | classify

    // Peak-amplitude grid. A non-positive omega0_min starts the grid one
    // step above zero (a zero-amplitude node has no pulses to order).
    double omega0_min = 0.0;
    double omega0_max = 2.2;
    int omega0_count = 61;

    // Detuning grid.
    double delta_min = -2.2;
    double delta_max = 1.1;
    int delta_count = 61;

    int sequence = 1;         // 1: drive-1 pulse first, 2: drive-2 first
    double pulse_area = 50.0; // peak amplitude times width
    double tau_over_T = 1.7;  // peak separation over width (sign from sequence)

    // How the grid detuning maps to (delta1, delta2): equal detunings, the
    // exchange-symmetric image of equal detunings, or delta1 scanned with
    // delta2 held at the configured value.
    std::string restriction = "delta1_eq_delta2";

    int n_modes = 12;
    std::string out;
    int workers = 0; // 0: all hardware threads

    // Single-point inputs (simulate / classify / surface).
    double omega0 = 0.35;
    double delta1 = -0.05;
    double delta2 = -0.05;
    double beta_z = 0.0; // > 0: also run the lab-frame comparison

    void validate() const;
};

// key=value per line; '#' lines are comments, except that a comment whose
// remainder parses as a known key=value is applied too, so the metadata
// echoed at the top of every output file round-trips through the parser.
ScanConfig parse_scan_config(std::istream& in);
ScanConfig parse_scan_config_file(const std::string& path);
std::string serialize_scan_config(const ScanConfig& c);

// Transfer-efficiency map over the (omega0, detuning) grid. CSV columns:
// omega0_over_delta, delta_over_delta, p1, p2, p3, norm_drift. Nodes where
// the integration fails are emitted as NaN. The node results are bitwise
// independent of the worker count.
void run_transfer_map(const ScanConfig& c, std::ostream& out);

// Dressed-sheet dump over an (omega1, omega2) grid at fixed detunings
// (delta1/delta2 fields). CSV columns: omega1, omega2, label_n, label_k1,
// label_k2, quasienergy. Sheets within a few net photons of the origin are
// emitted.
void run_surface_dump(const ScanConfig& c, std::ostream& out);

// Island-boundary overlay curves for the configured sequence over the map
// window. CSV columns: curve_id, abscissa, ordinate (amplitude, detuning).
void run_boundary_overlays(const ScanConfig& c, std::ostream& out);

// Single-point report (JSON): rotating-frame transfer, drive-exchange
// check, regime classification, the dressed sheet reached by the adiabatic
// path, and optionally the lab-frame comparison when beta_z is set.
void run_simulation(const ScanConfig& c, std::ostream& out);

// Regime classification report (JSON) for the configured point.
void run_classification(const ScanConfig& c, std::ostream& out);

// Dispatch on c.mode, writing to c.out or stdout.
void run_mode(const ScanConfig& c);

} // namespace spinladder
