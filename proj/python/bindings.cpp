#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <vector>

#include "spinladder/errors.hpp"
#include "spinladder/floquet.hpp"
#include "spinladder/hamiltonians.hpp"
#include "spinladder/params.hpp"
#include "spinladder/propagator.hpp"
#include "spinladder/regimes.hpp"
#include "spinladder/scan.hpp"

namespace py = pybind11;
using namespace spinladder;

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v)
{
    return std::vector<double>(v.data(), v.data() + v.size());
}

PropagationConfig make_ode_config(double rel_tol, double abs_tol)
{
    PropagationConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    return cfg;
}

py::dict transfer_dict(const TransferResult& r)
{
    py::dict d;
    d["populations"] = to_std(r.populations);
    d["norm_drift"] = r.norm_drift;
    d["t_start"] = r.t_start;
    d["t_end"] = r.t_end;
    d["n_accepted"] = r.stats.n_accepted;
    d["n_rejected"] = r.stats.n_rejected;
    d["warnings"] = r.warnings;
    return d;
}

py::dict classification_dict(const Classification& c)
{
    py::dict d;
    d["label"] = to_string(c.regime);
    d["confidence"] = c.confidence;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Adiabatic entangling transfer in a bichromatically driven spin ladder";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<SpinParams>(m, "SpinParams")
        .def(py::init<double, double, double, double>(), py::arg("xi"), py::arg("beta_z"),
             py::arg("phi1") = 0.0, py::arg("phi2") = 0.0)
        .def_readonly("xi", &SpinParams::xi)
        .def_readonly("beta_z", &SpinParams::beta_z)
        .def_readonly("phi1", &SpinParams::phi1)
        .def_readonly("phi2", &SpinParams::phi2)
        .def("transition_12", &SpinParams::transition_12)
        .def("transition_23", &SpinParams::transition_23);

    py::class_<DriveParams>(m, "DriveParams")
        .def(py::init<double, double, double>(), py::arg("delta1"), py::arg("delta2"),
             py::arg("delta"))
        .def_static("for_spin", &DriveParams::for_spin, py::arg("spin"), py::arg("delta1"),
                    py::arg("delta2"))
        .def_property_readonly("delta1", &DriveParams::delta1)
        .def_property_readonly("delta2", &DriveParams::delta2)
        .def_property_readonly("delta", &DriveParams::delta)
        .def_property_readonly("delta_signed", &DriveParams::delta_signed)
        .def("omega1", &DriveParams::omega1)
        .def("omega2", &DriveParams::omega2);

    py::class_<PulsePair>(m, "PulsePair")
        .def(py::init<double, double, double>(), py::arg("omega0"), py::arg("width"),
             py::arg("delay"))
        .def_static("from_area", &PulsePair::from_area, py::arg("area"), py::arg("omega0"),
                    py::arg("delay_over_width"), py::arg("sequence"))
        .def_readonly("omega0", &PulsePair::omega0)
        .def_readonly("width", &PulsePair::width)
        .def_readonly("delay", &PulsePair::delay)
        .def("sequence", &PulsePair::sequence)
        .def("envelopes", [](const PulsePair& p, double t) {
            Eigen::Vector2d e = p.envelopes(t);
            return py::make_tuple(e(0), e(1));
        });

    m.def("drive_exchange", py::overload_cast<const DriveParams&>(&drive_exchange));
    m.def("drive_exchange", py::overload_cast<const PulsePair&>(&drive_exchange));

    py::class_<SheetLabel>(m, "SheetLabel")
        .def(py::init([](int n, int k1, int k2) { return SheetLabel{n, k1, k2}; }),
             py::arg("n"), py::arg("k1"), py::arg("k2"))
        .def_readwrite("n", &SheetLabel::n)
        .def_readwrite("k1", &SheetLabel::k1)
        .def_readwrite("k2", &SheetLabel::k2)
        .def("__eq__", [](const SheetLabel& a, const SheetLabel& b) { return a == b; })
        .def("__repr__", [](const SheetLabel& l) { return to_string(l); });

    py::enum_<Axis>(m, "Axis")
        .value("omega1_zero", Axis::omega1_zero)
        .value("omega2_zero", Axis::omega2_zero);

    m.def(
        "simulate_transfer",
        [](const PulsePair& p, const DriveParams& d, double rel_tol, double abs_tol) {
            TransferResult r = [&] {
                // long computation; the dict is built with the GIL held
                py::gil_scoped_release release;
                return simulate_transfer(p, d, make_ode_config(rel_tol, abs_tol));
            }();
            return transfer_dict(r);
        },
        py::arg("pulses"), py::arg("drive"), py::arg("rel_tol") = 1e-9,
        py::arg("abs_tol") = 1e-12);

    m.def(
        "simulate_full",
        [](const PulsePair& p, const SpinParams& spin, const DriveParams& d, double rel_tol,
           double abs_tol) {
            FullTransferResult r = simulate_full(p, spin, d, make_ode_config(rel_tol, abs_tol));
            py::dict out;
            out["populations"] = to_std(r.populations);
            out["norm_drift"] = r.norm_drift;
            out["singlet_drift"] = r.singlet_drift;
            out["t_start"] = r.t_start;
            out["t_end"] = r.t_end;
            out["warnings"] = r.warnings;
            return out;
        },
        py::arg("pulses"), py::arg("spin"), py::arg("drive"), py::arg("rel_tol") = 1e-9,
        py::arg("abs_tol") = 1e-12);

    m.def(
        "verify_drive_exchange",
        [](const PulsePair& p, const DriveParams& d) {
            ExchangeCheck c = [&] {
                py::gil_scoped_release release;
                return verify_drive_exchange(p, d);
            }();
            py::dict out;
            out["p_direct"] = to_std(c.p_direct);
            out["p_exchanged"] = to_std(c.p_exchanged);
            out["max_pop_diff"] = c.max_pop_diff;
            return out;
        },
        py::arg("pulses"), py::arg("drive"));

    m.def(
        "quasienergies",
        [](double omega1_amp, double omega2_amp, const DriveParams& d, int n_modes) {
            QuasienergyOperator op =
                build_quasienergy_operator(omega1_amp, omega2_amp, d, n_modes);
            return to_std(eigensolve(op.k).values);
        },
        py::arg("omega1_amp"), py::arg("omega2_amp"), py::arg("drive"),
        py::arg("n_modes") = 12);

    m.def(
        "track_adiabatic_path",
        [](const PulsePair& p, const DriveParams& d, int n_modes, int n_samples) {
            PathOptions opts;
            opts.n_modes = n_modes;
            opts.n_samples = n_samples;
            PathResult r = track_adiabatic_path(p, d, opts);
            py::dict out;
            out["initial"] = py::make_tuple(r.initial.n, r.initial.k1, r.initial.k2);
            out["final"] = py::make_tuple(r.final.n, r.final.k1, r.final.k2);
            out["final_weight"] = r.final_weight;
            out["n_samples"] = r.n_samples;
            return out;
        },
        py::arg("pulses"), py::arg("drive"), py::arg("n_modes") = 12,
        py::arg("n_samples") = 2001);

    m.def(
        "find_axis_intersections",
        [](const DriveParams& d, Axis axis, const SheetLabel& a, const SheetLabel& b,
           double amp_min, double amp_max, int n_scan, int n_modes) {
            CrossingQuery q;
            q.axis = axis;
            q.a = a;
            q.b = b;
            q.amp_min = amp_min;
            q.amp_max = amp_max;
            q.n_scan = n_scan;
            std::vector<Crossing> found = find_axis_intersections(d, q, n_modes);
            py::list out;
            for (const Crossing& c : found) {
                py::dict item;
                item["amplitude"] = c.amplitude;
                item["gap"] = c.gap;
                out.append(item);
            }
            return out;
        },
        py::arg("drive"), py::arg("axis"), py::arg("a"), py::arg("b"),
        py::arg("amp_min") = 0.0, py::arg("amp_max") = 2.0, py::arg("n_scan") = 400,
        py::arg("n_modes") = 12);

    m.def(
        "classify_weak_field",
        [](const DriveParams& d) { return classification_dict(classify_weak_field(d)); },
        py::arg("drive"));
    m.def(
        "classify_at_field",
        [](const DriveParams& d, double omega0) {
            return classification_dict(classify_at_field(d, omega0));
        },
        py::arg("drive"), py::arg("omega0"));

    m.def("island_a_lower_delta", &island_a_lower_delta, py::arg("omega2"), py::arg("delta"),
          py::arg("sign"));
    m.def("island_a_upper_omega1", &island_a_upper_omega1, py::arg("detuning"),
          py::arg("delta"));
    m.def("island_a_seq2_upper_omega1", &island_a_seq2_upper_omega1, py::arg("detuning"),
          py::arg("delta"), py::arg("sign"));
    m.def("resonance_23_omega2", &resonance_23_omega2, py::arg("delta1"), py::arg("delta2"),
          py::arg("delta"));
    m.def("dynamical_resonance_omega2", &dynamical_resonance_omega2, py::arg("delta1"),
          py::arg("delta"));
    m.def("island_d_upper_omega1", &island_d_upper_omega1, py::arg("detuning"),
          py::arg("delta"));
    m.def("island_dprime_omega1", &island_dprime_omega1, py::arg("detuning"),
          py::arg("delta"));
    m.def("island_dprime_omega2", &island_dprime_omega2, py::arg("detuning"),
          py::arg("delta"));
    m.def("weak_field_limit_omega0", &weak_field_limit_omega0, py::arg("delta1"),
          py::arg("delta2"));

    m.def(
        "boundary_overlays",
        [](int sequence, double delta, double detuning_lo, double detuning_hi,
           double omega_max, int n_samples) {
            py::list out;
            for (const BoundaryCurve& c :
                 boundary_overlays(sequence, delta, detuning_lo, detuning_hi, omega_max,
                                   n_samples)) {
                py::dict item;
                py::list pts;
                for (const CurvePoint& p : c.points)
                    pts.append(py::make_tuple(p.omega0, p.delta));
                item["id"] = c.id;
                item["points"] = pts;
                item["excluded"] = c.excluded;
                out.append(item);
            }
            return out;
        },
        py::arg("sequence"), py::arg("delta") = 1.0, py::arg("detuning_lo") = -2.2,
        py::arg("detuning_hi") = 1.1, py::arg("omega_max") = 2.2, py::arg("n_samples") = 400);

    // Runs one configuration (same key=value format as the CLI) and returns
    // the CSV or JSON output as a string.
    m.def(
        "run",
        [](const std::string& config_text) {
            std::istringstream in(config_text);
            ScanConfig c = parse_scan_config(in);
            c.validate();
            std::ostringstream out;
            if (c.mode == "map")
                run_transfer_map(c, out);
            else if (c.mode == "surface")
                run_surface_dump(c, out);
            else if (c.mode == "boundaries")
                run_boundary_overlays(c, out);
            else if (c.mode == "simulate")
                run_simulation(c, out);
            else
                run_classification(c, out);
            return out.str();
        },
        py::arg("config_text"), py::call_guard<py::gil_scoped_release>());
}
