#include "spinladder/scan.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "spinladder/errors.hpp"
#include "spinladder/floquet.hpp"
#include "spinladder/propagator.hpp"
#include "spinladder/regimes.hpp"

namespace spinladder {

namespace {

const char* const kModes[] = {"map", "surface", "boundaries", "simulate", "classify"};
const char* const kRestrictions[] = {"delta1_eq_delta2", "delta2_eq_delta1_plus_2delta",
                                     "independent"};

bool one_of(const std::string& v, const auto& set)
{
    for (const char* s : set)
        if (v == s) return true;
    return false;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

void ScanConfig::validate() const
{
    if (!one_of(mode, kModes))
        throw ValidationError("config: unknown mode '" + mode + "'");
    if (!one_of(restriction, kRestrictions))
        throw ValidationError("config: unknown restriction '" + restriction + "'");
    if (omega0_count < 1 || delta_count < 1)
        throw ValidationError("config: grid counts must be >= 1");
    if (!(omega0_max > 0.0) || omega0_min > omega0_max)
        throw ValidationError("config: bad amplitude range");
    if (delta_count > 1 && !(delta_min < delta_max))
        throw ValidationError("config: bad detuning range");
    if (sequence != 1 && sequence != 2)
        throw ValidationError("config: sequence must be 1 or 2");
    if (!(pulse_area > 0.0))
        throw ValidationError("config: pulse area must be positive");
    if (!(tau_over_T >= 0.0))
        throw ValidationError("config: tau_over_T must be >= 0");
    if (n_modes < 4)
        throw ValidationError("config: n_modes must be >= 4");
    if (workers < 0)
        throw ValidationError("config: workers must be >= 0");
    if (!(omega0 > 0.0))
        throw ValidationError("config: omega0 must be positive");
    if (beta_z < 0.0)
        throw ValidationError("config: beta_z must be >= 0");
}

namespace {

struct Field {
    const char* key;
    enum { Str, Dbl, Int } type;
    void* (*get)(ScanConfig&);
};

// One table drives parsing and serialization so the echo stays in sync.
const Field kFields[] = {
    {"mode", Field::Str, [](ScanConfig& c) -> void* { return &c.mode; }},
    {"omega0_min", Field::Dbl, [](ScanConfig& c) -> void* { return &c.omega0_min; }},
    {"omega0_max", Field::Dbl, [](ScanConfig& c) -> void* { return &c.omega0_max; }},
    {"omega0_count", Field::Int, [](ScanConfig& c) -> void* { return &c.omega0_count; }},
    {"delta_min", Field::Dbl, [](ScanConfig& c) -> void* { return &c.delta_min; }},
    {"delta_max", Field::Dbl, [](ScanConfig& c) -> void* { return &c.delta_max; }},
    {"delta_count", Field::Int, [](ScanConfig& c) -> void* { return &c.delta_count; }},
    {"sequence", Field::Int, [](ScanConfig& c) -> void* { return &c.sequence; }},
    {"pulse_area", Field::Dbl, [](ScanConfig& c) -> void* { return &c.pulse_area; }},
    {"tau_over_T", Field::Dbl, [](ScanConfig& c) -> void* { return &c.tau_over_T; }},
    {"restriction", Field::Str, [](ScanConfig& c) -> void* { return &c.restriction; }},
    {"n_modes", Field::Int, [](ScanConfig& c) -> void* { return &c.n_modes; }},
    {"out", Field::Str, [](ScanConfig& c) -> void* { return &c.out; }},
    {"workers", Field::Int, [](ScanConfig& c) -> void* { return &c.workers; }},
    {"omega0", Field::Dbl, [](ScanConfig& c) -> void* { return &c.omega0; }},
    {"delta1", Field::Dbl, [](ScanConfig& c) -> void* { return &c.delta1; }},
    {"delta2", Field::Dbl, [](ScanConfig& c) -> void* { return &c.delta2; }},
    {"beta_z", Field::Dbl, [](ScanConfig& c) -> void* { return &c.beta_z; }},
};

bool apply_field(ScanConfig& c, const std::string& key, const std::string& value,
                 int line_no, bool strict)
{
    for (const Field& f : kFields) {
        if (key != f.key) continue;
        void* p = f.get(c);
        try {
            switch (f.type) {
            case Field::Str: *static_cast<std::string*>(p) = value; break;
            case Field::Dbl: {
                std::size_t pos = 0;
                *static_cast<double*>(p) = std::stod(value, &pos);
                if (pos != value.size()) throw std::invalid_argument(value);
                break;
            }
            case Field::Int: {
                std::size_t pos = 0;
                *static_cast<int*>(p) = std::stoi(value, &pos);
                if (pos != value.size()) throw std::invalid_argument(value);
                break;
            }
            }
        } catch (const std::exception&) {
            throw ValidationError("config line " + std::to_string(line_no) +
                                  ": bad value '" + value + "' for key '" + key + "'");
        }
        return true;
    }
    if (strict)
        throw ValidationError("config line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
    return false;
}

} // namespace

ScanConfig parse_scan_config(std::istream& in)
{
    ScanConfig c;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty()) continue;
        bool strict = true;
        if (s[0] == '#') {
            s = trim(s.substr(1));
            strict = false; // echoed metadata is applied, prose is ignored
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            if (strict)
                throw ValidationError("config line " + std::to_string(line_no) +
                                      ": expected key=value");
            continue;
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        apply_field(c, key, value, line_no, strict);
    }
    c.validate();
    return c;
}

ScanConfig parse_scan_config_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ValidationError("config: cannot open '" + path + "'");
    return parse_scan_config(f);
}

std::string serialize_scan_config(const ScanConfig& c)
{
    ScanConfig copy = c;
    std::ostringstream os;
    for (const Field& f : kFields) {
        os << f.key << '=';
        void* p = f.get(copy);
        switch (f.type) {
        case Field::Str: os << *static_cast<std::string*>(p); break;
        case Field::Dbl: os << fmt(*static_cast<double*>(p)); break;
        case Field::Int: os << *static_cast<int*>(p); break;
        }
        os << '\n';
    }
    return os.str();
}

namespace {

void echo_config(const ScanConfig& c, std::ostream& out, const char* what)
{
    out << "# spinladder " << what << "\n";
    std::istringstream lines(serialize_scan_config(c));
    std::string line;
    while (std::getline(lines, line))
        out << "# " << line << "\n";
}

int resolve_workers(int w)
{
    if (w > 0) return w;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs fn(i) for i in [0, n) on the given number of threads. Work items are
// claimed atomically; each item writes only its own slot, so results do not
// depend on the thread count.
template <typename Fn>
void parallel_for(int n, int workers, Fn&& fn)
{
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

std::pair<double, double> detunings_for(const ScanConfig& c, double grid_detuning)
{
    if (c.restriction == "delta1_eq_delta2")
        return {grid_detuning, grid_detuning};
    if (c.restriction == "delta2_eq_delta1_plus_2delta")
        return {grid_detuning, grid_detuning + 2.0};
    return {grid_detuning, c.delta2};
}

std::vector<double> amplitude_grid(const ScanConfig& c)
{
    std::vector<double> g(c.omega0_count);
    if (c.omega0_min > 0.0) {
        for (int i = 0; i < c.omega0_count; ++i)
            g[i] = c.omega0_count == 1
                       ? c.omega0_min
                       : c.omega0_min + (c.omega0_max - c.omega0_min) * i /
                                            (c.omega0_count - 1);
    } else {
        // One grid step above zero: a zero-amplitude node has no dynamics.
        for (int i = 0; i < c.omega0_count; ++i)
            g[i] = c.omega0_max * (i + 1) / c.omega0_count;
    }
    return g;
}

std::vector<double> detuning_grid(const ScanConfig& c)
{
    std::vector<double> g(c.delta_count);
    for (int i = 0; i < c.delta_count; ++i)
        g[i] = c.delta_count == 1
                   ? c.delta_min
                   : c.delta_min + (c.delta_max - c.delta_min) * i / (c.delta_count - 1);
    return g;
}

} // namespace

void run_transfer_map(const ScanConfig& c, std::ostream& out)
{
    c.validate();
    const std::vector<double> om = amplitude_grid(c);
    const std::vector<double> de = detuning_grid(c);
    const int n1 = static_cast<int>(om.size());
    const int n2 = static_cast<int>(de.size());

    struct Row {
        double p1, p2, p3, drift;
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<Row> rows(static_cast<std::size_t>(n1) * n2, {nan, nan, nan, nan});

    parallel_for(n1 * n2, resolve_workers(c.workers), [&](int idx) {
        const int i = idx / n2;
        const int j = idx % n2;
        const auto [d1, d2] = detunings_for(c, de[j]);
        try {
            const DriveParams drive(d1, d2, 1.0);
            const PulsePair pulses =
                PulsePair::from_area(c.pulse_area, om[i], c.tau_over_T, c.sequence);
            const TransferResult r = simulate_transfer(pulses, drive);
            rows[idx] = {r.populations(0), r.populations(1), r.populations(2),
                         r.norm_drift};
        } catch (const Error&) {
            // leave the NaN sentinel in place
        }
    });

    echo_config(c, out, "map");
    out << "omega0_over_delta,delta_over_delta,p1,p2,p3,norm_drift\n";
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const Row& r = rows[static_cast<std::size_t>(i) * n2 + j];
            out << fmt(om[i]) << ',' << fmt(de[j]) << ',' << fmt(r.p1) << ','
                << fmt(r.p2) << ',' << fmt(r.p3) << ',' << fmt(r.drift) << '\n';
        }
    }
}

void run_surface_dump(const ScanConfig& c, std::ostream& out)
{
    c.validate();
    // The sheet labels are anchored at zero field, so the grid includes it.
    Eigen::VectorXd axis(c.omega0_count);
    for (int i = 0; i < c.omega0_count; ++i)
        axis(i) = c.omega0_count == 1 ? 0.0
                                      : c.omega0_max * i / (c.omega0_count - 1);

    const DriveParams drive(c.delta1, c.delta2, 1.0);
    SurfaceOptions opts;
    opts.n_modes = c.n_modes;
    const QuasienergySurface surf = compute_surface(axis, axis, drive, opts);

    echo_config(c, out, "surface");
    out << "omega1,omega2,label_n,label_k1,label_k2,quasienergy\n";
    constexpr int window = 3; // photon window of the emitted sheets
    for (std::size_t s = 0; s < surf.labels.size(); ++s) {
        const SheetLabel& l = surf.labels[s];
        if (std::abs(l.k1) > window || std::abs(l.k2) > window) continue;
        for (Eigen::Index i = 0; i < axis.size(); ++i)
            for (Eigen::Index j = 0; j < axis.size(); ++j)
                out << fmt(axis(i)) << ',' << fmt(axis(j)) << ',' << l.n << ','
                    << l.k1 << ',' << l.k2 << ',' << fmt(surf.values[s](i, j))
                    << '\n';
    }
    out << "# ambiguous_nodes=" << surf.ambiguous.size() << "\n";
}

void run_boundary_overlays(const ScanConfig& c, std::ostream& out)
{
    c.validate();
    const int n = std::clamp(8 * c.delta_count, 200, 2000);
    const auto curves =
        boundary_overlays(c.sequence, 1.0, c.delta_min, c.delta_max, c.omega0_max, n);

    echo_config(c, out, "boundaries");
    out << "curve_id,abscissa,ordinate\n";
    for (const BoundaryCurve& curve : curves) {
        for (const CurvePoint& p : curve.points)
            out << curve.id << ',' << fmt(p.omega0) << ',' << fmt(p.delta) << '\n';
        if (!curve.excluded.empty())
            out << "# excluded curve=" << curve.id << " count=" << curve.excluded.size()
                << "\n";
    }
}

void run_simulation(const ScanConfig& c, std::ostream& out)
{
    c.validate();
    const DriveParams drive(c.delta1, c.delta2, 1.0);
    const PulsePair pulses =
        PulsePair::from_area(c.pulse_area, c.omega0, c.tau_over_T, c.sequence);

    nlohmann::json j;
    j["inputs"] = {{"mode", "simulate"},       {"omega0", c.omega0},
                   {"delta1", c.delta1},       {"delta2", c.delta2},
                   {"sequence", c.sequence},   {"pulse_area", c.pulse_area},
                   {"tau_over_T", c.tau_over_T}, {"n_modes", c.n_modes},
                   {"beta_z", c.beta_z}};

    const TransferResult r = simulate_transfer(pulses, drive);
    j["rwa"] = {{"populations", {r.populations(0), r.populations(1), r.populations(2)}},
                {"norm_drift", r.norm_drift},
                {"t_start", r.t_start},
                {"t_end", r.t_end},
                {"warnings", r.warnings}};

    const ExchangeCheck chk = verify_drive_exchange(pulses, drive);
    j["exchange_check"] = {{"max_pop_diff", chk.max_pop_diff}};

    const Classification cls = classify_at_field(drive, c.omega0);
    j["regime"] = {{"label", to_string(cls.regime)}, {"confidence", cls.confidence}};

    PathOptions popts;
    popts.n_modes = c.n_modes;
    const PathResult path = track_adiabatic_path(pulses, drive, popts);
    j["path"] = {{"final_label", to_string(path.final)},
                 {"final_n", path.final.n},
                 {"final_k1", path.final.k1},
                 {"final_k2", path.final.k2},
                 {"final_weight", path.final_weight}};

    if (c.beta_z > 0.0) {
        const double four_xi = 1.0 + c.delta1 - c.delta2;
        if (!(four_xi > 0.0))
            throw ValidationError(
                "simulate: beat, detunings and spin coupling are inconsistent");
        const SpinParams spin(-0.25 * four_xi, c.beta_z);
        const FullTransferResult f = simulate_full(pulses, spin, drive);
        double max_diff = 0.0;
        for (int k = 0; k < 3; ++k)
            max_diff = std::max(max_diff,
                                std::abs(f.populations(k) - r.populations(k)));
        j["full"] = {{"populations",
                      {f.populations(0), f.populations(1), f.populations(2),
                       f.populations(3)}},
                     {"norm_drift", f.norm_drift},
                     {"singlet_drift", f.singlet_drift},
                     {"max_diff_to_rwa", max_diff},
                     {"warnings", f.warnings}};
    }

    out << j.dump(2) << "\n";
}

void run_classification(const ScanConfig& c, std::ostream& out)
{
    c.validate();
    const DriveParams drive(c.delta1, c.delta2, 1.0);
    const Classification cls = classify_at_field(drive, c.omega0);
    const Classification weak = classify_weak_field(drive);

    nlohmann::json j;
    j["inputs"] = {{"mode", "classify"},
                   {"omega0", c.omega0},
                   {"delta1", c.delta1},
                   {"delta2", c.delta2}};
    j["regime"] = {{"label", to_string(cls.regime)}, {"confidence", cls.confidence}};
    j["weak_field"] = {{"label", to_string(weak.regime)},
                       {"confidence", weak.confidence}};
    out << j.dump(2) << "\n";
}

void run_mode(const ScanConfig& c)
{
    c.validate();
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!c.out.empty()) {
        file.open(c.out);
        if (!file)
            throw Error("cannot open output file '" + c.out + "'");
        out = &file;
    }
    if (c.mode == "map") run_transfer_map(c, *out);
    else if (c.mode == "surface") run_surface_dump(c, *out);
    else if (c.mode == "boundaries") run_boundary_overlays(c, *out);
    else if (c.mode == "simulate") run_simulation(c, *out);
    else run_classification(c, *out);
    out->flush();
    if (!*out)
        throw Error("writing output failed");
}

} // namespace spinladder
