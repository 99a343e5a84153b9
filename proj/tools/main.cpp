#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinladder/errors.hpp"
#include "spinladder/scan.hpp"

namespace {

struct Cli {
    std::string config_path;
    std::optional<double> omega0_min, omega0_max, delta_min, delta_max;
    std::optional<double> pulse_area, tau_over_t, omega0, delta1, delta2, beta_z;
    std::optional<int> omega0_count, delta_count, sequence, n_modes, workers;
    std::optional<std::string> restriction, out;
};

void add_options(CLI::App* s, Cli& o)
{
    s->add_option("--config", o.config_path, "configuration file (key=value lines)");
    s->add_option("--out", o.out, "output file (default: stdout)");
    s->add_option("--omega0-min", o.omega0_min,
                  "lowest peak amplitude, units of the beat frequency");
    s->add_option("--omega0-max", o.omega0_max, "highest peak amplitude");
    s->add_option("--omega0-count", o.omega0_count, "amplitude grid size");
    s->add_option("--delta-min", o.delta_min, "lowest detuning, units of the beat");
    s->add_option("--delta-max", o.delta_max, "highest detuning");
    s->add_option("--delta-count", o.delta_count, "detuning grid size");
    s->add_option("--sequence", o.sequence, "1: drive-1 pulse first, 2: drive-2 first");
    s->add_option("--pulse-area", o.pulse_area, "peak amplitude times pulse width");
    s->add_option("--tau-over-t", o.tau_over_t, "pulse delay over width");
    s->add_option("--restriction", o.restriction,
                  "delta1_eq_delta2 | delta2_eq_delta1_plus_2delta | independent");
    s->add_option("--n-modes", o.n_modes, "Fourier truncation of the dressed operator");
    s->add_option("--workers", o.workers, "worker threads (0: all cores)");
    s->add_option("--omega0", o.omega0, "peak amplitude for single-point modes");
    s->add_option("--delta1", o.delta1, "detuning of drive 1 from the 1-2 transition");
    s->add_option("--delta2", o.delta2, "detuning of drive 2 from the 2-3 transition");
    s->add_option("--beta-z", o.beta_z,
                  "static field; enables the lab-frame comparison when > 0");
}

int fail(const char* type, const std::string& message, int code)
{
    nlohmann::json j{{"type", type}, {"error", message}};
    std::cerr << j.dump() << std::endl;
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Adiabatic entangling transfer in a bichromatically driven spin ladder"};
    app.require_subcommand(1);
    Cli o;

    CLI::App* sub_map =
        app.add_subcommand("map", "transfer-efficiency map over amplitude and detuning");
    CLI::App* sub_surface =
        app.add_subcommand("surface", "dressed-sheet dump over the amplitude plane");
    CLI::App* sub_boundaries =
        app.add_subcommand("boundaries", "closed-form island-boundary overlay curves");
    CLI::App* sub_simulate =
        app.add_subcommand("simulate", "single-point transfer report");
    CLI::App* sub_classify =
        app.add_subcommand("classify", "regime classification for one parameter point");
    for (CLI::App* s : {sub_map, sub_surface, sub_boundaries, sub_simulate, sub_classify})
        add_options(s, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help / --version
        return fail("validation", e.what(), 2);
    }

    try {
        spinladder::ScanConfig cfg;
        if (!o.config_path.empty())
            cfg = spinladder::parse_scan_config_file(o.config_path);

        if (sub_map->parsed()) cfg.mode = "map";
        else if (sub_surface->parsed()) cfg.mode = "surface";
        else if (sub_boundaries->parsed()) cfg.mode = "boundaries";
        else if (sub_simulate->parsed()) cfg.mode = "simulate";
        else cfg.mode = "classify";

        if (o.omega0_min) cfg.omega0_min = *o.omega0_min;
        if (o.omega0_max) cfg.omega0_max = *o.omega0_max;
        if (o.omega0_count) cfg.omega0_count = *o.omega0_count;
        if (o.delta_min) cfg.delta_min = *o.delta_min;
        if (o.delta_max) cfg.delta_max = *o.delta_max;
        if (o.delta_count) cfg.delta_count = *o.delta_count;
        if (o.sequence) cfg.sequence = *o.sequence;
        if (o.pulse_area) cfg.pulse_area = *o.pulse_area;
        if (o.tau_over_t) cfg.tau_over_T = *o.tau_over_t;
        if (o.restriction) cfg.restriction = *o.restriction;
        if (o.n_modes) cfg.n_modes = *o.n_modes;
        if (o.workers) cfg.workers = *o.workers;
        if (o.omega0) cfg.omega0 = *o.omega0;
        if (o.delta1) cfg.delta1 = *o.delta1;
        if (o.delta2) cfg.delta2 = *o.delta2;
        if (o.beta_z) cfg.beta_z = *o.beta_z;
        if (o.out) cfg.out = *o.out;

        spinladder::run_mode(cfg);
        return 0;
    } catch (const spinladder::ValidationError& e) {
        return fail("validation", e.what(), 2);
    } catch (const spinladder::DomainError& e) {
        return fail("validation", e.what(), 2);
    } catch (const std::exception& e) {
        return fail("runtime", e.what(), 1);
    }
}
