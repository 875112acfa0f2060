// Command-line front end: parameter scans, figure presets, bound audits and
// oracle runs, written as CSV or JSON.

#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "udw/errors.hpp"
#include "udw/scan.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string format;
    std::string units;
    double tol_abs = 0.0;
    double tol_rel = 0.0;
    int threads = -1;
    std::vector<std::string> sets;
    std::string preset;
};

void add_shared(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output path ('-' for stdout)");
    sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol-abs", f.tol_abs, "absolute tolerance (units of the pointlike scale)");
    sub->add_option("--tol-rel", f.tol_rel, "relative tolerance");
    sub->add_option("--threads", f.threads, "worker threads (0: OpenMP default)");
    sub->add_option("--units", f.units, "absolute scales, e.g. T=2,R=0.5");
    sub->add_option("--set", f.sets, "parameter override name=value (repeatable)");
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signalling estimator between smeared detectors: kernels, bounds, scans"};
    app.require_subcommand(1);
    Flags f;
    const std::vector<std::string> names{"icalc", "estimate", "smax", "fisher", "bound", "scan", "oracle-check"};
    for (const std::string& n : names) add_shared(app.add_subcommand(n, "run '" + n + "' over the config grid"), f);
    CLI::App* fig = app.add_subcommand("figure", "figure data preset");
    fig->add_option("preset", f.preset, "fig1, fig2 or fig3")->required();
    add_shared(fig, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        udw::ScanConfig c;
        if (sub == "figure") {
            c = udw::figure_preset(f.preset);
        } else {
            if (!f.config.empty()) c = udw::load_config(f.config);
            c.subcommand = udw::subcommand_from_string(sub);
        }
        for (const std::string& kv : f.sets) udw::set_param(c, kv);
        if (!f.out.empty()) c.out = f.out;
        if (!f.format.empty()) c.format = udw::format_from_string(f.format);
        if (f.tol_abs > 0.0) c.tol.abs_tol = f.tol_abs;
        if (f.tol_rel > 0.0) c.tol.rel_tol = f.tol_rel;
        if (f.threads >= 0) c.threads = f.threads;
        if (!f.units.empty()) udw::apply_units(c, f.units);

        const udw::Table t = udw::run_scan(c, true);
        udw::RunMetadata meta{c.hash(), udw::version_string, c.tol.abs_tol, c.tol.rel_tol, utc_now()};
        udw::emit(t, c.format, c.out, meta);
        return udw::has_error_rows(t) ? 3 : 0;
    } catch (const udw::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const udw::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
