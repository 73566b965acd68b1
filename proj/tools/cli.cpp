#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "fsonoma/analysis.hpp"
#include "fsonoma/csv.hpp"
#include "fsonoma/scenario.hpp"

namespace fsonoma::cli {

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::filesystem::path case_path(const std::filesystem::path& out, const std::string& suffix) {
    if (suffix.empty()) return out;
    std::filesystem::path p = out;
    p.replace_filename(out.stem().string() + suffix + out.extension().string());
    return p;
}

std::string_view regime_name(analysis::Regime r) { return r == analysis::Regime::Floor ? "Floor" : "NoFloor"; }

}  // namespace

int run_scenario(const std::filesystem::path& scenario, const std::filesystem::path& out_csv,
                 const RunOverrides& overrides, std::ostream& log, std::ostream& err) {
    scenario::ScenarioConfig cfg;
    try {
        cfg = scenario::load_scenario(scenario);
        if (overrides.seed) cfg.mc.seed = *overrides.seed;
        if (overrides.samples) cfg.mc.n_samples = *overrides.samples;
        cfg.validate();
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    const auto cases = scenario::expand_cases(cfg);
    const auto powers = cfg.powers();
    const auto specs = cfg.scheme_specs();
    montecarlo::SweepOptions options;
    options.analysis = cfg.analysis;
    options.quadrature = cfg.quadrature;
    for (const auto& c : cases) {
        const auto path = case_path(out_csv, c.suffix);
        std::vector<montecarlo::SweepRow> rows;
        try {
            rows = montecarlo::sweep_power(c.link, powers, specs, cfg.mc, options);
        } catch (const std::exception& e) {
            err << "numeric failure" << (c.suffix.empty() ? "" : " in case " + c.suffix.substr(1)) << ": " << e.what()
                << '\n';
            return kNumericFailure;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            err << "config error: cannot write " << path.string() << '\n';
            return kConfigError;
        }
        csv::write_sweep(out, rows);
        out.close();
        if (!out) {
            err << "config error: write to " << path.string() << " failed\n";
            return kConfigError;
        }
        const auto thr = noma::thresholds_from_rates(c.link.rate1, c.link.rate2);
        log << path.string() << ": " << rows.size() << " rows, kappa " << fmt("%g", c.kappa_per_m) << ", R = ("
            << fmt("%.6g", c.link.rate1) << ", " << fmt("%.6g", c.link.rate2) << "), "
            << regime_name(analysis::classify(thr)) << '\n';
    }
    return kOk;
}

int check_scenario(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err) {
    scenario::ScenarioConfig cfg;
    try {
        cfg = scenario::load_scenario(scenario);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    const auto problems = cfg.problems();
    if (!problems.empty()) {
        err << "invalid scenario " << scenario.string() << ":\n";
        for (const auto& p : problems) err << "  - " << p << '\n';
        return kConfigError;
    }
    const auto powers = cfg.powers();
    out << "scenario " << scenario.string() << ": " << powers.size() << " power points from "
        << fmt("%g", powers.front()) << " to " << fmt("%g", powers.back()) << " dBm, " << cfg.schemes.size()
        << " schemes, SIC " << noma::to_string(cfg.sic) << ", " << cfg.mc.n_samples << " samples\n";
    for (const auto& c : scenario::expand_cases(cfg)) {
        const auto l1 = channel::link_budget(0.0, c.kappa_per_m, c.link.d1_m, c.link.optics);
        const auto l2 = channel::link_budget(0.0, c.kappa_per_m, c.link.d2_m, c.link.optics);
        const auto thr = noma::thresholds_from_rates(c.link.rate1, c.link.rate2);
        out << "case kappa=" << fmt("%g", c.kappa_per_m);
        if (c.has_offset) out << " eps=" << fmt("%+g", c.rate_offset);
        out << '\n';
        out << "  BS1: d=" << fmt("%g", c.link.d1_m) << " m  path_loss=" << fmt("%.6g", l1.path_loss)
            << "  geo_loss=" << fmt("%.6g", l1.geo_loss) << "  c=" << fmt("%.6g", l1.c)
            << "  e(0 dBm)=" << fmt("%.6g", l1.e) << '\n';
        out << "  BS2: d=" << fmt("%g", c.link.d2_m) << " m  path_loss=" << fmt("%.6g", l2.path_loss)
            << "  geo_loss=" << fmt("%.6g", l2.geo_loss) << "  c=" << fmt("%.6g", l2.c)
            << "  e(0 dBm)=" << fmt("%.6g", l2.e) << '\n';
        out << "  R1=" << fmt("%.6g", thr.rate1) << "  R2=" << fmt("%.6g", thr.rate2)
            << "  thr1=" << fmt("%.6g", thr.gamma1_thr) << "  thr2=" << fmt("%.6g", thr.gamma2_thr)
            << "  thr1*thr2=" << fmt("%.4f", thr.gamma1_thr * thr.gamma2_thr) << "  "
            << regime_name(analysis::classify(thr)) << '\n';
    }
    return kOk;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Outage of two-BS NOMA over FSO backhaul links"};
    app.require_subcommand(1);

    std::string run_path;
    std::string out_path;
    RunOverrides overrides;
    auto* run = app.add_subcommand("run", "Run a power sweep and write CSV");
    run->add_option("scenario", run_path, "Scenario file")->required();
    run->add_option("--out,-o", out_path, "Output CSV path")->required();
    run->add_option("--seed", overrides.seed, "Override the scenario seed");
    run->add_option("--samples", overrides.samples, "Override the Monte Carlo sample count")
        ->check(CLI::PositiveNumber);

    std::string check_path;
    auto* check = app.add_subcommand("check", "Validate a scenario and print derived constants");
    check->add_option("scenario", check_path, "Scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return kConfigError;
    }
    if (run->parsed()) return run_scenario(run_path, out_path, overrides, out, err);
    return check_scenario(check_path, out, err);
}

}  // namespace fsonoma::cli
