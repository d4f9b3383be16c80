#include "qsc/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsc/errors.hpp"
#include "qsc/io.hpp"
#include "qsc/kernels.hpp"
#include "qsc/reference.hpp"

namespace qsc {

namespace {

struct Common {
    std::string variant = "dressed";
    std::string tau = "1T0";
    double squeeze = 0.0;
    std::string g0 = "dimensionless";
    std::string rates = "0.02,0.001,0.001";
    std::string direction = "a1-to-a2";
    int samples = 4000;
    std::string out;
    std::string format = "csv";
    std::string units = "dimensionless";
    std::string kernel = "auto";
    std::string config;
    bool zero_gx = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--variant", c.variant, "protocol variant")
        ->check(CLI::IsMember({"adiabatic", "satd", "dressed"}));
    cmd->add_option("--tau", c.tau, "conversion time: <x>, <x>T0, <x>ns or <x>us (SI)");
    cmd->add_option("--squeeze", c.squeeze, "squeeze parameter A");
    cmd->add_option("--g0", c.g0, "peak coupling in MHz (SI mode) or 'dimensionless'");
    cmd->add_option("--rates", c.rates, "gamma1,gamma2,kappa as fractions of g0");
    cmd->add_option("--direction", c.direction)
        ->check(CLI::IsMember({"a1-to-a2", "a2-to-a1"}));
    cmd->add_option("--samples", c.samples, "RK4 steps across [0, tau]");
    cmd->add_option("--out", c.out, "output data file");
    cmd->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--units", c.units)->check(CLI::IsMember({"dimensionless", "si"}));
    cmd->add_option("--kernel", c.kernel, "arithmetic kernel set")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    cmd->add_flag("--debug-zero-gx", c.zero_gx, "drop the g_x control (negative control)");
    cmd->add_option("--config", c.config, "key=value config file (flags win on conflict)");
}

// CLI11 reads config files only on the top-level app, so flat key=value files
// given after a subcommand are applied by hand through each option's result
// path; options already set on the command line win
void apply_config_file(CLI::App* cmd, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");

    auto strip = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = strip(line);
        if (text.empty() || text[0] == '#') continue;
        const std::string where = "config file line " + std::to_string(lineno);
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where + ": expected key=value");
        const std::string key = strip(text.substr(0, eq));
        const std::string value = strip(text.substr(eq + 1));
        CLI::Option* opt = key == "config" ? nullptr : cmd->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
        if (opt->count() > 0) continue;
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw std::invalid_argument(where + ": " + e.what());
        }
    }
}

RunConfig build_config(const Common& c, const std::string& command) {
    RunConfig cfg;
    cfg.command = command;
    cfg.units = c.units == "si" ? UnitMode::SI : UnitMode::Dimensionless;

    if (c.g0 != "dimensionless") {
        if (cfg.units != UnitMode::SI)
            throw std::invalid_argument("--g0 in MHz requires --units si");
        std::size_t used = 0;
        cfg.g0_mhz = std::stod(c.g0, &used);
        if (used != c.g0.size() || !(cfg.g0_mhz > 0.0))
            throw std::invalid_argument("--g0: expected a positive MHz value, got '" + c.g0 +
                                        "'");
    }

    if (c.kernel != "auto" && !kernels::select(c.kernel))
        throw std::invalid_argument("kernel '" + c.kernel + "' is not available on this CPU");

    PulseParams& p = cfg.spec.pulse;
    p.g0 = 1.0;
    p.tau = parse_tau(c.tau, cfg.units, cfg.g0_mhz);
    p.squeeze = c.squeeze;
    p.zero_gx = c.zero_gx;
    if (c.variant == "adiabatic")
        p.variant = Variant::Adiabatic;
    else if (c.variant == "satd")
        p.variant = Variant::SATD;
    else
        p.variant = Variant::Dressed;

    if (c.direction == "a1-to-a2") {
        p.direction = Direction::ForwardA1toA2;
        cfg.spec.initial = Mode::Optical;
        cfg.spec.target = Mode::Microwave;
    } else {
        p.direction = Direction::ReverseA2toA1;
        cfg.spec.initial = Mode::Microwave;
        cfg.spec.target = Mode::Optical;
    }

    cfg.spec.rates = parse_rates(c.rates);
    cfg.spec.samples = c.samples;
    cfg.format = c.format == "json" ? OutFormat::Json : OutFormat::Csv;
    cfg.out_path = c.out;
    cfg.validate();
    return cfg;
}

int cmd_simulate(const Common& c) {
    const RunConfig cfg = build_config(c, "simulate");
    const SimulationResult result = run_conversion(cfg.spec);
    if (!cfg.out_path.empty()) write_timeseries_file(cfg, result);
    const double ts = cfg.time_scale();
    std::cout << "fidelity=" << format_double(result.final_fidelity)
              << " peak_bm=" << format_double(result.peak_bm)
              << " peak_g1_mod=" << format_double(result.peak_g1_mod * cfg.coupling_scale())
              << " peak_g2_mod=" << format_double(result.peak_g2_mod * cfg.coupling_scale())
              << " tau=" << format_double(cfg.spec.pulse.tau * ts)
              << " squeeze=" << format_double(cfg.spec.pulse.squeeze) << '\n';
    return 0;
}

int cmd_sweep(const Common& c, const std::string& taus_text,
              const std::string& squeezes_text, int workers) {
    RunConfig cfg = build_config(c, "sweep");
    if (taus_text.empty() && squeezes_text.empty())
        throw std::invalid_argument("sweep: provide --taus and/or --squeezes");

    std::vector<double> taus;
    if (!taus_text.empty()) {
        std::size_t pos = 0;
        while (pos <= taus_text.size()) {
            std::size_t comma = taus_text.find(',', pos);
            if (comma == std::string::npos) comma = taus_text.size();
            taus.push_back(parse_tau(taus_text.substr(pos, comma - pos), cfg.units, cfg.g0_mhz));
            pos = comma + 1;
        }
    } else {
        taus.push_back(cfg.spec.pulse.tau);
    }
    std::vector<double> squeezes =
        squeezes_text.empty() ? std::vector<double>{cfg.spec.pulse.squeeze}
                              : parse_double_list(squeezes_text);

    std::sort(taus.begin(), taus.end());
    std::sort(squeezes.begin(), squeezes.end());

    std::vector<ProtocolSpec> specs;
    std::vector<SweepPoint> points;
    for (double tau : taus) {
        for (double a : squeezes) {
            ProtocolSpec s = cfg.spec;
            s.pulse.tau = tau;
            s.pulse.squeeze = a;
            s.validate();
            specs.push_back(s);
            points.push_back(SweepPoint{tau, a, {}});
        }
    }

    const std::vector<SimulationResult> results = run_batch(specs, workers);
    for (std::size_t i = 0; i < results.size(); ++i) points[i].result = results[i];

    if (cfg.out_path.empty()) {
        if (cfg.format == OutFormat::Csv)
            write_sweep_csv(std::cout, cfg, points);
        else
            write_sweep_json(std::cout, cfg, points);
    } else {
        write_sweep_file(cfg, points);
        std::cout << "wrote " << points.size() << " sweep points to " << cfg.out_path << '\n';
    }
    return 0;
}

int cmd_find_t0(const Common& c, double tol) {
    RunConfig cfg = build_config(c, "find-t0");
    const double t0 = find_minimal_time(1.0, tol);
    const double t0_ns = t0 * 1e3 / (2.0 * M_PI * cfg.g0_mhz);
    std::cout << "tau_min = " << format_double(t0) << " (1/g0) = " << format_double(t0_ns)
              << " ns at g0 = 2*pi x " << format_double(cfg.g0_mhz) << " MHz\n";

    PulseParams p = cfg.spec.pulse;
    p.variant = Variant::Dressed;
    p.squeeze = 0.0;
    p.tau = t0;
    if (!cfg.out_path.empty()) write_report_file(cfg, constraint_report(p));
    return 0;
}

int cmd_find_max_squeeze(const Common& c, double tol) {
    RunConfig cfg = build_config(c, "find-max-squeeze");
    const double tau = cfg.spec.pulse.tau;
    const double a_max = find_max_squeeze(tau, tol, 1.0);

    PulseParams p = cfg.spec.pulse;
    p.variant = Variant::Dressed;
    p.squeeze = a_max;
    const ConstraintReport report = constraint_report(p);
    const char* binding = std::abs(report.peak_g1_mod - report.peak_g2_mod) < 1e-9
                              ? "both (peaks equal by pulse symmetry)"
                          : report.peak_g1_mod > report.peak_g2_mod ? "g1_mod"
                                                                    : "g2_mod";
    std::cout << "A_max = " << format_double(a_max)
              << " at tau = " << format_double(tau * cfg.time_scale())
              << (cfg.units == UnitMode::SI ? " ns" : " (1/g0)")
              << ", binding coupling: " << binding << '\n';
    if (!cfg.out_path.empty()) write_report_file(cfg, report);
    return 0;
}

int cmd_reproduce_paper(const Common& c, bool list_only) {
    if (c.kernel != "auto" && !kernels::select(c.kernel))
        throw std::invalid_argument("kernel '" + c.kernel + "' is not available on this CPU");
    if (c.samples < 4000)
        throw std::invalid_argument("reproduce-paper: need >= 4000 samples");

    auto describe = [](const reference::Item& item) {
        char buf[64];
        switch (item.check) {
            case reference::Check::Band:
                std::snprintf(buf, sizeof(buf), "%g +/- %g", item.expected, item.tol);
                break;
            case reference::Check::Below:
                std::snprintf(buf, sizeof(buf), "<= %g", item.expected);
                break;
            case reference::Check::Above:
                std::snprintf(buf, sizeof(buf), ">= %g", item.expected);
                break;
        }
        return std::string(buf);
    };

    char line[256];
    if (list_only) {
        for (const reference::Item& item : reference::items()) {
            std::snprintf(line, sizeof(line), "[criterion %2d] %-26s expected %-18s %s\n",
                          item.criterion, item.name.c_str(), describe(item).c_str(),
                          item.detail.c_str());
            std::cout << line;
        }
        return 0;
    }

    reference::Options opt;
    opt.zero_gx = c.zero_gx;
    opt.samples = c.samples;
    const std::vector<reference::Outcome> outcomes = reference::run(opt);

    int failed = 0;
    for (const reference::Outcome& o : outcomes) {
        std::snprintf(line, sizeof(line), "[criterion %2d] %-26s measured %-14.8g expected %-18s %s\n",
                      o.item.criterion, o.item.name.c_str(), o.measured,
                      describe(o.item).c_str(), o.pass ? "PASS" : "FAIL");
        std::cout << line;
        if (!o.note.empty()) std::cout << "               note: " << o.note << '\n';
        if (!o.pass) ++failed;
    }
    std::cout << outcomes.size() << " items, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"superadiabatic optical-microwave conversion toolkit"};
    app.require_subcommand(1);

    Common c;
    std::string taus_text, squeezes_text;
    int workers = 0;
    double tol_t0 = 1e-4, tol_squeeze = 1e-3;
    bool list_only = false;

    CLI::App* simulate = app.add_subcommand("simulate", "run one conversion");
    add_common(simulate, c);

    CLI::App* sweep = app.add_subcommand("sweep", "cartesian sweep over tau and/or squeeze");
    add_common(sweep, c);
    sweep->add_option("--taus", taus_text, "comma-separated tau list");
    sweep->add_option("--squeezes", squeezes_text, "comma-separated squeeze list");
    sweep->add_option("--workers", workers, "concurrent runs (default: hardware threads)");

    CLI::App* find_t0 = app.add_subcommand("find-t0", "minimal conversion time");
    add_common(find_t0, c);
    find_t0->add_option("--tol", tol_t0, "bisection tolerance");

    CLI::App* find_squeeze =
        app.add_subcommand("find-max-squeeze", "largest feasible squeeze at fixed tau");
    add_common(find_squeeze, c);
    find_squeeze->add_option("--tol", tol_squeeze, "bisection tolerance");

    CLI::App* reproduce =
        app.add_subcommand("reproduce-paper", "run the reference-results suite");
    add_common(reproduce, c);
    reproduce->add_flag("--list", list_only, "list items without running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (CLI::App* cmd : {simulate, sweep, find_t0, find_squeeze, reproduce})
            if (cmd->parsed()) apply_config_file(cmd, c.config);
        if (simulate->parsed()) return cmd_simulate(c);
        if (sweep->parsed()) return cmd_sweep(c, taus_text, squeezes_text, workers);
        if (find_t0->parsed()) return cmd_find_t0(c, tol_t0);
        if (find_squeeze->parsed()) return cmd_find_max_squeeze(c, tol_squeeze);
        if (reproduce->parsed()) return cmd_reproduce_paper(c, list_only);
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}

} // namespace qsc
