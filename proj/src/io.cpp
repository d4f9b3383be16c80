#include "qsc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qsc/kernels.hpp"

namespace qsc {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Adiabatic: return "adiabatic";
        case Variant::SATD: return "satd";
        case Variant::Dressed: return "dressed";
    }
    return "?";
}

const char* direction_name(Direction d) {
    return d == Direction::ForwardA1toA2 ? "a1-to-a2" : "a2-to-a1";
}

std::string config_echo(const RunConfig& cfg) {
    std::ostringstream os;
    os << "qsc " << cfg.command << " variant=" << variant_name(cfg.spec.pulse.variant)
       << " tau=" << format_double(cfg.spec.pulse.tau)
       << " squeeze=" << format_double(cfg.spec.pulse.squeeze)
       << " rates=" << format_double(cfg.spec.rates.gamma1) << ','
       << format_double(cfg.spec.rates.gamma2) << ',' << format_double(cfg.spec.rates.kappa)
       << " direction=" << direction_name(cfg.spec.pulse.direction)
       << " samples=" << cfg.spec.samples
       << " units=" << (cfg.units == UnitMode::SI ? "si" : "dimensionless");
    if (cfg.units == UnitMode::SI) os << " g0_mhz=" << format_double(cfg.g0_mhz);
    if (cfg.spec.pulse.zero_gx) os << " zero_gx=1";
    os << " kernel=" << kernels::active_name();
    return os.str();
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = cfg.command;
    j["variant"] = variant_name(cfg.spec.pulse.variant);
    j["tau"] = cfg.spec.pulse.tau;
    j["squeeze"] = cfg.spec.pulse.squeeze;
    j["rates"] = {cfg.spec.rates.gamma1, cfg.spec.rates.gamma2, cfg.spec.rates.kappa};
    j["direction"] = direction_name(cfg.spec.pulse.direction);
    j["samples"] = cfg.spec.samples;
    j["units"] = cfg.units == UnitMode::SI ? "si" : "dimensionless";
    if (cfg.units == UnitMode::SI) j["g0_mhz"] = cfg.g0_mhz;
    if (cfg.spec.pulse.zero_gx) j["zero_gx"] = true;
    j["kernel"] = std::string(kernels::active_name());
    return j;
}

struct Row {
    double t, g1, g2, g1_mod, g2_mod;
    Populations pops;
    double fid;
};

std::vector<Row> make_rows(const RunConfig& cfg, const SimulationResult& result) {
    const double ts = cfg.time_scale();
    const double cs = cfg.coupling_scale();
    const Trajectory& traj = result.trajectory;
    std::vector<Row> rows;
    rows.reserve(traj.t.size());
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const double t = traj.t[i];
        const CouplingSample base = base_couplings(cfg.spec.pulse, t);
        const ModifiedCouplings mod = modified_couplings(cfg.spec.pulse, t);
        rows.push_back(Row{t * ts, base.g1 * cs, base.g2 * cs, mod.g1_mod * cs,
                           mod.g2_mod * cs, traj.pops[i], traj.fidelity[i]});
    }
    return rows;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open output file: " + path);
    return os;
}

ordered_json summary_json(const SimulationResult& r) {
    ordered_json j;
    j["final_fidelity"] = r.final_fidelity;
    j["peak_bm"] = r.peak_bm;
    j["peak_g1_mod"] = r.peak_g1_mod;
    j["peak_g2_mod"] = r.peak_g2_mod;
    return j;
}

} // namespace

void RunConfig::validate() const {
    spec.validate();
    if (!deterministic)
        throw std::invalid_argument("RunConfig: determinism is not optional");
    if (spec.pulse.g0 != 1.0)
        throw std::invalid_argument("RunConfig: internals are dimensionless, g0 must be 1");
    if (units == UnitMode::SI && !(g0_mhz > 0.0 && std::isfinite(g0_mhz)))
        throw std::invalid_argument("RunConfig: SI mode requires g0 > 0 in MHz");
    if (!out_path.empty() && format != OutFormat::Csv && format != OutFormat::Json)
        throw std::invalid_argument("RunConfig: unknown output format");
}

double RunConfig::time_scale() const {
    if (units == UnitMode::Dimensionless) return 1.0;
    // one unit of 1/g0 in nanoseconds
    return 1e3 / (2.0 * M_PI * g0_mhz);
}

double RunConfig::coupling_scale() const {
    if (units == UnitMode::Dimensionless) return 1.0;
    return g0_mhz; // linear-frequency MHz
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

DecayRates parse_rates(const std::string& text) {
    const std::vector<double> vals = parse_double_list(text);
    if (vals.size() != 3)
        throw std::invalid_argument("rates: expected three comma-separated values, got '" +
                                    text + "'");
    DecayRates r{vals[0], vals[1], vals[2]};
    r.validate();
    return r;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string piece = text.substr(pos, comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(piece, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + piece + "'");
        }
        if (used != piece.size())
            throw std::invalid_argument("trailing characters in number: '" + piece + "'");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

double parse_tau(const std::string& text, UnitMode units, double g0_mhz) {
    if (text.empty()) throw std::invalid_argument("tau: empty value");
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("tau: not a number: '" + text + "'");
    }
    const std::string suffix = text.substr(used);
    if (suffix.empty()) return v;
    if (suffix == "T0") return v * kReferenceT0;
    if (suffix == "ns" || suffix == "us") {
        if (units != UnitMode::SI)
            throw std::invalid_argument("tau: '" + suffix + "' needs --units si");
        const double seconds = suffix == "ns" ? v * 1e-9 : v * 1e-6;
        return seconds * 2.0 * M_PI * g0_mhz * 1e6;
    }
    throw std::invalid_argument("tau: unknown suffix '" + suffix + "'");
}

void write_timeseries_csv(std::ostream& os, const RunConfig& cfg,
                          const SimulationResult& result) {
    os << "# " << config_echo(cfg) << '\n';
    os << "t,g1,g2,g1_mod,g2_mod,P_vac,P_a1,P_bm,P_a2,fidelity\n";
    for (const Row& r : make_rows(cfg, result)) {
        os << format_double(r.t) << ',' << format_double(r.g1) << ',' << format_double(r.g2)
           << ',' << format_double(r.g1_mod) << ',' << format_double(r.g2_mod) << ','
           << format_double(r.pops.vac) << ',' << format_double(r.pops.a1) << ','
           << format_double(r.pops.bm) << ',' << format_double(r.pops.a2) << ','
           << format_double(r.fid) << '\n';
    }
}

void write_timeseries_json(std::ostream& os, const RunConfig& cfg,
                           const SimulationResult& result) {
    ordered_json j;
    j["config"] = config_json(cfg);
    ordered_json rows = ordered_json::array();
    for (const Row& r : make_rows(cfg, result)) {
        ordered_json row;
        row["t"] = r.t;
        row["g1"] = r.g1;
        row["g2"] = r.g2;
        row["g1_mod"] = r.g1_mod;
        row["g2_mod"] = r.g2_mod;
        row["P_vac"] = r.pops.vac;
        row["P_a1"] = r.pops.a1;
        row["P_bm"] = r.pops.bm;
        row["P_a2"] = r.pops.a2;
        row["fidelity"] = r.fid;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["summary"] = summary_json(result);
    os << j.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& os, const RunConfig& cfg,
                     const std::vector<SweepPoint>& points) {
    const double ts = cfg.time_scale();
    const double cs = cfg.coupling_scale();
    os << "# " << config_echo(cfg) << '\n';
    os << "tau,squeeze,fidelity,peak_bm,peak_g1_mod,peak_g2_mod\n";
    for (const SweepPoint& p : points) {
        os << format_double(p.tau * ts) << ',' << format_double(p.squeeze) << ','
           << format_double(p.result.final_fidelity) << ','
           << format_double(p.result.peak_bm) << ','
           << format_double(p.result.peak_g1_mod * cs) << ','
           << format_double(p.result.peak_g2_mod * cs) << '\n';
    }
}

void write_sweep_json(std::ostream& os, const RunConfig& cfg,
                      const std::vector<SweepPoint>& points) {
    const double ts = cfg.time_scale();
    const double cs = cfg.coupling_scale();
    ordered_json j;
    j["config"] = config_json(cfg);
    ordered_json rows = ordered_json::array();
    for (const SweepPoint& p : points) {
        ordered_json row;
        row["tau"] = p.tau * ts;
        row["squeeze"] = p.squeeze;
        row["fidelity"] = p.result.final_fidelity;
        row["peak_bm"] = p.result.peak_bm;
        row["peak_g1_mod"] = p.result.peak_g1_mod * cs;
        row["peak_g2_mod"] = p.result.peak_g2_mod * cs;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << '\n';
}

void write_report_csv(std::ostream& os, const RunConfig& cfg, const ConstraintReport& report) {
    const double ts = cfg.time_scale();
    const double cs = cfg.coupling_scale();
    os << "# " << config_echo(cfg) << '\n';
    os << "tau,squeeze,peak_g1_mod,peak_g2_mod,binding,feasible\n";
    os << format_double(report.tau * ts) << ',' << format_double(report.squeeze) << ','
       << format_double(report.peak_g1_mod * cs) << ','
       << format_double(report.peak_g2_mod * cs) << ',' << (report.binding ? 1 : 0) << ','
       << (report.feasible ? 1 : 0) << '\n';
}

void write_report_json(std::ostream& os, const RunConfig& cfg, const ConstraintReport& report) {
    const double ts = cfg.time_scale();
    const double cs = cfg.coupling_scale();
    ordered_json j;
    j["config"] = config_json(cfg);
    ordered_json r;
    r["tau"] = report.tau * ts;
    r["squeeze"] = report.squeeze;
    r["peak_g1_mod"] = report.peak_g1_mod * cs;
    r["peak_g2_mod"] = report.peak_g2_mod * cs;
    r["binding"] = report.binding;
    r["feasible"] = report.feasible;
    j["report"] = std::move(r);
    os << j.dump(2) << '\n';
}

void write_timeseries_file(const RunConfig& cfg, const SimulationResult& result) {
    std::ofstream os = open_out(cfg.out_path);
    if (cfg.format == OutFormat::Csv)
        write_timeseries_csv(os, cfg, result);
    else
        write_timeseries_json(os, cfg, result);
}

void write_sweep_file(const RunConfig& cfg, const std::vector<SweepPoint>& points) {
    std::ofstream os = open_out(cfg.out_path);
    if (cfg.format == OutFormat::Csv)
        write_sweep_csv(os, cfg, points);
    else
        write_sweep_json(os, cfg, points);
}

void write_report_file(const RunConfig& cfg, const ConstraintReport& report) {
    std::ofstream os = open_out(cfg.out_path);
    if (cfg.format == OutFormat::Csv)
        write_report_csv(os, cfg, report);
    else
        write_report_json(os, cfg, report);
}

} // namespace qsc
