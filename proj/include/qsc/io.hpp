#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qsc/protocols.hpp"
#include "qsc/search.hpp"

namespace qsc {

enum class UnitMode { Dimensionless, SI };
enum class OutFormat { Csv, Json };

// Everything runs internally in dimensionless units (g0 = 1, time in 1/g0);
// SI mode only rescales the emitted numbers, with g0 = 2*pi*g0_mhz MHz.
struct RunConfig {
    ProtocolSpec spec;
    std::string command;       // echoed into file metadata
    std::string out_path;      // empty: no data file
    OutFormat format = OutFormat::Csv;
    UnitMode units = UnitMode::Dimensionless;
    double g0_mhz = 5.0;       // reference benchmark default
    bool deterministic = true; // always on; kept for config echoing

    void validate() const; // throws std::invalid_argument

    double time_scale() const;     // dimensionless t -> ns in SI, 1 otherwise
    double coupling_scale() const; // dimensionless g -> MHz in SI, 1 otherwise
};

// %.12g; stable across runs and platforms for identical inputs.
std::string format_double(double v);

DecayRates parse_rates(const std::string& text); // "g1,g2,k" as fractions of g0
std::vector<double> parse_double_list(const std::string& text);

// "25.92", "8T0" (multiples of the 3.24/g0 reference), "103.1ns" or "0.1us"
// (SI mode only; converted through g0_mhz).
double parse_tau(const std::string& text, UnitMode units, double g0_mhz);

// One '#' metadata line (config echo, no timestamps), the fixed header
// `t,g1,g2,g1_mod,g2_mod,P_vac,P_a1,P_bm,P_a2,fidelity`, one row per sample.
void write_timeseries_csv(std::ostream& os, const RunConfig& cfg,
                          const SimulationResult& result);
void write_timeseries_json(std::ostream& os, const RunConfig& cfg,
                           const SimulationResult& result);

struct SweepPoint {
    double tau = 0.0;
    double squeeze = 0.0;
    SimulationResult result;
};
void write_sweep_csv(std::ostream& os, const RunConfig& cfg,
                     const std::vector<SweepPoint>& points);
void write_sweep_json(std::ostream& os, const RunConfig& cfg,
                      const std::vector<SweepPoint>& points);

void write_report_csv(std::ostream& os, const RunConfig& cfg, const ConstraintReport& report);
void write_report_json(std::ostream& os, const RunConfig& cfg, const ConstraintReport& report);

// Writes through the format selected in cfg; throws std::invalid_argument
// when the path cannot be opened.
void write_timeseries_file(const RunConfig& cfg, const SimulationResult& result);
void write_sweep_file(const RunConfig& cfg, const std::vector<SweepPoint>& points);
void write_report_file(const RunConfig& cfg, const ConstraintReport& report);

} // namespace qsc
