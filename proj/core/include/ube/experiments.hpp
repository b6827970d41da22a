#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ube/config.hpp"

namespace ube {

struct ResultRow {
    std::optional<SweepAxis> axis;     ///< empty for single-point runs
    std::optional<double> axis_value;  ///< display units
    Metric metric = Metric::BackhaulProb;
    double value = 0.0;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    EvalMode mode = EvalMode::Analytic;  ///< Analytic or Mc, never Both
    Tech tech = Tech::Lte;
    std::optional<std::uint64_t> seed;
    std::string fingerprint;
};

/// Scenario for one sweep point: base, then the sweep's fixed axes, then the swept value.
Scenario sweep_point(const SweepSpec& spec, const Scenario& base, double si_value);

/// Analytic or MC evaluation of one resolved scenario.
ResultRow evaluate_point(const Scenario& scenario, Metric metric, EvalMode mode, const TrialConfig& cfg);

/// One row per value per mode, in axis order (analytic before MC in Both mode).
/// `base` must already carry spec.tech. Engine errors are rethrown with the axis value prepended.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, const Scenario& base, const TrialConfig& cfg);

/// Sweeps behind one figure; one SweepSpec per UAV height.
std::vector<SweepSpec> figure_preset(std::string_view name);

/// The UAV heights used by every preset, m.
const std::vector<double>& preset_uav_heights();

struct ValidationReport {
    double analytic = 0.0;
    McEstimate mc;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::string fingerprint;           ///< of the simulated scenario
    std::string analytic_fingerprint;  ///< differs only when a separate analytic scenario is given
    bool pass = false;
};

/// Analytic backhaul probability against the MC 95% CI widened by `tolerance`.
ValidationReport validate(const Scenario& scenario, const TrialConfig& cfg, double tolerance);
/// As above, with the analytic side computed on `analytic_scenario`.
ValidationReport validate(const Scenario& scenario, const Scenario& analytic_scenario, const TrialConfig& cfg,
                          double tolerance);

std::string format_report(const ValidationReport& report);

inline constexpr std::string_view kCsvHeader = "axis,axis_value,metric,value,ci_low,ci_high,mode,tech,seed,fingerprint";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

}  // namespace ube
