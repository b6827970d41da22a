#include "ube/experiments.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "ube/error.hpp"
#include "ube/units.hpp"

namespace ube {

namespace {

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

const std::vector<double>& density_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> g;
        for (double v : {0.25, 0.75, 1.25, 2.5, 3.75, 5.0}) g.push_back(units::per_km2_to_per_m2(v));
        return g;
    }();
    return grid;
}

const std::vector<double>& gs_height_grid() {
    static const std::vector<double> grid = {10.0, 20.0, 30.0, 40.0, 50.0, 60.0};
    return grid;
}

template <typename Error>
[[noreturn]] void rethrow_annotated(const std::string& prefix, const Error& e) {
    throw Error(prefix + e.what());
}

}  // namespace

Scenario sweep_point(const SweepSpec& spec, const Scenario& base, double si_value) {
    Scenario sc = base;
    for (const auto& [axis, v] : spec.fixed) apply_axis(sc, axis, v);
    apply_axis(sc, spec.axis, si_value);
    return sc;
}

ResultRow evaluate_point(const Scenario& scenario, Metric metric, EvalMode mode, const TrialConfig& cfg) {
    if (mode == EvalMode::Both) throw std::invalid_argument("evaluate_point takes a single mode");
    ResultRow row;
    row.metric = metric;
    row.mode = mode;
    row.tech = scenario.tech.kind;
    row.fingerprint = fingerprint(scenario);
    if (mode == EvalMode::Analytic) {
        const BackhaulModel model(scenario);
        row.value = metric == Metric::BackhaulProb ? model.backhaul_probability() : model.expected_rate();
    } else {
        const McEstimate est = estimate(scenario, cfg, metric);
        row.value = est.mean;
        row.ci_low = est.ci_low;
        row.ci_high = est.ci_high;
        row.seed = cfg.seed;
    }
    return row;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, const Scenario& base, const TrialConfig& cfg) {
    spec.validate();
    if (base.tech.kind != spec.tech) throw std::invalid_argument("base scenario technology differs from the sweep's");
    std::vector<EvalMode> modes;
    if (spec.mode != EvalMode::Mc) modes.push_back(EvalMode::Analytic);
    if (spec.mode != EvalMode::Analytic) modes.push_back(EvalMode::Mc);

    std::vector<ResultRow> rows;
    rows.reserve(spec.values.size() * modes.size());
    for (double v : spec.values) {
        const std::string prefix =
            std::string(to_string(spec.axis)) + " = " + number(axis_to_display(spec.axis, v)) + ": ";
        try {
            const Scenario sc = sweep_point(spec, base, v);
            for (EvalMode m : modes) {
                ResultRow row = evaluate_point(sc, spec.metric, m, cfg);
                row.axis = spec.axis;
                row.axis_value = axis_to_display(spec.axis, v);
                rows.push_back(std::move(row));
            }
        } catch (const NumericalFailure& e) {
            rethrow_annotated(prefix, e);
        } catch (const ConsistencyError& e) {
            rethrow_annotated(prefix, e);
        } catch (const std::invalid_argument& e) {
            rethrow_annotated(prefix, e);
        }
    }
    return rows;
}

const std::vector<double>& preset_uav_heights() {
    static const std::vector<double> heights = {40.0, 60.0, 80.0, 100.0, 120.0};
    return heights;
}

std::vector<SweepSpec> figure_preset(std::string_view name) {
    struct Shape {
        Tech tech;
        Metric metric;
        SweepAxis axis;
    };
    Shape shape{};
    if (name == "fig2") {
        shape = {Tech::Lte, Metric::BackhaulProb, SweepAxis::Density};
    } else if (name == "fig3") {
        shape = {Tech::Mmwave, Metric::BackhaulProb, SweepAxis::Density};
    } else if (name == "fig4") {
        shape = {Tech::Lte, Metric::MeanRate, SweepAxis::Density};
    } else if (name == "fig5") {
        shape = {Tech::Lte, Metric::BackhaulProb, SweepAxis::GsHeight};
    } else if (name == "fig6") {
        shape = {Tech::Mmwave, Metric::BackhaulProb, SweepAxis::GsHeight};
    } else {
        throw std::invalid_argument("unknown figure '" + std::string(name) + "'");
    }

    std::vector<SweepSpec> out;
    for (double gamma : preset_uav_heights()) {
        SweepSpec s;
        s.axis = shape.axis;
        s.tech = shape.tech;
        s.metric = shape.metric;
        s.mode = EvalMode::Analytic;
        s.fixed.emplace_back(SweepAxis::UavHeight, gamma);
        if (shape.axis == SweepAxis::Density) {
            s.values = density_grid();
        } else {
            s.values = gs_height_grid();
            s.fixed.emplace_back(SweepAxis::Density, units::per_km2_to_per_m2(1.25));
        }
        s.label = std::string(name) + " uav_height=" + number(gamma) + " m";
        out.push_back(std::move(s));
    }
    return out;
}

ValidationReport validate(const Scenario& scenario, const TrialConfig& cfg, double tolerance) {
    return validate(scenario, scenario, cfg, tolerance);
}

ValidationReport validate(const Scenario& scenario, const Scenario& analytic_scenario, const TrialConfig& cfg,
                          double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    ValidationReport r;
    r.tolerance = tolerance;
    r.seed = cfg.seed;
    r.fingerprint = fingerprint(scenario);
    r.analytic_fingerprint = fingerprint(analytic_scenario);
    r.analytic = BackhaulModel(analytic_scenario).backhaul_probability();
    r.mc = estimate(scenario, cfg, Metric::BackhaulProb);
    r.pass = r.analytic >= r.mc.ci_low - tolerance && r.analytic <= r.mc.ci_high + tolerance;
    return r;
}

std::string format_report(const ValidationReport& r) {
    std::string s;
    s += std::string("result: ") + (r.pass ? "PASS" : "FAIL") + "\n";
    s += "analytic: " + number(r.analytic) + "\n";
    s += "mc: " + number(r.mc.mean) + " [" + number(r.mc.ci_low) + ", " + number(r.mc.ci_high) + "] n=" +
         std::to_string(r.mc.n) + "\n";
    s += "tolerance: " + number(r.tolerance) + "\n";
    s += "seed: " + std::to_string(r.seed) + "\n";
    s += "fingerprint: " + r.fingerprint + "\n";
    if (r.analytic_fingerprint != r.fingerprint) s += "analytic_fingerprint: " + r.analytic_fingerprint + "\n";
    return s;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << (r.axis ? to_string(*r.axis) : "") << ',' << (r.axis_value ? number(*r.axis_value) : "") << ',' << to_string(r.metric)
            << ',' << number(r.value) << ',' << (r.ci_low ? number(*r.ci_low) : "") << ','
            << (r.ci_high ? number(*r.ci_high) : "") << ',' << to_string(r.mode) << ',' << to_string(r.tech) << ','
            << (r.seed ? std::to_string(*r.seed) : "") << ',' << r.fingerprint << '\n';
    }
}

}  // namespace ube
