// Command line front end: single-point evaluation, sweeps, figure presets and the
// analytic-vs-simulation gate.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ube/error.hpp"
#include "ube/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidationFail = 2;

struct Options {
    std::string config_path;
    std::string tech;
    std::string out_path;
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;
    double tolerance = 0.015;
    std::string metric;
    std::string mode;
    std::string axis;
    std::vector<double> values;
    std::string figure;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ube::ParsedConfig load(const Options& o, std::optional<ube::Tech> forced = std::nullopt) {
    std::optional<ube::Tech> tech = forced;
    if (!tech && !o.tech.empty()) tech = ube::parse_tech(o.tech);
    const std::string text = o.config_path.empty() ? std::string() : read_file(o.config_path);
    ube::ParsedConfig cfg = ube::parse_config(text, tech);

    if (o.trials) cfg.mc.trials = *o.trials;
    if (o.seed) cfg.mc.seed = *o.seed;
    if (const char* env = std::getenv("UBE_SEED"); env && *env) {
        std::size_t used = 0;
        const std::string s(env);
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument("UBE_SEED is not an integer");
        cfg.mc.seed = v;
    }
    cfg.mc.validate();
    return cfg;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw std::runtime_error("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

ube::Metric metric_or(const Options& o, ube::Metric fallback) {
    return o.metric.empty() ? fallback : ube::parse_metric(o.metric);
}

int run_point(const Options& o, ube::EvalMode mode) {
    const auto cfg = load(o);
    const auto row = ube::evaluate_point(cfg.scenario, metric_or(o, ube::Metric::BackhaulProb), mode, cfg.mc);
    Output out(o.out_path);
    ube::write_csv(out.stream(), {row});
    return kExitOk;
}

int run_sweep_cmd(const Options& o) {
    auto cfg = load(o);
    ube::SweepSpec spec = cfg.sweep.value_or(ube::SweepSpec{});
    if (!o.axis.empty()) spec.axis = ube::parse_axis(o.axis);
    if (!o.values.empty()) {
        spec.values.clear();
        for (double v : o.values) spec.values.push_back(ube::axis_from_display(spec.axis, v));
    }
    if (spec.values.empty()) throw std::invalid_argument("sweep needs values: add a [sweep] section or --values");
    spec.tech = cfg.scenario.tech.kind;
    spec.metric = metric_or(o, spec.metric);
    if (!o.mode.empty()) spec.mode = ube::parse_mode(o.mode);

    const auto rows = ube::run_sweep(spec, cfg.scenario, cfg.mc);
    Output out(o.out_path);
    ube::write_csv(out.stream(), rows);
    return kExitOk;
}

int run_figure(const Options& o) {
    const auto specs = ube::figure_preset(o.figure);
    const auto cfg = load(o, specs.front().tech);
    std::vector<ube::ResultRow> rows;
    std::cerr << o.figure << ": uav heights assumed {40, 60, 80, 100, 120} m\n";
    for (auto spec : specs) {
        if (!o.mode.empty()) spec.mode = ube::parse_mode(o.mode);
        auto part = ube::run_sweep(spec, cfg.scenario, cfg.mc);
        std::cerr << "  series '" << spec.label << "': " << part.size() << " rows, fingerprints";
        std::string last;
        for (const auto& r : part) {
            if (r.fingerprint != last) std::cerr << ' ' << r.fingerprint;
            last = r.fingerprint;
        }
        std::cerr << '\n';
        rows.insert(rows.end(), part.begin(), part.end());
    }
    Output out(o.out_path);
    ube::write_csv(out.stream(), rows);
    return kExitOk;
}

int run_validate(const Options& o) {
    const auto cfg = load(o);
    const auto report = ube::validate(cfg.scenario, cfg.mc, o.tolerance);
    Output out(o.out_path);
    out.stream() << ube::format_report(report);
    return report.pass ? kExitOk : kExitValidationFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV backhaul probability and rate toolkit"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "Scenario config file")->check(CLI::ExistingFile);
        sub->add_option("--tech", o.tech, "Technology override")->check(CLI::IsMember({"lte", "mmwave"}));
        sub->add_option("--out", o.out_path, "Output path (default stdout)");
        sub->add_option("--trials", o.trials, "Monte Carlo trial count")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "Master seed (UBE_SEED wins when set)");
        sub->add_option("--metric", o.metric, "Metric")->check(CLI::IsMember({"backhaul_prob", "mean_rate"}));
    };

    auto* analytic = app.add_subcommand("analytic", "Analytic value at the configured point");
    common(analytic);
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate at the configured point");
    common(mc);

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter");
    common(sweep);
    sweep->add_option("--axis", o.axis, "Swept parameter")
        ->check(CLI::IsMember({"density", "uav_height", "gs_height", "threshold"}));
    sweep->add_option("--values", o.values, "Comma-separated values in /km2, m or dB")->delimiter(',');
    sweep->add_option("--mode", o.mode, "Evaluation mode")->check(CLI::IsMember({"analytic", "mc", "both"}));

    auto* figure = app.add_subcommand("figure", "Reproduce a figure's sweeps");
    common(figure);
    figure->add_option("name", o.figure, "fig2 .. fig6")->required();
    figure->add_option("--mode", o.mode, "Evaluation mode")->check(CLI::IsMember({"analytic", "mc", "both"}));

    auto* gate = app.add_subcommand("validate", "Check analytic against the simulated 95% CI");
    common(gate);
    gate->add_option("--tolerance", o.tolerance, "Absolute CI widening")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (*analytic) return run_point(o, ube::EvalMode::Analytic);
        if (*mc) return run_point(o, ube::EvalMode::Mc);
        if (*sweep) return run_sweep_cmd(o);
        if (*figure) return run_figure(o);
        if (*gate) return run_validate(o);
    } catch (const ube::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
