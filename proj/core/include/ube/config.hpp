#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ube/analytics.hpp"
#include "ube/montecarlo.hpp"

namespace ube {

enum class SweepAxis { Density, UavHeight, GsHeight, Threshold };
enum class EvalMode { Analytic, Mc, Both };

std::string_view to_string(SweepAxis a);
std::string_view to_string(EvalMode m);
std::string_view to_string(Metric m);

SweepAxis parse_axis(std::string_view name);
EvalMode parse_mode(std::string_view name);
Metric parse_metric(std::string_view name);
Tech parse_tech(std::string_view name);

/// Axis value in SI (per m^2, m, linear SINR) to report units (per km^2, m, dB), and back.
double axis_to_display(SweepAxis axis, double si);
double axis_from_display(SweepAxis axis, double shown);

/// One parameter sweep. `values` are SI; `fixed` pins other axes for every point.
struct SweepSpec {
    SweepAxis axis = SweepAxis::Density;
    std::vector<double> values;
    Tech tech = Tech::Lte;
    Metric metric = Metric::BackhaulProb;
    EvalMode mode = EvalMode::Analytic;
    std::vector<std::pair<SweepAxis, double>> fixed;
    std::string label;

    /// Values nonempty and strictly monotone.
    void validate() const;
};

/// Sets one axis on a scenario and re-resolves derived quantities.
void apply_axis(Scenario& scenario, SweepAxis axis, double si_value);

struct ParsedConfig {
    Scenario scenario;
    TrialConfig mc;
    std::optional<SweepSpec> sweep;
};

/// Parses the sectioned "key = value [unit]" document.
///
/// Sections: [environment] [deployment] [radio] [mc] [sweep]. Missing keys take the default
/// column for the selected technology; `tech_override` wins over the document's `tech` key.
/// Throws ParseError naming the key and line on unknown keys, bad units or out-of-range values.
ParsedConfig parse_config(std::string_view text, std::optional<Tech> tech_override = std::nullopt);

/// Canonical text of the resolved SI parameters.
std::string canonical_parameters(const Scenario& scenario);

/// 64-bit FNV-1a of canonical_parameters, as 16 hex digits.
std::string fingerprint(const Scenario& scenario);

}  // namespace ube
