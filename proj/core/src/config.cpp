#include "ube/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "ube/error.hpp"
#include "ube/units.hpp"

namespace ube {

std::string_view to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::Density: return "density";
        case SweepAxis::UavHeight: return "uav_height";
        case SweepAxis::GsHeight: return "gs_height";
        case SweepAxis::Threshold: return "threshold";
    }
    return "?";
}

std::string_view to_string(EvalMode m) {
    switch (m) {
        case EvalMode::Analytic: return "analytic";
        case EvalMode::Mc: return "mc";
        case EvalMode::Both: return "both";
    }
    return "?";
}

std::string_view to_string(Metric m) { return m == Metric::BackhaulProb ? "backhaul_prob" : "mean_rate"; }

SweepAxis parse_axis(std::string_view name) {
    for (auto a : {SweepAxis::Density, SweepAxis::UavHeight, SweepAxis::GsHeight, SweepAxis::Threshold})
        if (name == to_string(a)) return a;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

EvalMode parse_mode(std::string_view name) {
    for (auto m : {EvalMode::Analytic, EvalMode::Mc, EvalMode::Both})
        if (name == to_string(m)) return m;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

Metric parse_metric(std::string_view name) {
    for (auto m : {Metric::BackhaulProb, Metric::MeanRate})
        if (name == to_string(m)) return m;
    throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

Tech parse_tech(std::string_view name) {
    if (name == "lte") return Tech::Lte;
    if (name == "mmwave") return Tech::Mmwave;
    throw std::invalid_argument("unknown technology '" + std::string(name) + "'");
}

double axis_to_display(SweepAxis axis, double si) {
    switch (axis) {
        case SweepAxis::Density: return units::per_m2_to_per_km2(si);
        case SweepAxis::Threshold: return units::linear_to_db(si);
        default: return si;
    }
}

double axis_from_display(SweepAxis axis, double shown) {
    switch (axis) {
        case SweepAxis::Density: return units::per_km2_to_per_m2(shown);
        case SweepAxis::Threshold: return units::db_to_linear(shown);
        default: return shown;
    }
}

void SweepSpec::validate() const {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    const bool up = values.size() < 2 || values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1]))
            throw std::invalid_argument("sweep values must be strictly ordered");
    }
}

void apply_axis(Scenario& scenario, SweepAxis axis, double si_value) {
    switch (axis) {
        case SweepAxis::Density: scenario.dep.gs_density = si_value; break;
        case SweepAxis::UavHeight: scenario.dep.uav_height = si_value; break;
        case SweepAxis::GsHeight: scenario.dep.gs_height = si_value; break;
        case SweepAxis::Threshold: scenario.tech.threshold = si_value; break;
    }
    scenario.refresh_derived();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Unit { None, Density, Length, Angle, Gain, Power, Bandwidth };
enum class Kind { Real, Integer, Text, List };

struct KeySpec {
    Kind kind;
    Unit unit;
};

const std::map<std::string, std::map<std::string, KeySpec>>& registry() {
    static const std::map<std::string, std::map<std::string, KeySpec>> keys = {
        {"environment",
         {{"beta", {Kind::Real, Unit::Density}}, {"delta", {Kind::Real, Unit::None}}, {"kappa", {Kind::Real, Unit::Length}}}},
        {"deployment",
         {{"lambda", {Kind::Real, Unit::Density}},
          {"gs_height", {Kind::Real, Unit::Length}},
          {"uav_height", {Kind::Real, Unit::Length}}}},
        {"radio",
         {{"tech", {Kind::Text, Unit::None}},
          {"power", {Kind::Real, Unit::Power}},
          {"c", {Kind::Real, Unit::Gain}},
          {"bandwidth", {Kind::Real, Unit::Bandwidth}},
          {"alpha_l", {Kind::Real, Unit::None}},
          {"alpha_n", {Kind::Real, Unit::None}},
          {"m_l", {Kind::Integer, Unit::None}},
          {"m_n", {Kind::Integer, Unit::None}},
          {"sigma2", {Kind::Real, Unit::Power}},
          {"theta", {Kind::Real, Unit::Gain}},
          {"omega", {Kind::Real, Unit::Angle}},
          {"mu_h", {Kind::Real, Unit::Gain}},
          {"mu_m", {Kind::Real, Unit::Gain}},
          {"omega_g", {Kind::Real, Unit::Angle}},
          {"zeta", {Kind::Real, Unit::None}}}},
        {"mc",
         {{"trials", {Kind::Integer, Unit::None}},
          {"seed", {Kind::Integer, Unit::None}},
          {"region_radius", {Kind::Real, Unit::Length}},
          {"block_size", {Kind::Integer, Unit::None}}}},
        {"sweep",
         {{"axis", {Kind::Text, Unit::None}},
          {"values", {Kind::List, Unit::None}},
          {"metric", {Kind::Text, Unit::None}},
          {"mode", {Kind::Text, Unit::None}}}},
    };
    return keys;
}

struct Entry {
    std::string section;
    std::string key;
    std::string text;  // value without unit
    std::string unit;
    int line = 0;
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_real(const Entry& e, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ParseError(e.key, e.line, "expected a number, got '" + std::string(text) + "'");
    return v;
}

template <typename Int>
Int to_integer(const Entry& e) {
    Int v = 0;
    const auto* end = e.text.data() + e.text.size();
    auto [ptr, ec] = std::from_chars(e.text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ParseError(e.key, e.line, "expected an integer, got '" + e.text + "'");
    return v;
}

// Converts a Real entry to SI/linear according to its unit class.
double resolve(const Entry& e, Unit cls) {
    const double v = to_real(e, e.text);
    const std::string& u = e.unit;
    auto mismatch = [&]() -> double { throw ParseError(e.key, e.line, "unit '" + u + "' does not apply"); };
    switch (cls) {
        case Unit::None: return u.empty() ? v : mismatch();
        case Unit::Density: return u.empty() || u == "/km2" ? units::per_km2_to_per_m2(v) : mismatch();
        case Unit::Length: return u.empty() || u == "m" ? v : mismatch();
        case Unit::Angle: return u.empty() || u == "deg" ? units::deg_to_rad(v) : mismatch();
        case Unit::Gain: return u.empty() || u == "dB" ? units::db_to_linear(v) : mismatch();
        case Unit::Power:
            if (u.empty() || u == "W") return v;
            if (u == "dBm") return units::dbm_to_watt(v);
            return mismatch();
        case Unit::Bandwidth:
            if (u.empty() || u == "MHz") return units::mhz_to_hz(v);
            if (u == "GHz") return units::ghz_to_hz(v);
            return mismatch();
    }
    return v;
}

void require(bool ok, const Entry& e, const std::string& what) {
    if (!ok) throw ParseError(e.key, e.line, what);
}

std::vector<Entry> tokenize(std::string_view text) {
    std::vector<Entry> entries;
    std::set<std::pair<std::string, std::string>> seen;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(std::string(line), line_no, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!registry().contains(section)) throw ParseError(section, line_no, "unknown section");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(std::string(line), line_no, "expected 'key = value'");
        Entry e;
        e.key = std::string(trim(line.substr(0, eq)));
        e.line = line_no;
        e.section = section;
        if (section.empty()) throw ParseError(e.key, line_no, "key outside of any section");
        const auto& keys = registry().at(section);
        const auto spec = keys.find(e.key);
        if (spec == keys.end()) throw ParseError(e.key, line_no, "unknown key in [" + section + "]");
        if (!seen.insert({section, e.key}).second) throw ParseError(e.key, line_no, "duplicate key");

        std::string_view value = trim(line.substr(eq + 1));
        if (value.empty()) throw ParseError(e.key, line_no, "missing value");
        if (spec->second.kind == Kind::List) {
            // "v1, v2, v3 [unit]": the unit, if any, follows the last value.
            const auto last_comma = value.rfind(',');
            const auto tail_start = last_comma == std::string_view::npos ? 0 : last_comma + 1;
            std::string_view tail = trim(value.substr(tail_start));
            if (const auto sp = tail.find_first_of(" \t"); sp != std::string_view::npos) {
                e.unit = std::string(trim(tail.substr(sp)));
                value = trim(value.substr(0, tail_start + (tail.data() - value.substr(tail_start).data()) + sp));
            }
            e.text = std::string(value);
        } else {
            const auto sp = value.find_first_of(" \t");
            if (sp == std::string_view::npos) {
                e.text = std::string(value);
            } else {
                e.text = std::string(value.substr(0, sp));
                e.unit = std::string(trim(value.substr(sp)));
                if (e.unit.find_first_of(" \t") != std::string::npos)
                    throw ParseError(e.key, line_no, "trailing text after unit");
            }
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace

ParsedConfig parse_config(std::string_view text, std::optional<Tech> tech_override) {
    const std::vector<Entry> entries = tokenize(text);

    Tech tech = Tech::Lte;
    for (const auto& e : entries) {
        if (e.section == "radio" && e.key == "tech") {
            require(e.unit.empty(), e, "tech takes no unit");
            try {
                tech = parse_tech(e.text);
            } catch (const std::invalid_argument& ex) {
                throw ParseError(e.key, e.line, ex.what());
            }
        }
    }
    if (tech_override) tech = *tech_override;

    ParsedConfig out;
    out.scenario = Scenario::defaults(tech);
    Scenario& sc = out.scenario;
    const Entry* sweep_values = nullptr;
    std::optional<SweepSpec> sweep;
    auto sweep_spec = [&]() -> SweepSpec& {
        if (!sweep) {
            sweep.emplace();
            sweep->tech = tech;
        }
        return *sweep;
    };

    for (const auto& e : entries) {
        const KeySpec spec = registry().at(e.section).at(e.key);
        if (spec.kind == Kind::Integer) require(e.unit.empty(), e, "integer keys take no unit");
        auto real = [&] { return resolve(e, spec.unit); };

        if (e.section == "environment") {
            const double v = real();
            if (e.key == "beta") {
                require(v > 0.0, e, "building density must be > 0");
                sc.env.building_density = v;
            } else if (e.key == "delta") {
                require(v > 0.0 && v < 1.0, e, "built-up fraction must lie in (0, 1)");
                sc.env.built_fraction = v;
            } else {
                require(v > 0.0, e, "height scale must be > 0");
                sc.env.height_scale = v;
            }
        } else if (e.section == "deployment") {
            const double v = real();
            if (e.key == "lambda") {
                require(v > 0.0, e, "GS density must be > 0");
                sc.dep.gs_density = v;
            } else if (e.key == "gs_height") {
                require(v >= 0.0, e, "height must be >= 0");
                sc.dep.gs_height = v;
            } else {
                require(v >= 0.0, e, "height must be >= 0");
                sc.dep.uav_height = v;
            }
        } else if (e.section == "radio") {
            auto& r = sc.tech;
            if (e.key == "tech") continue;
            if (e.key == "m_l" || e.key == "m_n") {
                const int m = to_integer<int>(e);
                require(m >= 1, e, "Nakagami order must be >= 1");
                (e.key == "m_l" ? r.m_los : r.m_nlos) = m;
                continue;
            }
            const double v = real();
            if (e.key == "power") {
                require(v > 0.0, e, "power must be > 0");
                r.power = v;
            } else if (e.key == "c") {
                r.near_field_gain = v;
            } else if (e.key == "bandwidth") {
                require(v > 0.0, e, "bandwidth must be > 0");
                r.bandwidth = v;
            } else if (e.key == "alpha_l" || e.key == "alpha_n") {
                require(v >= 2.0, e, "pathloss exponent must be >= 2");
                (e.key == "alpha_l" ? r.alpha_los : r.alpha_nlos) = v;
            } else if (e.key == "sigma2") {
                require(v > 0.0, e, "noise power must be > 0");
                r.noise_power = v;
            } else if (e.key == "theta") {
                r.threshold = v;
            } else if (e.key == "omega") {
                require(v > 0.0 && v < 2.0 * units::kPi, e, "beamwidth must lie in (0, 360) deg");
                r.uav.beamwidth = v;
            } else if (e.key == "mu_h") {
                require(tech == Tech::Lte, e, "mu_h applies to lte only");
                r.lte->horizontal_gain = v;
            } else if (e.key == "mu_m") {
                require(tech == Tech::Mmwave, e, "mu_m applies to mmwave only");
                r.mmw->main_lobe_gain = v;
            } else if (e.key == "omega_g") {
                require(tech == Tech::Mmwave, e, "omega_g applies to mmwave only");
                require(v > 0.0 && v < 2.0 * units::kPi, e, "beamwidth must lie in (0, 360) deg");
                r.mmw->beamwidth = v;
            } else if (e.key == "zeta") {
                require(tech == Tech::Mmwave, e, "zeta applies to mmwave only");
                require(v >= 0.0 && v <= 1.0, e, "alignment probability must lie in [0, 1]");
                r.mmw->alignment_prob = v;
            }
        } else if (e.section == "mc") {
            if (e.key == "trials") {
                out.mc.trials = to_integer<std::int64_t>(e);
                require(out.mc.trials >= 1, e, "trials must be >= 1");
            } else if (e.key == "seed") {
                out.mc.seed = to_integer<std::uint64_t>(e);
            } else if (e.key == "block_size") {
                out.mc.block_size = to_integer<std::int64_t>(e);
                require(out.mc.block_size >= 1, e, "block size must be >= 1");
            } else {
                const double v = real();
                require(v > 0.0, e, "region radius must be > 0");
                out.mc.region_radius = v;
            }
        } else if (e.section == "sweep") {
            try {
                if (e.key == "axis") {
                    sweep_spec().axis = parse_axis(e.text);
                } else if (e.key == "metric") {
                    sweep_spec().metric = parse_metric(e.text);
                } else if (e.key == "mode") {
                    sweep_spec().mode = parse_mode(e.text);
                } else {
                    sweep_spec();
                    sweep_values = &e;
                }
            } catch (const std::invalid_argument& ex) {
                throw ParseError(e.key, e.line, ex.what());
            }
        }
    }

    if (sweep) {
        if (!sweep_values) throw ParseError("values", 0, "[sweep] needs a values list");
        const Entry& e = *sweep_values;
        static const std::map<SweepAxis, std::string> axis_unit = {
            {SweepAxis::Density, "/km2"}, {SweepAxis::UavHeight, "m"}, {SweepAxis::GsHeight, "m"},
            {SweepAxis::Threshold, "dB"}};
        require(e.unit.empty() || e.unit == axis_unit.at(sweep->axis), e,
                "unit '" + e.unit + "' does not match axis " + std::string(to_string(sweep->axis)));
        std::string_view rest = e.text;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = trim(rest.substr(0, comma));
            sweep->values.push_back(axis_from_display(sweep->axis, to_real(e, item)));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        try {
            sweep->validate();
        } catch (const std::invalid_argument& ex) {
            throw ParseError(e.key, e.line, ex.what());
        }
        sweep->label = "config";
        out.sweep = std::move(sweep);
    }

    sc.refresh_derived();
    sc.validate();
    return out;
}

std::string canonical_parameters(const Scenario& s) {
    std::string out;
    auto add = [&](const char* key, double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s=%.17g;", key, v);
        out += buf;
    };
    out += "tech=" + std::string(to_string(s.tech.kind)) + ";";
    add("beta", s.env.building_density);
    add("delta", s.env.built_fraction);
    add("kappa", s.env.height_scale);
    add("lambda", s.dep.gs_density);
    add("gamma_g", s.dep.gs_height);
    add("gamma", s.dep.uav_height);
    add("p", s.tech.power);
    add("c", s.tech.near_field_gain);
    add("b", s.tech.bandwidth);
    add("alpha_l", s.tech.alpha_los);
    add("alpha_n", s.tech.alpha_nlos);
    add("m_l", s.tech.m_los);
    add("m_n", s.tech.m_nlos);
    add("sigma2", s.tech.noise_power);
    add("theta", s.tech.threshold);
    add("omega", s.tech.uav.beamwidth);
    if (s.tech.lte) {
        add("mu_h", s.tech.lte->horizontal_gain);
        add("phi_t", s.tech.lte->uptilt_deg);
    }
    if (s.tech.mmw) {
        add("mu_m", s.tech.mmw->main_lobe_gain);
        add("omega_g", s.tech.mmw->beamwidth);
        add("zeta", s.tech.mmw->alignment_prob);
    }
    return out;
}

std::string fingerprint(const Scenario& scenario) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_parameters(scenario)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ube
