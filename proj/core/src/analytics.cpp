#include "ube/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ube/error.hpp"
#include "ube/hypergeometric.hpp"
#include "ube/units.hpp"

namespace ube {

using units::kPi;

std::string_view to_string(Tech t) { return t == Tech::Lte ? "lte" : "mmwave"; }
std::string_view to_string(LinkType t) { return t == LinkType::Los ? "los" : "nlos"; }

void RadioTech::validate() const {
    if (!(power > 0.0)) throw std::invalid_argument("transmit power must be > 0");
    if (!(near_field_gain > 0.0)) throw std::invalid_argument("near-field gain must be > 0");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
    if (!(alpha_los >= 2.0) || !(alpha_nlos >= 2.0)) throw std::invalid_argument("pathloss exponents must be >= 2");
    if (m_los < 1 || m_nlos < 1) throw std::invalid_argument("Nakagami orders must be >= 1");
    if (!(noise_power > 0.0)) throw std::invalid_argument("noise power must be > 0");
    if (!(threshold > 0.0)) throw std::invalid_argument("SINR threshold must be > 0");
    uav.validate();
    if (kind == Tech::Lte) {
        if (!lte || mmw) throw std::invalid_argument("LTE radio needs exactly the LTE antenna block");
        lte->validate();
    } else {
        if (!mmw || lte) throw std::invalid_argument("mmWave radio needs exactly the mmWave antenna block");
        mmw->validate();
    }
}

RadioTech RadioTech::defaults(Tech kind) {
    RadioTech r;
    r.kind = kind;
    r.threshold = units::db_to_linear(10.0);
    if (kind == Tech::Lte) {
        r.power = 40.0;
        r.near_field_gain = units::db_to_linear(-38.4);
        r.bandwidth = units::mhz_to_hz(20.0);
        r.alpha_los = 2.1;
        r.alpha_nlos = 4.0;
        r.m_los = 1;
        r.m_nlos = 1;
        r.noise_power = 8e-13;
        r.uav.beamwidth = units::deg_to_rad(30.0);
        r.lte = LteAntenna{units::db_to_linear(-5.0), 0.0};
    } else {
        r.power = 10.0;
        r.near_field_gain = units::db_to_linear(-69.7);
        r.bandwidth = units::mhz_to_hz(1000.0);
        r.alpha_los = 2.0;
        r.alpha_nlos = 3.5;
        r.m_los = 3;
        r.m_nlos = 1;
        r.noise_power = 4e-11;
        r.uav.beamwidth = units::deg_to_rad(10.0);
        r.mmw = MmwaveAntenna{units::db_to_linear(32.0), units::deg_to_rad(10.0), 0.0};
    }
    return r;
}

void Scenario::validate() const {
    env.validate();
    dep.validate();
    tech.validate();
}

void Scenario::refresh_derived() {
    if (tech.lte && dep.gs_density > 0.0) tech.lte->uptilt_deg = default_uptilt_deg(dep);
}

Scenario Scenario::defaults(Tech kind) {
    Scenario s;
    s.tech = RadioTech::defaults(kind);
    s.refresh_derived();
    return s;
}

// ---------------------------------------------------------------------------
// BackhaulModel

namespace {

// An empty field is admissible for conditional quantities; deconditioning needs lambda > 0.
void validate_for_model(const Scenario& s) {
    s.env.validate();
    if (!(s.dep.gs_density >= 0.0)) throw std::invalid_argument("ground station density must be >= 0");
    if (!(s.dep.gs_height >= 0.0) || !(s.dep.uav_height >= 0.0)) throw std::invalid_argument("heights must be >= 0");
    s.tech.validate();
}

// Pochhammer-weighted kernel derivatives at one node, added into acc with weight w.
//   f^(0) = 1 - (1 + x)^-m,  f^(k) = (-1)^(k+1) (m)_k (a/m)^k (1 + x)^(-m-k),  x = s a / m.
inline void add_kernel(double a, double s, int m, double w, std::vector<double>& acc) {
    const double dm = static_cast<double>(m);
    const double x = s * a / dm;
    const double lg = std::log1p(x);
    acc[0] += w * -std::expm1(-dm * lg);
    if (acc.size() == 1) return;
    double q = std::exp(-dm * lg);
    const double ratio = (a / dm) / (1.0 + x);
    for (std::size_t k = 1; k < acc.size(); ++k) {
        q *= (dm + static_cast<double>(k) - 1.0) * ratio;
        acc[k] += (k % 2 == 1 ? w : -w) * q;
    }
}

}  // namespace

BackhaulModel::BackhaulModel(Scenario scenario, AnalyticOptions options)
    : scenario_((validate_for_model(scenario), std::move(scenario))),
      options_(options),
      los_(scenario_.dep, scenario_.env, options.range_cap),
      dh_(scenario_.dep.height_difference()) {
    build_panels();
}

double BackhaulModel::interferer_intensity() const {
    const double lambda = scenario_.dep.gs_density;
    if (scenario_.tech.kind == Tech::Mmwave) return scenario_.tech.mmw->alignment_prob * lambda;
    return lambda;
}

double BackhaulModel::link_budget() const {
    const auto& t = scenario_.tech;
    return t.power * aperture_gain(t.uav.beamwidth) * t.near_field_gain;
}

double BackhaulModel::serving_gain(double r1) const {
    const auto& t = scenario_.tech;
    if (t.kind == Tech::Mmwave) return mmwave_gain(true, *t.mmw);
    return lte_total_gain(units::rad_to_deg(vertical_angle(r1, scenario_.dep)), *t.lte);
}

double BackhaulModel::interferer_gain(double r) const {
    const auto& t = scenario_.tech;
    if (t.kind == Tech::Mmwave) return t.mmw->main_lobe_gain;
    return lte_total_gain(units::rad_to_deg(vertical_angle(r, scenario_.dep)), *t.lte);
}

double BackhaulModel::s_value(const LinkState& link, double threshold) const {
    const auto& t = scenario_.tech;
    const double d2 = link.r1 * link.r1 + dh_ * dh_;
    return t.fading_order(link.type) * threshold / serving_gain(link.r1) * std::pow(d2, t.alpha(link.type) / 2.0);
}

BeamFootprint BackhaulModel::footprint(double r1) const {
    return ube::footprint(r1, scenario_.tech.uav.beamwidth, scenario_.dep);
}

double BackhaulModel::interference_limit(double r1) const {
    return std::min(footprint(r1).outer, options_.range_cap);
}

double BackhaulModel::los_weight(LinkType branch, std::int64_t count) const {
    const double p = los_.at_count(count);
    return branch == LinkType::Los ? p : 1.0 - p;
}

double BackhaulModel::gain_distance_factor(double r, double alpha) const {
    return interferer_gain(r) * std::pow(r * r + dh_ * dh_, -alpha / 2.0);
}

std::vector<double> BackhaulModel::pattern_kink_radii() const {
    std::vector<double> out;
    const auto& t = scenario_.tech;
    if (t.kind != Tech::Lte || dh_ == 0.0) return out;
    // |phi - phi_T| where the 20 dB cap engages, and where mu_h mu_v meets the gain floor.
    std::vector<double> offsets{10.0 * std::sqrt(20.0 / 12.0)};
    const double floor_att = units::linear_to_db(t.lte->horizontal_gain / kLteGainFloor);
    if (floor_att > 0.0 && floor_att < 20.0) offsets.push_back(10.0 * std::sqrt(floor_att / 12.0));
    for (double x : offsets) {
        for (double phi : {t.lte->uptilt_deg - x, t.lte->uptilt_deg + x}) {
            if (phi * dh_ <= 0.0 || std::abs(phi) >= 90.0) continue;
            out.push_back(dh_ / std::tan(units::deg_to_rad(phi)));
        }
    }
    return out;
}

void BackhaulModel::build_panels() {
    const double cap = options_.range_cap;
    const double rate = los_.crossing_rate();
    std::vector<double> breaks{0.0, cap};
    for (std::int64_t k = 1; static_cast<double>(k) / rate < cap; ++k) breaks.push_back(static_cast<double>(k) / rate);
    for (double r : pattern_kink_radii())
        if (r > 0.0 && r < cap) breaks.push_back(r);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    const double adh = std::abs(dh_);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double x0 = breaks[i];
        const double x1 = breaks[i + 1];
        const auto count = static_cast<std::int64_t>(std::floor(0.5 * (x0 + x1) * rate));
        double pos = x0;
        while (pos < x1) {
            // Panels no wider than a quarter of the distance to the nearest kernel singularity.
            const double scale = std::max({pos, adh, 1e-6});
            const double width = std::max(0.25 * scale, 1e-6);
            double end = std::min(x1, pos + width);
            if (x1 - end < 0.1 * width) end = x1;
            const int n = (end - pos) / scale > 0.05 ? 8 : 4;
            const auto& rule = gauss_legendre(n);
            const double c = 0.5 * (pos + end);
            const double h = 0.5 * (end - pos);
            Panel panel{pos, end, count, static_cast<std::uint32_t>(node_r_.size()), static_cast<std::uint32_t>(n)};
            for (int j = 0; j < n; ++j) {
                const double r = c + h * rule.nodes[static_cast<std::size_t>(j)];
                node_r_.push_back(r);
                node_wr_.push_back(h * rule.weights[static_cast<std::size_t>(j)] * r);
                node_a_los_.push_back(gain_distance_factor(r, scenario_.tech.alpha_los));
                node_a_nlos_.push_back(gain_distance_factor(r, scenario_.tech.alpha_nlos));
            }
            panels_.push_back(panel);
            pos = end;
        }
    }
}

void BackhaulModel::accumulate_piece(double lo, double hi, std::int64_t count, int nodes, double s, LinkType branch,
                                     std::vector<double>& acc) const {
    const double weight = los_weight(branch, count);
    if (weight == 0.0 || hi <= lo) return;
    const auto& rule = gauss_legendre(nodes);
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const double alpha = scenario_.tech.alpha(branch);
    const int m = scenario_.tech.fading_order(branch);
    for (int j = 0; j < nodes; ++j) {
        const double r = c + h * rule.nodes[static_cast<std::size_t>(j)];
        add_kernel(gain_distance_factor(r, alpha), s, m, weight * h * rule.weights[static_cast<std::size_t>(j)] * r, acc);
    }
}

double BackhaulModel::tail_bound(double radius, std::int64_t count, double s, LinkType branch, int order) const {
    const auto& t = scenario_.tech;
    const double upper = options_.range_cap;
    if (radius >= upper) return 0.0;
    // P_LOS is taken nonincreasing beyond `radius`; NLOS weight is bounded by 1.
    const double p = branch == LinkType::Los ? los_.at_count(count) : 1.0;
    if (p == 0.0) return 0.0;
    const double mu_max = t.kind == Tech::Mmwave ? t.mmw->main_lobe_gain : std::max(t.lte->horizontal_gain, kLteGainFloor);
    const double alpha = t.alpha(branch);
    const double m = t.fading_order(branch);
    auto power_integral = [&](double e) {  // int_radius^upper r^(e-1) dr
        if (std::abs(e) < 1e-12) return std::log(upper / radius);
        return (std::pow(upper, e) - std::pow(radius, e)) / e;
    };
    if (order == 0) return p * s * mu_max * power_integral(2.0 - alpha);
    double coef = 1.0;
    for (int k = 0; k < order; ++k) coef *= (m + k) / m * mu_max;
    return p * coef * power_integral(2.0 - order * alpha);
}

std::vector<double> BackhaulModel::exponent_derivatives(double s, double r1, LinkType branch, int max_order) const {
    if (max_order < 0) throw std::invalid_argument("exponent_derivatives: order must be >= 0");
    std::vector<double> acc(static_cast<std::size_t>(max_order) + 1, 0.0);
    const double intensity = interferer_intensity();
    if (intensity == 0.0) return acc;
    const double limit = interference_limit(r1);
    if (!(limit > r1)) return acc;

    const auto& a_nodes = branch == LinkType::Los ? node_a_los_ : node_a_nlos_;
    const int m = scenario_.tech.fading_order(branch);

    auto first = std::upper_bound(panels_.begin(), panels_.end(), r1,
                                  [](double r, const Panel& p) { return r < p.b; });
    std::vector<double> panel_acc(acc.size());
    for (auto it = first; it != panels_.end() && it->a < limit; ++it) {
        const double lo = std::max(it->a, r1);
        const double hi = std::min(it->b, limit);
        if (lo == it->a && hi == it->b) {
            const double weight = los_weight(branch, it->count);
            if (weight != 0.0) {
                std::fill(panel_acc.begin(), panel_acc.end(), 0.0);
                for (std::uint32_t j = it->first; j < it->first + it->size; ++j)
                    add_kernel(a_nodes[j], s, m, node_wr_[j], panel_acc);
                for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += weight * panel_acc[k];
            }
        } else {
            accumulate_piece(lo, hi, it->count, 8, s, branch, acc);
        }

        // Envelope tail check at building steps.
        auto next = it + 1;
        if (next == panels_.end() || next->a >= limit || next->count == it->count) continue;
        bool done = true;
        for (int k = 0; k <= max_order && done; ++k) {
            const double tail = tail_bound(next->a, next->count, s, branch, k);
            done = tail <= options_.interference_rel * std::abs(acc[static_cast<std::size_t>(k)]);
        }
        if (done) break;
    }
    const double scale = intensity * scenario_.tech.uav.beamwidth;
    for (auto& v : acc) v *= scale;
    return acc;
}

double BackhaulModel::laplace_interference(double s, double r1, LinkType branch) const {
    if (s == 0.0) return 1.0;
    return std::exp(-exponent_derivatives(s, r1, branch, 0)[0]);
}

double power_kernel_segment(double l, double u, double dh, double alpha, int m, double gain, double s) {
    if (!(u > l)) return 0.0;
    const double b = 2.0 / alpha;
    const double du = u * u + dh * dh;
    const double dl = l * l + dh * dh;
    const double scale = static_cast<double>(m) / (gain * s);
    const double zu = -scale * std::pow(du, alpha / 2.0);
    const double zl = -scale * std::pow(dl, alpha / 2.0);
    double sum = 0.0;
    for (int k = 1; k <= m; ++k) {
        const double coef = binomial(m, k) * (k % 2 == 1 ? 1.0 : -1.0);
        const double upper = du * gauss_2f1(k, b, 1.0 + b, zu);
        const double lower = dl == 0.0 ? 0.0 : dl * gauss_2f1(k, b, 1.0 + b, zl);
        sum += coef * (upper - lower);
    }
    return 0.5 * sum;
}

double BackhaulModel::mmwave_closed_exponent(double s, double r1, LinkType branch) const {
    const auto& t = scenario_.tech;
    if (t.kind != Tech::Mmwave) throw std::invalid_argument("closed-form transform applies to mmWave only");
    const double intensity = interferer_intensity();
    if (intensity == 0.0 || s == 0.0) return 0.0;
    const double limit = interference_limit(r1);
    if (!(limit > r1)) return 0.0;

    const double rate = los_.crossing_rate();
    const double alpha = t.alpha(branch);
    const int m = t.fading_order(branch);
    const auto j0 = static_cast<std::int64_t>(std::floor(r1 * rate));
    const auto j1 = static_cast<std::int64_t>(std::floor(limit * rate));
    double acc = 0.0;
    for (std::int64_t j = j0; j <= j1; ++j) {
        const double l = std::max(r1, static_cast<double>(j) / rate);
        const double u = std::min(limit, static_cast<double>(j + 1) / rate);
        const double weight = los_weight(branch, j);
        if (weight != 0.0) acc += weight * power_kernel_segment(l, u, dh_, alpha, m, t.mmw->main_lobe_gain, s);
        if (u >= limit) break;
        if (tail_bound(u, j + 1, s, branch, 0) <= options_.interference_rel * std::abs(acc)) break;
    }
    return intensity * t.uav.beamwidth * acc;
}

double BackhaulModel::laplace_mmwave_closed(double s, double r1, LinkType branch) const {
    return std::exp(-mmwave_closed_exponent(s, r1, branch));
}

double BackhaulModel::conditional_backhaul_prob(const LinkState& link, double threshold) const {
    const auto& t = scenario_.tech;
    const int m = t.fading_order(link.type);
    const double s = s_value(link, threshold);
    const double x = t.noise_power / link_budget();
    const double noise = std::exp(-s * x);

    double p = 0.0;
    if (interferer_intensity() == 0.0) {
        // Noise-limited: Gamma(m, 1/m) CCDF at s x.
        double term = 1.0;
        for (int n = 0; n < m; ++n) {
            if (n > 0) term *= s * x / n;
            p += term;
        }
        p *= noise;
    } else {
        const auto dl = exponential_derivatives(exponent_derivatives(s, link.r1, LinkType::Los, m - 1));
        const auto dn = exponential_derivatives(exponent_derivatives(s, link.r1, LinkType::Nlos, m - 1));
        double scale = 1.0;  // (-s)^n / n!
        for (int n = 0; n < m; ++n) {
            if (n > 0) scale *= -s / n;
            double inner = 0.0;
            for (const auto& c : compositions(n)) {
                inner += multinomial(c) * std::pow(-x, c.i_sigma) * dl[static_cast<std::size_t>(c.i_l)] *
                         dn[static_cast<std::size_t>(c.i_n)];
            }
            p += scale * inner * noise;
        }
    }
    constexpr double kSlack = 1e-9;
    if (!(p >= -kSlack && p <= 1.0 + kSlack)) {
        std::ostringstream os;
        os << "conditional backhaul probability " << p << " outside [0, 1] at r1 = " << link.r1 << " ("
           << to_string(link.type) << ")";
        throw ConsistencyError(os.str());
    }
    return std::clamp(p, 0.0, 1.0);
}

double BackhaulModel::serving_range() const {
    if (!(scenario_.dep.gs_density > 0.0)) throw std::invalid_argument("deconditioning needs lambda > 0");
    return std::sqrt(std::log(1.0 / options_.tail_mass) / (kPi * scenario_.dep.gs_density));
}

std::vector<double> BackhaulModel::serving_breakpoints(double limit) const {
    std::vector<double> out{0.0, limit};
    const double rate = los_.crossing_rate();
    for (std::int64_t k = 1; static_cast<double>(k) / rate < limit; ++k) out.push_back(static_cast<double>(k) / rate);
    const double half = scenario_.tech.uav.beamwidth / 2.0;
    if (dh_ != 0.0) {
        for (double angle : {half, kPi / 2.0 - half}) {
            if (angle > 0.0 && angle < kPi / 2.0) out.push_back(std::abs(dh_) / std::tan(angle));
        }
    }
    for (double r : pattern_kink_radii()) out.push_back(r);
    std::erase_if(out, [&](double r) { return !(r >= 0.0 && r <= limit); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double BackhaulModel::backhaul_probability(double threshold) const {
    const double limit = serving_range();
    const auto breaks = serving_breakpoints(limit);
    auto integrand = [&](double r1) {
        const double pdf = serving_distance_pdf(r1, scenario_.dep);
        if (pdf == 0.0) return 0.0;
        const double plos = los_(r1);
        double v = 0.0;
        if (plos > 0.0) v += plos * conditional_backhaul_prob({LinkType::Los, r1}, threshold);
        if (plos < 1.0) v += (1.0 - plos) * conditional_backhaul_prob({LinkType::Nlos, r1}, threshold);
        return v * pdf;
    };
    const double p = integrate_pieces(integrand, breaks, options_.outer);
    return std::clamp(p, 0.0, 1.0);
}

double rate_from_ccdf(const std::function<double(double)>& ccdf, double bandwidth, double floor,
                      const QuadratureSpec& spec) {
    if (bandwidth == 0.0) return 0.0;
    auto at = [&](double t) { return ccdf(std::exp2(t) - 1.0); };
    double tmax = 1.0;
    while (at(tmax) >= floor) {
        tmax *= 2.0;
        if (tmax > 1024.0) throw NumericalFailure("rate integral: coverage does not decay below the floor");
    }
    return bandwidth * integrate(at, 0.0, tmax, spec);
}

double BackhaulModel::expected_rate() const {
    return rate_from_ccdf([this](double theta) { return backhaul_probability(theta); }, scenario_.tech.bandwidth,
                          options_.rate_floor, options_.rate);
}

double laplace_interference(double s, double r1, LinkType branch, const Scenario& scenario) {
    return BackhaulModel(scenario).laplace_interference(s, r1, branch);
}

double laplace_mmwave_closed(double s, double r1, LinkType branch, const Scenario& scenario) {
    return BackhaulModel(scenario).laplace_mmwave_closed(s, r1, branch);
}

double conditional_backhaul_prob(const LinkState& link, const Scenario& scenario) {
    return BackhaulModel(scenario).conditional_backhaul_prob(link);
}

double backhaul_probability(const Scenario& scenario) { return BackhaulModel(scenario).backhaul_probability(); }

double expected_rate(const Scenario& scenario) { return BackhaulModel(scenario).expected_rate(); }

}  // namespace ube
