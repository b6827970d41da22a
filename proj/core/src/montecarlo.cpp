#include "ube/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ube/units.hpp"

namespace ube {

using units::kPi;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

constexpr double kZ95 = 1.959963984540054;

struct BlockResult {
    std::int64_t trials = 0;
    std::int64_t successes = 0;
    double rate_sum = 0.0;
    double rate_sq_sum = 0.0;
};

}  // namespace

void TrialConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(region_radius > 0.0)) throw std::invalid_argument("region radius must be > 0");
    if (block_size < 1) throw std::invalid_argument("block size must be >= 1");
}

Rng block_rng(std::uint64_t seed, std::uint64_t block) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(block + 0x632BE59BD9B4E019ULL)));
}

std::vector<GsPosition> sample_field(const Deployment& dep, double region_radius, Rng& rng) {
    const double mean = dep.gs_density * kPi * region_radius * region_radius;
    std::vector<GsPosition> out;
    if (!(mean > 0.0)) return out;
    const auto count = std::poisson_distribution<long long>(mean)(rng);
    out.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
        const double r = region_radius * std::sqrt(uniform01(rng));
        const double a = 2.0 * kPi * uniform01(rng);
        out.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return out;
}

double sample_fading(int m, Rng& rng) {
    const double dm = static_cast<double>(m);
    return std::gamma_distribution<double>(dm, 1.0 / dm)(rng);
}

ChannelSample sample_channel(double r, int m_los, int m_nlos, const LosTable& los, double zeta, Rng& rng) {
    ChannelSample c;
    c.los = uniform01(rng) < los(r);
    c.h = sample_fading(c.los ? m_los : m_nlos, rng);
    if (zeta < 1.0) c.aligned = uniform01(rng) < zeta;
    return c;
}

TrialRunner::TrialRunner(const Scenario& scenario, double region_radius)
    : scenario_(scenario),
      region_radius_(region_radius),
      los_(scenario.dep, scenario.env, region_radius),
      budget_(scenario.tech.power * aperture_gain(scenario.tech.uav.beamwidth) * scenario.tech.near_field_gain) {}

bool TrialRunner::in_beam(double r1, double r, double azimuth_offset) const {
    const double half = scenario_.tech.uav.beamwidth / 2.0;
    if (std::abs(azimuth_offset) > half) return false;
    return footprint(r1, scenario_.tech.uav.beamwidth, scenario_.dep).contains_distance(r);
}

TrialOutcome TrialRunner::evaluate(std::span<const GsPosition> field, Rng& rng) const {
    if (field.empty()) return {0.0, false};
    const auto& tech = scenario_.tech;
    const double dh = scenario_.dep.height_difference();

    std::size_t serving = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double d2 = field[i].x * field[i].x + field[i].y * field[i].y;
        if (d2 < best) {
            best = d2;
            serving = i;
        }
    }
    const double r1 = std::sqrt(best);
    const double az1 = std::atan2(field[serving].y, field[serving].x);

    auto gain_at = [&](double r) {
        if (tech.kind == Tech::Mmwave) return tech.mmw->main_lobe_gain;
        return lte_total_gain(units::rad_to_deg(vertical_angle(r, scenario_.dep)), *tech.lte);
    };
    auto received = [&](double r, const ChannelSample& c, double gain) {
        const double alpha = c.los ? tech.alpha_los : tech.alpha_nlos;
        return budget_ * c.h * gain * std::pow(r * r + dh * dh, -alpha / 2.0);
    };

    // Serving link: UAV aims at it, so always aligned.
    ChannelSample link;
    link.los = uniform01(rng) < los_(r1);
    link.h = sample_fading(link.los ? tech.m_los : tech.m_nlos, rng);
    const double signal = received(r1, link, gain_at(r1));

    const double zeta = tech.kind == Tech::Mmwave ? tech.mmw->alignment_prob : 1.0;
    const BeamFootprint fp = footprint(r1, tech.uav.beamwidth, scenario_.dep);
    const double half = tech.uav.beamwidth / 2.0;
    double interference = 0.0;
    if (zeta > 0.0) {
        for (std::size_t i = 0; i < field.size(); ++i) {
            if (i == serving) continue;
            const double r = std::hypot(field[i].x, field[i].y);
            if (!fp.contains_distance(r)) continue;
            const double offset = std::remainder(std::atan2(field[i].y, field[i].x) - az1, 2.0 * kPi);
            if (std::abs(offset) > half) continue;
            const ChannelSample c = sample_channel(r, tech.m_los, tech.m_nlos, los_, zeta, rng);
            if (!c.aligned) continue;
            interference += received(r, c, gain_at(r));
        }
    }
    return {signal / (interference + tech.noise_power), true};
}

TrialOutcome TrialRunner::run(Rng& rng) const {
    const auto field = sample_field(scenario_.dep, region_radius_, rng);
    return evaluate(field, rng);
}

TrialOutcome run_trial(const Scenario& scenario, const TrialConfig& cfg, Rng& rng) {
    return TrialRunner(scenario, cfg.region_radius).run(rng);
}

McEstimate wilson_interval(std::int64_t successes, std::int64_t n, double z) {
    if (n <= 0) throw std::invalid_argument("wilson_interval: n must be >= 1");
    const double dn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / dn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / dn;
    const double center = (p + z2 / (2.0 * dn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / dn + z2 / (4.0 * dn * dn));
    return {p, std::max(0.0, std::min(p, center - half)), std::min(1.0, std::max(p, center + half)), n};
}

McSummary simulate(const Scenario& scenario, const TrialConfig& cfg) {
    cfg.validate();
    scenario.validate();
    const TrialRunner runner(scenario, cfg.region_radius);
    const double theta = scenario.tech.threshold;
    const double bandwidth = scenario.tech.bandwidth;

    const std::int64_t blocks = (cfg.trials + cfg.block_size - 1) / cfg.block_size;
    std::vector<BlockResult> results(static_cast<std::size_t>(blocks));
    auto run_block = [&](std::int64_t b) {
        Rng rng = block_rng(cfg.seed, static_cast<std::uint64_t>(b));
        const std::int64_t begin = b * cfg.block_size;
        const std::int64_t end = std::min(cfg.trials, begin + cfg.block_size);
        BlockResult res;
        for (std::int64_t t = begin; t < end; ++t) {
            const TrialOutcome out = runner.run(rng);
            ++res.trials;
            if (out.served && out.sinr >= theta) ++res.successes;
            const double rate = bandwidth * std::log2(1.0 + out.sinr);
            res.rate_sum += rate;
            res.rate_sq_sum += rate * rate;
        }
        results[static_cast<std::size_t>(b)] = res;
    };

    unsigned workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, blocks));
    if (workers <= 1) {
        for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::int64_t b = next++; b < blocks; b = next++) run_block(b);
            });
        }
    }

    // Fixed block order keeps the floating-point sums independent of scheduling.
    BlockResult total;
    for (const auto& r : results) {
        total.trials += r.trials;
        total.successes += r.successes;
        total.rate_sum += r.rate_sum;
        total.rate_sq_sum += r.rate_sq_sum;
    }

    McSummary summary;
    summary.backhaul = wilson_interval(total.successes, total.trials);
    const double n = static_cast<double>(total.trials);
    const double mean = total.rate_sum / n;
    const double var = total.trials > 1 ? std::max(0.0, (total.rate_sq_sum - n * mean * mean) / (n - 1.0)) : 0.0;
    const double half = kZ95 * std::sqrt(var / n);
    summary.rate = {mean, mean - half, mean + half, total.trials};
    return summary;
}

McEstimate estimate(const Scenario& scenario, const TrialConfig& cfg, Metric metric) {
    const McSummary s = simulate(scenario, cfg);
    return metric == Metric::BackhaulProb ? s.backhaul : s.rate;
}

}  // namespace ube
