#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "ube/montecarlo.hpp"
#include "ube/units.hpp"

using namespace ube;
using doctest::Approx;

namespace {

double nearest_distance(const std::vector<GsPosition>& field) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : field) best = std::min(best, std::hypot(p.x, p.y));
    return best;
}

}  // namespace

TEST_CASE("PPP field statistics") {
    const Deployment dep{units::per_km2_to_per_m2(1.25), 30.0, 100.0};
    const double radius = 10e3;
    const double expected = dep.gs_density * units::kPi * radius * radius;

    Rng rng = block_rng(5, 0);
    const int fields = 2000;
    double total = 0.0;
    std::vector<double> nearest;
    for (int i = 0; i < fields; ++i) {
        const auto f = sample_field(dep, radius, rng);
        total += static_cast<double>(f.size());
        for (const auto& p : f) CHECK_MESSAGE(p.x * p.x + p.y * p.y <= radius * radius, "point outside the disc");
        nearest.push_back(nearest_distance(f));
    }
    CHECK(total / fields == Approx(expected).epsilon(0.02));

    std::sort(nearest.begin(), nearest.end());
    double d = 0.0;
    const double n = static_cast<double>(nearest.size());
    for (std::size_t i = 0; i < nearest.size(); ++i) {
        const double cdf = -std::expm1(-units::kPi * dep.gs_density * nearest[i] * nearest[i]);
        d = std::max({d, std::abs(cdf - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - cdf)});
    }
    CHECK(d < 1.628 / std::sqrt(n));

    const Deployment none{0.0, 30.0, 100.0};
    CHECK(sample_field(none, radius, rng).empty());
}

TEST_CASE("fading draws have unit mean") {
    for (int m : {1, 3}) {
        Rng rng = block_rng(9, static_cast<std::uint64_t>(m));
        double sum = 0.0;
        for (int i = 0; i < 100000; ++i) {
            const double h = sample_fading(m, rng);
            REQUIRE(h >= 0.0);
            sum += h;
        }
        CHECK(sum / 1e5 == Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("LOS thinning follows the blockage law") {
    const Environment env{300e-6, 0.5, 20.0};
    const Deployment dep{1.25e-6, 30.0, 100.0};
    const LosTable table(dep, env, 2000.0);
    Rng rng = block_rng(3, 1);
    for (double r : {100.0, 500.0, 1500.0}) {
        std::int64_t hits = 0;
        const std::int64_t n = 20000;
        for (std::int64_t i = 0; i < n; ++i) hits += sample_channel(r, 3, 1, table, 1.0, rng).los ? 1 : 0;
        const auto ci = wilson_interval(hits, n);
        CHECK(table(r) >= ci.ci_low - 1e-3);
        CHECK(table(r) <= ci.ci_high + 1e-3);
    }
}

TEST_CASE("beam membership agrees with the vertical beam angles") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Scenario sc = Scenario::defaults(trial % 2 ? Tech::Lte : Tech::Mmwave);
        sc.dep.uav_height = 40.0 + 120.0 * unit(rng);
        sc.refresh_derived();
        const TrialRunner runner(sc, 10e3);
        const double dh = sc.dep.height_difference();
        const double half = sc.tech.uav.beamwidth / 2.0;
        const double r1 = 20.0 + 1500.0 * unit(rng);
        const double phi1 = std::atan(dh / r1);
        if (phi1 >= units::kPi / 2.0 - half) continue;  // nadir-straddling beams follow the ring convention
        for (int k = 0; k < 50; ++k) {
            const double r = 1.0 + 4000.0 * unit(rng);
            const double az = (unit(rng) - 0.5) * 4.0 * half;
            const double phi = std::atan(dh / r);
            const bool expected = std::abs(az) <= half && phi >= phi1 - half && phi <= phi1 + half;
            CHECK(runner.in_beam(r1, r, az) == expected);
            ++checked;
        }
    }
    CHECK(checked > 5000);
}

TEST_CASE("single-link SINR") {
    Scenario sc = Scenario::defaults(Tech::Mmwave);
    const BackhaulModel model(sc);
    const TrialRunner runner(sc, 10e3);
    const double r1 = 60.0;  // below the first building step: always LOS
    const double d2 = r1 * r1 + 70.0 * 70.0;

    SUBCASE("zero alignment leaves the noise-only SNR") {
        const std::vector<GsPosition> field = {{r1, 0.0}, {r1 + 5.0, 1.0}, {r1 + 20.0, -2.0}};
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng a = block_rng(seed, 0);
            Rng b = a;
            const auto out = runner.evaluate(field, a);
            std::uniform_real_distribution<double>(0.0, 1.0)(b);
            const double h = sample_fading(sc.tech.m_los, b);
            const double snr = model.link_budget() * h * sc.tech.mmw->main_lobe_gain *
                               std::pow(d2, -sc.tech.alpha_los / 2.0) / sc.tech.noise_power;
            CHECK(out.served);
            CHECK(out.sinr == Approx(snr).epsilon(1e-14));
        }
    }

    SUBCASE("lone GS under Rayleigh fading") {
        Scenario ray = Scenario::defaults(Tech::Lte);
        const BackhaulModel lm(ray);
        const double mean_snr = lm.link_budget() * lm.serving_gain(r1) * std::pow(d2, -ray.tech.alpha_los / 2.0);
        ray.tech.noise_power = mean_snr * std::log(2.0) / ray.tech.threshold;  // P(SINR >= theta) = 1/2
        const TrialRunner lone(ray, 10e3);
        const std::vector<GsPosition> field = {{0.0, r1}};
        Rng rng = block_rng(77, 0);
        std::int64_t hits = 0;
        const std::int64_t n = 20000;
        for (std::int64_t i = 0; i < n; ++i) hits += lone.evaluate(field, rng).sinr >= ray.tech.threshold ? 1 : 0;
        const double p = static_cast<double>(hits) / static_cast<double>(n);
        CHECK(std::abs(p - 0.5) <= 3.3 * std::sqrt(0.25 / static_cast<double>(n)));
    }

    SUBCASE("empty field is an outage") {
        Rng rng = block_rng(1, 0);
        const auto out = runner.evaluate({}, rng);
        CHECK_FALSE(out.served);
        CHECK(out.sinr == 0.0);
    }
}

TEST_CASE("estimates are deterministic and worker-independent") {
    Scenario sc = Scenario::defaults(Tech::Lte);
    TrialConfig cfg;
    cfg.trials = 3000;
    cfg.block_size = 250;
    cfg.seed = 99;
    cfg.workers = 1;
    const auto one = simulate(sc, cfg);
    cfg.workers = 3;
    const auto three = simulate(sc, cfg);
    CHECK(one.backhaul.mean == three.backhaul.mean);
    CHECK(one.rate.mean == three.rate.mean);
    CHECK(one.rate.ci_low == three.rate.ci_low);
    CHECK(one.backhaul.n == 3000);
    CHECK(one.backhaul.ci_low <= one.backhaul.mean);
    CHECK(one.backhaul.mean <= one.backhaul.ci_high);

    cfg.seed = 100;
    CHECK(simulate(sc, cfg).backhaul.mean != one.backhaul.mean);
}

TEST_CASE("confidence intervals") {
    SUBCASE("certain success") {
        Scenario sc = Scenario::defaults(Tech::Mmwave);
        sc.tech.noise_power = 1e-30;
        TrialConfig cfg;
        cfg.trials = 2000;
        const auto e = estimate(sc, cfg, Metric::BackhaulProb);
        CHECK(e.mean == 1.0);
        CHECK(e.ci_high == 1.0);
        const double z2 = 1.959963984540054 * 1.959963984540054;
        CHECK(e.ci_low == Approx(2000.0 / (2000.0 + z2)).epsilon(1e-12));
    }
    SUBCASE("width shrinks like the square root of the trial count") {
        Scenario sc = Scenario::defaults(Tech::Lte);
        TrialConfig cfg;
        cfg.trials = 4000;
        const auto small = estimate(sc, cfg, Metric::BackhaulProb);
        cfg.trials = 8000;
        const auto large = estimate(sc, cfg, Metric::BackhaulProb);
        const double ratio = (large.ci_high - large.ci_low) / (small.ci_high - small.ci_low);
        CHECK(ratio == Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
    }
    SUBCASE("Wilson bounds") {
        const auto e = wilson_interval(0, 100);
        CHECK(e.mean == 0.0);
        CHECK(e.ci_low == 0.0);
        CHECK(e.ci_high > 0.0);
        CHECK_THROWS_AS(wilson_interval(1, 0), std::invalid_argument);
    }
}

TEST_CASE("trial config invariants") {
    TrialConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.region_radius = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.block_size = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
