#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ube/analytics.hpp"

namespace ube {

struct TrialConfig {
    std::int64_t trials = 20000;
    std::uint64_t seed = 1;
    double region_radius = 10e3;  ///< m; GSs are dropped on a disc of this radius
    std::int64_t block_size = 1000;
    unsigned workers = 0;         ///< 0 picks hardware concurrency; never affects results

    void validate() const;
};

struct GsPosition {
    double x = 0.0;
    double y = 0.0;
};

/// Per-link random state drawn in a trial.
struct ChannelSample {
    double h = 1.0;       ///< fading power gain, Gamma(m, 1/m)
    bool los = false;
    bool aligned = true;  ///< mmWave beam alignment; always true for the serving link
};

struct McEstimate {
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t n = 0;
};

enum class Metric { BackhaulProb, MeanRate };

struct TrialOutcome {
    double sinr = 0.0;
    bool served = false;
};

/// Both metrics from one set of trials.
struct McSummary {
    McEstimate backhaul;
    McEstimate rate;
};

using Rng = std::mt19937_64;

/// Engine for block `block` of a run with master `seed`. Streams are a pure function of both.
Rng block_rng(std::uint64_t seed, std::uint64_t block);

/// PPP on a disc: Poisson(lambda pi R^2) points, uniform positions.
std::vector<GsPosition> sample_field(const Deployment& dep, double region_radius, Rng& rng);

/// Unit-mean Gamma fading power of order m.
double sample_fading(int m, Rng& rng);

/// Draws the link state for a GS at horizontal distance r.
ChannelSample sample_channel(double r, int m_los, int m_nlos, const LosTable& los, double zeta, Rng& rng);

/// Per-trial SINR assembly with geometric beam membership. Holds the LOS table.
class TrialRunner {
  public:
    TrialRunner(const Scenario& scenario, double region_radius);

    /// SINR for a given field. An empty field is an outage.
    TrialOutcome evaluate(std::span<const GsPosition> field, Rng& rng) const;
    TrialOutcome run(Rng& rng) const;

    /// True when a GS at (r, azimuth offset) sits inside the beam footprint of a UAV serving at r1.
    bool in_beam(double r1, double r, double azimuth_offset) const;

    const Scenario& scenario() const { return scenario_; }

  private:
    Scenario scenario_;
    double region_radius_;
    LosTable los_;
    double budget_;
};

TrialOutcome run_trial(const Scenario& scenario, const TrialConfig& cfg, Rng& rng);

/// Wilson score interval for successes / n.
McEstimate wilson_interval(std::int64_t successes, std::int64_t n, double z = 1.959963984540054);

/// Runs cfg.trials trials in blocks, merged in block order.
McSummary simulate(const Scenario& scenario, const TrialConfig& cfg);

McEstimate estimate(const Scenario& scenario, const TrialConfig& cfg, Metric metric);

}  // namespace ube
