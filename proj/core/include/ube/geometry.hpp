#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace ube {

/// Urban building statistics of the square-grid blockage model.
struct Environment {
    double building_density = 300e-6;  ///< buildings per m^2
    double built_fraction = 0.5;       ///< fraction of ground area covered by buildings
    double height_scale = 20.0;        ///< Rayleigh scale of building heights, m

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    /// Number of buildings crossed per metre of horizontal distance, sqrt(beta * delta).
    double crossing_rate() const;
};

/// Ground-station field and the reference UAV altitude.
struct Deployment {
    double gs_density = 1.25e-6;  ///< ground stations per m^2
    double gs_height = 30.0;      ///< m
    double uav_height = 100.0;    ///< m

    void validate() const;

    /// Signed height difference, UAV minus ground station.
    double height_difference() const { return uav_height - gs_height; }
};

/// Ring sector on the ground illuminated by the UAV beam.
///
/// `outer` is +infinity when the upper edge of the beam never meets the ground.
struct BeamFootprint {
    double inner = 0.0;
    double outer = std::numeric_limits<double>::infinity();
    double arc = 0.0;

    bool bounded() const { return outer < std::numeric_limits<double>::infinity(); }
    bool contains_distance(double r) const { return r >= inner && r <= outer; }
};

/// Elevation of a ground station at horizontal distance r, seen from the UAV (radians).
double vertical_angle(double r, const Deployment& dep);

/// Number of building rows crossed over horizontal distance r.
std::int64_t building_count(double r, const Environment& env);

/// LOS probability for a link with `crossings` building rows between the endpoints.
double los_probability_for_count(std::int64_t crossings, const Deployment& dep, const Environment& env);

/// LOS probability at horizontal distance r. Equals 1 when no building row is crossed.
double los_probability(double r, const Deployment& dep, const Environment& env);

/// Illuminated region for a UAV pointing at a ground station at horizontal distance r1.
BeamFootprint footprint(double r1, double omega, const Deployment& dep);

/// Nearest-neighbour distance density of a planar PPP: 2 pi lambda r exp(-pi lambda r^2).
double serving_distance_pdf(double r1, const Deployment& dep);

/// E[R1] = 1 / (2 sqrt(lambda)).
double mean_serving_distance(const Deployment& dep);

/// LOS probability cached per building count.
///
/// LOS probability is piecewise constant in r with steps at k / sqrt(beta delta); the table holds
/// the product for every count up to the one reached at `max_range`.
class LosTable {
  public:
    LosTable(const Deployment& dep, const Environment& env, double max_range);

    double operator()(double r) const;
    double at_count(std::int64_t crossings) const;

    /// Horizontal distance where the building count steps to `crossings`.
    double step_radius(std::int64_t crossings) const { return static_cast<double>(crossings) / rate_; }
    double crossing_rate() const { return rate_; }
    std::int64_t max_count() const { return static_cast<std::int64_t>(values_.size()) - 1; }

  private:
    Deployment dep_;
    Environment env_;
    double rate_;
    std::vector<double> values_;
};

}  // namespace ube
