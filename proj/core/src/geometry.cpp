#include "ube/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ube/units.hpp"

namespace ube {

using units::kPi;

void Environment::validate() const {
    if (!(building_density > 0.0)) throw std::invalid_argument("building density must be > 0");
    if (!(built_fraction > 0.0 && built_fraction < 1.0))
        throw std::invalid_argument("built-up fraction must lie in (0, 1)");
    if (!(height_scale > 0.0)) throw std::invalid_argument("building height scale must be > 0");
}

double Environment::crossing_rate() const { return std::sqrt(building_density * built_fraction); }

void Deployment::validate() const {
    if (!(gs_density > 0.0)) throw std::invalid_argument("ground station density must be > 0");
    if (!(gs_height >= 0.0)) throw std::invalid_argument("ground station height must be >= 0");
    if (!(uav_height >= 0.0)) throw std::invalid_argument("UAV height must be >= 0");
}

double vertical_angle(double r, const Deployment& dep) {
    const double dh = dep.height_difference();
    if (r == 0.0) {
        if (dh == 0.0) return 0.0;
        return std::copysign(kPi / 2.0, dh);
    }
    return std::atan(dh / r);
}

std::int64_t building_count(double r, const Environment& env) {
    return static_cast<std::int64_t>(std::floor(r * env.crossing_rate()));
}

double los_probability_for_count(std::int64_t crossings, const Deployment& dep, const Environment& env) {
    if (crossings <= 0) return 1.0;
    const double top = std::max(dep.uav_height, dep.gs_height);
    const double dh = std::abs(dep.height_difference());
    const double two_k2 = 2.0 * env.height_scale * env.height_scale;
    const double d = static_cast<double>(crossings);
    double p = 1.0;
    for (std::int64_t n = 0; n < crossings; ++n) {
        const double h = top - (static_cast<double>(n) + 0.5) * dh / d;
        p *= -std::expm1(-h * h / two_k2);
        if (p == 0.0) break;
    }
    return p;
}

double los_probability(double r, const Deployment& dep, const Environment& env) {
    return los_probability_for_count(building_count(r, env), dep, env);
}

BeamFootprint footprint(double r1, double omega, const Deployment& dep) {
    BeamFootprint fp;
    fp.arc = omega;
    const double dh = std::abs(dep.height_difference());
    if (dh == 0.0) return fp;  // level geometry: w = 0, v = inf

    const double phi = std::abs(vertical_angle(r1, dep));
    const double half = omega / 2.0;
    const double steep = kPi / 2.0 - half;

    if (phi < steep) fp.inner = dh / std::tan(phi + half);

    if (omega < kPi / 2.0) {
        if (phi > half && phi < steep) {
            fp.outer = dh / std::tan(phi - half);
        } else if (phi >= steep) {
            // Beam straddles the nadir; the far edge sits at elevation pi/2 - omega.
            fp.outer = dh / std::tan(kPi / 2.0 - omega);
        }
    }
    return fp;
}

double serving_distance_pdf(double r1, const Deployment& dep) {
    const double lambda = dep.gs_density;
    return 2.0 * kPi * lambda * r1 * std::exp(-kPi * lambda * r1 * r1);
}

double mean_serving_distance(const Deployment& dep) { return 1.0 / (2.0 * std::sqrt(dep.gs_density)); }

LosTable::LosTable(const Deployment& dep, const Environment& env, double max_range)
    : dep_(dep), env_(env), rate_(env.crossing_rate()) {
    const std::int64_t top = building_count(max_range, env) + 1;
    values_.reserve(static_cast<std::size_t>(top) + 1);
    for (std::int64_t d = 0; d <= top; ++d) values_.push_back(los_probability_for_count(d, dep, env));
}

double LosTable::at_count(std::int64_t crossings) const {
    if (crossings < 0) return 1.0;
    if (crossings < static_cast<std::int64_t>(values_.size())) return values_[static_cast<std::size_t>(crossings)];
    return los_probability_for_count(crossings, dep_, env_);
}

double LosTable::operator()(double r) const { return at_count(static_cast<std::int64_t>(std::floor(r * rate_))); }

}  // namespace ube
