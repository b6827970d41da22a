#include "ube/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ube/units.hpp"

namespace ube {

void LteAntenna::validate() const {
    if (!(horizontal_gain > 0.0)) throw std::invalid_argument("LTE horizontal gain must be > 0");
    // Signed: a GS above the UAV points down.
    if (!(uptilt_deg >= -90.0 && uptilt_deg <= 90.0)) throw std::invalid_argument("LTE uptilt must lie in [-90, 90] deg");
}

void MmwaveAntenna::validate() const {
    if (!(main_lobe_gain > 0.0)) throw std::invalid_argument("mmWave main-lobe gain must be > 0");
    if (!(beamwidth > 0.0 && beamwidth < 2.0 * units::kPi))
        throw std::invalid_argument("mmWave GS beamwidth must lie in (0, 2 pi)");
    if (!(alignment_prob >= 0.0 && alignment_prob <= 1.0))
        throw std::invalid_argument("alignment probability must lie in [0, 1]");
}

void UavAperture::validate() const {
    if (!(beamwidth > 0.0 && beamwidth < 2.0 * units::kPi))
        throw std::invalid_argument("UAV beamwidth must lie in (0, 2 pi)");
}

double aperture_gain(double omega) { return 16.0 * units::kPi / (omega * omega); }

double lte_vertical_gain(double phi_deg, double phi_t_deg) {
    const double x = (phi_deg - phi_t_deg) / 10.0;
    const double attenuation_db = std::min(12.0 * x * x, 20.0);
    return std::pow(10.0, -attenuation_db / 10.0);
}

double lte_total_gain(double phi_deg, const LteAntenna& ant) {
    return std::max(ant.horizontal_gain * lte_vertical_gain(phi_deg, ant.uptilt_deg), kLteGainFloor);
}

double mmwave_gain(bool aligned, const MmwaveAntenna& ant) { return aligned ? ant.main_lobe_gain : 0.0; }

double default_uptilt_deg(const Deployment& dep) {
    return units::rad_to_deg(std::atan(dep.height_difference() / mean_serving_distance(dep)));
}

}  // namespace ube
