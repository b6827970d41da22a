#pragma once

#include "ube/geometry.hpp"

namespace ube {

/// Tri-sector GS antenna with the 3GPP vertical pattern.
struct LteAntenna {
    double horizontal_gain = 0.31622776601683794;  ///< mu_h, linear
    double uptilt_deg = 0.0;                        ///< phi_T, degrees

    void validate() const;
};

/// Beamformed mmWave GS antenna: flat main lobe, nothing outside it.
struct MmwaveAntenna {
    double main_lobe_gain = 1584.893192461114;  ///< mu_m, linear
    double beamwidth = 0.17453292519943295;     ///< omega_G, radians
    double alignment_prob = 0.0;                ///< zeta

    void validate() const;
};

/// UAV backhaul antenna with equal horizontal and vertical beamwidth.
struct UavAperture {
    double beamwidth = 0.5235987755982988;  ///< omega, radians

    void validate() const;
};

/// Main-lobe gain 16 pi / omega^2 of a rectangular-pattern aperture.
double aperture_gain(double omega);

/// 3GPP vertical pattern, 10^(-min(12 ((phi - phi_t) / 10)^2, 20) / 10). Angles in degrees.
double lte_vertical_gain(double phi_deg, double phi_t_deg);

/// max(mu_h * mu_v(phi), 10^-2.5).
double lte_total_gain(double phi_deg, const LteAntenna& ant);

double mmwave_gain(bool aligned, const MmwaveAntenna& ant);

/// Uptilt pointing at the mean serving distance: atan(dh / E[R1]), degrees.
double default_uptilt_deg(const Deployment& dep);

/// Floor of the total LTE gain.
inline constexpr double kLteGainFloor = 0.0031622776601683794;

}  // namespace ube
