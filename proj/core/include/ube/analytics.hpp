#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ube/antenna.hpp"
#include "ube/geometry.hpp"
#include "ube/laplace.hpp"
#include "ube/quadrature.hpp"

namespace ube {

enum class Tech { Lte, Mmwave };
enum class LinkType { Los, Nlos };

std::string_view to_string(Tech t);
std::string_view to_string(LinkType t);

/// Per-technology radio parameters. All values SI and linear.
struct RadioTech {
    Tech kind = Tech::Lte;
    double power = 40.0;            ///< GS transmit power p, W
    double near_field_gain = 0.0;   ///< c, linear
    double bandwidth = 20e6;        ///< b, Hz
    double alpha_los = 2.1;
    double alpha_nlos = 4.0;
    int m_los = 1;                  ///< Nakagami order of LOS links
    int m_nlos = 1;
    double noise_power = 8e-13;     ///< sigma^2, W
    double threshold = 10.0;        ///< theta, linear SINR
    UavAperture uav;
    std::optional<LteAntenna> lte;
    std::optional<MmwaveAntenna> mmw;

    void validate() const;

    double alpha(LinkType t) const { return t == LinkType::Los ? alpha_los : alpha_nlos; }
    int fading_order(LinkType t) const { return t == LinkType::Los ? m_los : m_nlos; }

    /// Default column for the given technology. LTE uptilt is left at 0; Scenario resolves it.
    static RadioTech defaults(Tech kind);
};

struct Scenario {
    Environment env;
    Deployment dep;
    RadioTech tech;

    void validate() const;

    /// Recompute derived quantities (LTE uptilt from the current heights and density).
    void refresh_derived();

    /// Default environment, lambda = 1.25 /km^2, UAV at 100 m, GS at 30 m, derived values resolved.
    static Scenario defaults(Tech kind);
};

struct LinkState {
    LinkType type = LinkType::Los;
    double r1 = 0.0;  ///< serving horizontal distance, m
};

/// Tolerances and truncation rules for the analytic pipeline.
struct AnalyticOptions {
    double tail_mass = 1e-9;       ///< Rayleigh tail dropped from the r1 integral
    double interference_rel = 1e-9;  ///< envelope tail of the interference integral, relative
    double range_cap = 50e3;       ///< hard cap on interferer distance, m
    double rate_floor = 1e-6;      ///< coverage level where the rate integral stops
    QuadratureSpec outer{1e-8, 1e-12, 40};
    QuadratureSpec rate{1e-6, 1e-9, 30};
};

/// Analytic evaluator bound to one scenario.
///
/// Construction precomputes the LOS table and a fixed composite Gauss-Legendre grid for the
/// interference integrals (panels never straddle a building step or an LTE pattern kink), so
/// each transform evaluation reduces to a weighted node sum. Immutable after construction;
/// safe to share across threads.
class BackhaulModel {
  public:
    explicit BackhaulModel(Scenario scenario, AnalyticOptions options = {});

    const Scenario& scenario() const { return scenario_; }
    const AnalyticOptions& options() const { return options_; }
    const LosTable& los_table() const { return los_; }

    /// lambda for LTE, zeta * lambda for mmWave.
    double interferer_intensity() const;
    /// p * eta(omega) * c.
    double link_budget() const;
    /// mu: mu_l(phi_1) for LTE, mu_m for mmWave.
    double serving_gain(double r1) const;
    /// Interferer gain at horizontal distance r.
    double interferer_gain(double r) const;
    /// s_t = m_t theta mu^-1 (r1^2 + dh^2)^(alpha_t / 2).
    double s_value(const LinkState& link, double threshold) const;

    BeamFootprint footprint(double r1) const;
    /// Upper interference radius actually integrated to: min(v, range cap).
    double interference_limit(double r1) const;

    /// J^(0..max_order)(s) for the `branch` interferers when serving at r1.
    std::vector<double> exponent_derivatives(double s, double r1, LinkType branch, int max_order) const;

    /// L_branch(s) = exp(-J(s)) by quadrature.
    double laplace_interference(double s, double r1, LinkType branch) const;

    /// Same transform via the step-function sum with the hypergeometric closed form per segment.
    /// mmWave only.
    double laplace_mmwave_closed(double s, double r1, LinkType branch) const;
    /// The exponent J(s) behind laplace_mmwave_closed.
    double mmwave_closed_exponent(double s, double r1, LinkType branch) const;

    double conditional_backhaul_prob(const LinkState& link, double threshold) const;
    double conditional_backhaul_prob(const LinkState& link) const {
        return conditional_backhaul_prob(link, scenario_.tech.threshold);
    }

    double backhaul_probability(double threshold) const;
    double backhaul_probability() const { return backhaul_probability(scenario_.tech.threshold); }

    /// b * int_0^inf P(SINR >= 2^t - 1) dt, bits/s.
    double expected_rate() const;

    /// Breakpoints of the r1 integrand below `limit` (building steps, beam transitions, LTE kinks).
    std::vector<double> serving_breakpoints(double limit) const;

    /// Upper r1 limit sqrt(ln(1/tail) / (pi lambda)).
    double serving_range() const;

  private:
    struct Panel {
        double a;
        double b;
        std::int64_t count;
        std::uint32_t first;
        std::uint32_t size;
    };

    double los_weight(LinkType branch, std::int64_t count) const;
    double gain_distance_factor(double r, double alpha) const;
    void accumulate_piece(double lo, double hi, std::int64_t count, int nodes, double s, LinkType branch,
                          std::vector<double>& acc) const;
    double tail_bound(double radius, std::int64_t count, double s, LinkType branch, int order) const;
    std::vector<double> pattern_kink_radii() const;
    void build_panels();

    Scenario scenario_;
    AnalyticOptions options_;
    LosTable los_;
    double dh_ = 0.0;
    std::vector<Panel> panels_;
    std::vector<double> node_r_;
    std::vector<double> node_wr_;
    std::vector<double> node_a_los_;
    std::vector<double> node_a_nlos_;
};

/// Binds (model, r1, branch) as a LaplaceExponent in the variable s.
class InterferenceTransform final : public LaplaceExponent {
  public:
    InterferenceTransform(const BackhaulModel& model, double r1, LinkType branch)
        : model_(&model), r1_(r1), branch_(branch) {}

    std::vector<double> exponent_derivatives(double s, int max_order) const override {
        return model_->exponent_derivatives(s, r1_, branch_, max_order);
    }

  private:
    const BackhaulModel* model_;
    double r1_;
    LinkType branch_;
};

/// Power-kernel segment integral int_l^u (1 - (m / (g + m))^m) r dr with
/// g = gain * s * (r^2 + dh^2)^(-alpha/2), by the 2F1 closed form.
double power_kernel_segment(double l, double u, double dh, double alpha, int m, double gain, double s);

/// Layer-cake rate: b * int_0^tmax ccdf(2^t - 1) dt, extending tmax until ccdf < floor.
double rate_from_ccdf(const std::function<double(double)>& ccdf, double bandwidth, double floor,
                      const QuadratureSpec& spec);

// Convenience wrappers that build a model per call.
double laplace_interference(double s, double r1, LinkType branch, const Scenario& scenario);
double laplace_mmwave_closed(double s, double r1, LinkType branch, const Scenario& scenario);
double conditional_backhaul_prob(const LinkState& link, const Scenario& scenario);
double backhaul_probability(const Scenario& scenario);
double expected_rate(const Scenario& scenario);

}  // namespace ube
