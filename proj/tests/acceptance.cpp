// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "support/richardson.hpp"
#include "ube/experiments.hpp"
#include "ube/hypergeometric.hpp"
#include "ube/units.hpp"

using namespace ube;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

Scenario point(Tech tech, double lambda_km2, double gamma, double gamma_g = 30.0) {
    Scenario s = Scenario::defaults(tech);
    s.dep.gs_density = units::per_km2_to_per_m2(lambda_km2);
    s.dep.uav_height = gamma;
    s.dep.gs_height = gamma_g;
    s.refresh_derived();
    return s;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Verdict mc_equivalence() {
    Verdict v;
    TrialConfig cfg;
    cfg.trials = 20000;
    double worst = 0.0;
    int n = 0;
    for (Tech t : {Tech::Lte, Tech::Mmwave}) {
        for (double lam : {0.25, 1.25, 5.0}) {
            for (double gamma : {40.0, 100.0}) {
                const auto r = validate(point(t, lam, gamma), cfg, 0.015);
                const double miss = std::max({0.0, r.mc.ci_low - r.analytic, r.analytic - r.mc.ci_high});
                worst = std::max(worst, miss);
                ++n;
                if (!r.pass) {
                    v.pass = false;
                    v.detail += " [" + std::string(to_string(t)) + fmt(" lambda=%g", lam) + fmt(" gamma=%g", gamma) +
                                fmt(" analytic=%.5f", r.analytic) + fmt(" mc=%.5f]", r.mc.mean);
                }
            }
        }
    }
    v.detail = std::to_string(n) + " scenarios, largest distance outside the CI " + fmt("%.4f", worst) + v.detail;
    return v;
}

Verdict closed_form_fidelity() {
    Verdict v;
    double worst = 0.0;
    int pairs = 0;
    for (double zeta : {0.5, 1.0}) {
        for (double lam : {0.25, 1.25, 5.0}) {
            for (double gamma : {40.0, 100.0}) {
                Scenario sc = point(Tech::Mmwave, lam, gamma);
                sc.tech.mmw->alignment_prob = zeta;
                const BackhaulModel model(sc);
                for (double r1 : {0.5, 1.0, 2.0}) {
                    const double r = r1 * mean_serving_distance(sc.dep);
                    for (double f : {0.1, 1.0, 10.0}) {
                        for (LinkType b : {LinkType::Los, LinkType::Nlos}) {
                            const double s = f * model.s_value({b, r}, sc.tech.threshold);
                            const double q = model.laplace_interference(s, r, b);
                            const double c = model.laplace_mmwave_closed(s, r, b);
                            worst = std::max(worst, rel_err(c, q));
                            ++pairs;
                        }
                    }
                }
            }
        }
    }
    v.pass = worst <= 1e-6;
    v.detail = std::to_string(pairs) + " evaluations, max relative error " + fmt("%.2e", worst);
    return v;
}

// Gauss-Legendre nodes and weights on [-1, 1] in extended precision.
std::vector<std::pair<long double, long double>> legendre_ld(int n) {
    std::vector<std::pair<long double, long double>> out;
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int i = 1; i <= n; ++i) {
        long double x = std::cos(pi * (i - 0.25L) / (n + 0.5L));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-21L) break;
        }
        out.emplace_back(x, 2 / ((1 - x * x) * dp * dp));
    }
    return out;
}

// Interference exponent by fixed-node extended-precision quadrature over every building segment.
long double exponent_ld(const BackhaulModel& model, long double s, double r1, LinkType branch) {
    static const auto rule = legendre_ld(40);
    const auto& sc = model.scenario();
    const long double dh = sc.dep.height_difference();
    const long double alpha = sc.tech.alpha(branch);
    const int m = sc.tech.fading_order(branch);
    const long double gain = sc.tech.mmw->main_lobe_gain;
    const double limit = model.interference_limit(r1);
    const double rate = sc.env.crossing_rate();
    long double acc = 0;
    for (auto j = building_count(r1, sc.env); static_cast<double>(j) / rate < limit; ++j) {
        const double lo = std::max(r1, static_cast<double>(j) / rate);
        const double hi = std::min(limit, static_cast<double>(j + 1) / rate);
        const double p = los_probability_for_count(j, sc.dep, sc.env);
        const long double weight = branch == LinkType::Los ? p : 1.0 - p;
        if (weight == 0) continue;
        // Split each segment geometrically so the kernel stays smooth on every panel.
        const int pieces = 4;
        for (int k = 0; k < pieces; ++k) {
            const long double a = lo * std::pow(static_cast<long double>(hi) / lo, static_cast<long double>(k) / pieces);
            const long double b = lo * std::pow(static_cast<long double>(hi) / lo, static_cast<long double>(k + 1) / pieces);
            long double part = 0;
            for (const auto& [x, w] : rule) {
                const long double r = 0.5L * (a + b) + 0.5L * (b - a) * x;
                const long double g = s * gain * std::pow(r * r + dh * dh, -alpha / 2) / m;
                part += w * -std::expm1(-m * std::log1p(g)) * r;
            }
            acc += weight * 0.5L * (b - a) * part;
        }
    }
    return static_cast<long double>(model.interferer_intensity()) * sc.tech.uav.beamwidth * acc;
}

Verdict derivative_machinery() {
    Verdict v;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    int sets = 0;
    while (sets < 20) {
        Scenario sc = point(Tech::Mmwave, 0.25 + 4.75 * unit(rng), 40.0 + 110.0 * unit(rng), 5.0 + 30.0 * unit(rng));
        sc.tech.mmw->alignment_prob = 0.1 + 0.9 * unit(rng);
        sc.tech.alpha_los = 2.0 + unit(rng);
        sc.tech.alpha_nlos = 3.0 + unit(rng);
        sc.tech.m_los = 1 + static_cast<int>(4.0 * unit(rng));
        sc.tech.m_nlos = 1 + static_cast<int>(2.0 * unit(rng));
        const BackhaulModel model(sc);
        const LinkType branch = unit(rng) < 0.5 ? LinkType::Los : LinkType::Nlos;
        const double r1 = (0.2 + 1.8 * unit(rng)) * mean_serving_distance(sc.dep);
        if (!(model.interference_limit(r1) > r1)) continue;
        const double s = std::exp(std::log(0.1) + std::log(100.0) * unit(rng)) *
                         model.s_value({branch, r1}, sc.tech.threshold);
        ++sets;

        const InterferenceTransform t(model, r1, branch);
        const auto analytic = laplace_derivatives(t, 4, s);
        const auto gap = [&](long double x) { return -std::expm1(-exponent_ld(model, x, r1, branch)); };
        for (int order = 1; order <= 4; ++order) {
            const long double h = 0.2L * s;
            const double fd = static_cast<double>(-testing::richardson_derivative(gap, static_cast<long double>(s), order, h, 5));
            worst = std::max(worst, rel_err(analytic[static_cast<std::size_t>(order)], fd));
        }
    }
    v.pass = worst <= 1e-6;
    v.detail = std::to_string(sets) + " parameter sets, orders 1-4, max relative error " + fmt("%.2e", worst);
    return v;
}

Verdict rayleigh_reduction() {
    Verdict v;
    double worst_ray = 0.0;
    const BackhaulModel lte(point(Tech::Lte, 1.25, 100.0));
    const double x = lte.scenario().tech.noise_power / lte.link_budget();
    for (double r1 : {10.0, 100.0, 300.0, 447.0, 900.0, 2000.0}) {
        for (LinkType b : {LinkType::Los, LinkType::Nlos}) {
            const double s = lte.s_value({b, r1}, lte.scenario().tech.threshold);
            const double direct = std::exp(-s * x) * lte.laplace_interference(s, r1, LinkType::Los) *
                                  lte.laplace_interference(s, r1, LinkType::Nlos);
            worst_ray = std::max(worst_ray, std::abs(lte.conditional_backhaul_prob({b, r1}) - direct));
        }
    }

    Scenario quiet = Scenario::defaults(Tech::Mmwave);
    quiet.dep.gs_density = 0.0;
    const BackhaulModel mm(quiet);
    const double xm = quiet.tech.noise_power / mm.link_budget();
    double worst_gamma = 0.0;
    for (double r1 : {50.0, 400.0, 1000.0, 2500.0, 6000.0}) {
        const double y = mm.s_value({LinkType::Los, r1}, quiet.tech.threshold) * xm;
        const double ccdf = std::exp(-y) * (1.0 + y + y * y / 2.0);
        worst_gamma = std::max(worst_gamma, std::abs(mm.conditional_backhaul_prob({LinkType::Los, r1}) - ccdf));
    }
    v.pass = worst_ray <= 1e-12 && worst_gamma <= 1e-9;
    v.detail = "m=1 product gap " + fmt("%.1e", worst_ray) + ", m=3 Gamma CCDF gap " + fmt("%.1e", worst_gamma);
    return v;
}

Verdict density_trend() {
    Verdict v;
    const std::vector<double> grid = {0.25, 0.75, 1.25, 2.5, 3.75, 5.0};
    int series = 0;
    for (double gamma : preset_uav_heights()) {
        std::vector<double> p;
        for (double lam : grid) p.push_back(backhaul_probability(point(Tech::Mmwave, lam, gamma)));
        bool ok = true;
        for (std::size_t i = 1; i < p.size(); ++i) ok &= p[i] >= p[i - 1];
        const double late = p[5] - p[4];
        const double early = p[2] - p[0];
        ok &= late < early;
        if (!ok) v.detail += fmt(" [gamma=%g fails]", gamma);
        v.pass &= ok;
        ++series;
    }
    v.detail = std::to_string(series) + " UAV heights, monotone with diminishing increments" + v.detail;
    return v;
}

Verdict mmwave_beats_lte() {
    Verdict v;
    const double m = backhaul_probability(point(Tech::Mmwave, 1.25, 100.0));
    const double l = backhaul_probability(point(Tech::Lte, 1.25, 100.0));
    v.pass = m > l;
    v.detail = "mmwave " + fmt("%.5f", m) + " vs lte " + fmt("%.5f", l);
    return v;
}

Verdict gs_height_trend_mmwave() {
    Verdict v;
    double prev = 0.0;
    std::string values;
    for (double g = 10.0; g <= 60.0; g += 10.0) {
        const double p = backhaul_probability(point(Tech::Mmwave, 1.25, 100.0, g));
        v.pass &= p >= prev;
        prev = p;
        values += fmt(" %.5f", p);
    }
    v.detail = "gamma_g 10..60 m:" + values;
    return v;
}

Verdict gs_height_trend_lte() {
    Verdict v;
    for (double gamma : {60.0, 80.0, 100.0, 120.0}) {
        const double p30 = backhaul_probability(point(Tech::Lte, 1.25, gamma, 30.0));
        const double p50 = backhaul_probability(point(Tech::Lte, 1.25, gamma, 50.0));
        v.pass &= p50 < p30;
        v.detail += fmt(" gamma=%g:", gamma) + fmt(" %.4f", p30) + fmt(" -> %.4f", p50);
    }
    v.detail = "P(gamma_g=30) -> P(gamma_g=50)" + v.detail;
    return v;
}

Verdict expected_rate_check() {
    Verdict v;
    const Scenario sc = point(Tech::Lte, 1.25, 100.0);
    const double analytic = expected_rate(sc);
    TrialConfig cfg;
    cfg.trials = 20000;
    const McEstimate mc = estimate(sc, cfg, Metric::MeanRate);
    const double err = rel_err(analytic, mc.mean);
    v.pass = err <= 0.03;
    v.detail = "analytic " + fmt("%.4e", analytic) + " bit/s, mc " + fmt("%.4e", mc.mean) + ", relative gap " +
               fmt("%.4f", err);
    return v;
}

Verdict hypergeometric_units() {
    Verdict v;
    const bool exact = gauss_2f1(1.3, 0.7, 2.1, 0.0) == 1.0 && gauss_2f1(3, 1, 2, 0.0) == 1.0;
    const double e1 = rel_err(gauss_2f1(1, 1, 2, -1), std::log(2.0));
    const double e9 = rel_err(gauss_2f1(1, 1, 2, -9), std::log(10.0) / 9.0);
    double pfaff = 0.0;
    for (double z = -0.9; z <= -0.5 + 1e-12; z += 0.01) {
        for (auto [a, b, c] : {std::tuple{1.0, 1.0, 2.0}, std::tuple{3.0, 1.0 / 1.05, 1.0 + 1.0 / 1.05},
                               std::tuple{2.0, 1.0 / 1.75, 1.0 + 1.0 / 1.75}, std::tuple{1.0, 1.0 / 1.75, 1.0 + 1.0 / 1.75}}) {
            pfaff = std::max(pfaff, rel_err(detail::hyp2f1_pfaff(a, b, c, z), detail::hyp2f1_series(a, b, c, z)));
        }
    }
    v.pass = exact && e1 <= 1e-10 && e9 <= 1e-10 && pfaff <= 1e-10;
    v.detail = std::string("z=0 exact ") + (exact ? "yes" : "no") + ", ln cases " + fmt("%.1e", std::max(e1, e9)) +
               ", Pfaff vs series " + fmt("%.1e", pfaff);
    return v;
}

Verdict sampler_statistics() {
    Verdict v;
    const Deployment dep{units::per_km2_to_per_m2(1.25), 30.0, 100.0};
    const double radius = 10e3;
    const double mean = dep.gs_density * units::kPi * radius * radius;
    Rng rng = block_rng(12345, 0);
    double total = 0.0;
    std::vector<double> nearest;
    const int fields = 10000;
    for (int i = 0; i < fields; ++i) {
        const auto f = sample_field(dep, radius, rng);
        total += static_cast<double>(f.size());
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : f) best = std::min(best, std::hypot(p.x, p.y));
        nearest.push_back(best);
    }
    const double count_err = rel_err(total / fields, mean);

    std::sort(nearest.begin(), nearest.end());
    const double n = static_cast<double>(nearest.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < nearest.size(); ++i) {
        const double cdf = -std::expm1(-units::kPi * dep.gs_density * nearest[i] * nearest[i]);
        ks = std::max({ks, cdf - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - cdf});
    }
    const double ks_crit = 1.6276 / std::sqrt(n);

    double fading_err = 0.0;
    for (int m : {1, 3}) {
        Rng g = block_rng(54321, static_cast<std::uint64_t>(m));
        double sum = 0.0;
        for (int i = 0; i < 100000; ++i) sum += sample_fading(m, g);
        fading_err = std::max(fading_err, std::abs(sum / 1e5 - 1.0));
    }
    v.pass = count_err <= 0.02 && ks < ks_crit && fading_err <= 0.01;
    v.detail = "count error " + fmt("%.4f", count_err) + ", KS " + fmt("%.4f", ks) + " < " + fmt("%.4f", ks_crit) +
               ", fading mean error " + fmt("%.4f", fading_err);
    return v;
}

Verdict determinism() {
    Verdict v;
    SweepSpec spec;
    spec.tech = Tech::Lte;
    spec.mode = EvalMode::Both;
    spec.values = {units::per_km2_to_per_m2(0.5), units::per_km2_to_per_m2(2.0)};
    TrialConfig cfg;
    cfg.trials = 3000;
    cfg.seed = 424242;
    const Scenario base = Scenario::defaults(Tech::Lte);
    std::ostringstream a, b;
    write_csv(a, run_sweep(spec, base, cfg));
    cfg.workers = 3;
    write_csv(b, run_sweep(spec, base, cfg));
    v.pass = a.str() == b.str() && !a.str().empty();
    v.detail = std::to_string(a.str().size()) + " bytes, identical across runs and worker counts";
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    // Optional criterion numbers restrict the run.
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"analytic vs Monte Carlo backhaul probability", mc_equivalence},
        {"closed-form mmWave transform vs quadrature", closed_form_fidelity},
        {"transform derivatives vs Richardson differences", derivative_machinery},
        {"Rayleigh and noise-limited reductions", rayleigh_reduction},
        {"mmWave probability rises with density, diminishing returns", density_trend},
        {"mmWave beats LTE at lambda = 1.25/km2, gamma = 100 m", mmwave_beats_lte},
        {"mmWave probability nondecreasing in GS height", gs_height_trend_mmwave},
        {"LTE probability lower at 50 m GS height than 30 m", gs_height_trend_lte},
        {"expected rate vs Monte Carlo mean rate", expected_rate_check},
        {"2F1 identities and Pfaff agreement", hypergeometric_units},
        {"sampler statistics", sampler_statistics},
        {"sweep CSV determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(i + 1)) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2zu %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str(),
                    secs);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
