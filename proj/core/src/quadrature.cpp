#include "ube/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "ube/error.hpp"

namespace ube {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss 7-point weights for the odd-indexed Kronrod nodes.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    int depth;
};

Panel gk15(const std::function<double(double)>& f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<std::size_t>(j)];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kWgk[static_cast<std::size_t>(j)] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
    }
    kronrod *= half;
    gauss *= half;
    if (!std::isfinite(kronrod)) {
        std::ostringstream os;
        os << "integrand not finite on [" << a << ", " << b << "]";
        throw NumericalFailure(os.str());
    }
    double err = std::abs(kronrod - gauss);
    // A panel resolved to roundoff carries no further reducible error.
    if (err <= 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod)) err = 0.0;
    return {a, b, kronrod, err, depth};
}

double adapt(const std::function<double(double)>& f, std::vector<Panel> panels, const QuadratureSpec& spec) {
    auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::make_heap(panels.begin(), panels.end(), by_error);
    constexpr std::size_t kMaxPanels = 200000;
    double total = 0.0;
    double error = 0.0;
    auto recount = [&] {
        total = 0.0;
        error = 0.0;
        for (const auto& p : panels) {
            total += p.value;
            error += p.error;
        }
    };
    recount();
    for (std::size_t iter = 1;; ++iter) {
        if (iter % 512 == 0) recount();  // bound drift of the running sums
        if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
            recount();
            if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
                // Sum in interval order for a result independent of heap layout.
                std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
                double sum = 0.0;
                for (const auto& p : panels) sum += p.value;
                return sum;
            }
        }
        std::pop_heap(panels.begin(), panels.end(), by_error);
        const Panel worst = panels.back();
        panels.pop_back();
        if (worst.depth >= spec.max_depth || panels.size() > kMaxPanels) {
            std::ostringstream os;
            os << "quadrature did not converge: worst interval [" << worst.a << ", " << worst.b
               << "] error " << worst.error << " at depth " << worst.depth;
            throw NumericalFailure(os.str());
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gk15(f, worst.a, mid, worst.depth + 1);
        const Panel right = gk15(f, mid, worst.b, worst.depth + 1);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push_back(left);
        std::push_heap(panels.begin(), panels.end(), by_error);
        panels.push_back(right);
        std::push_heap(panels.begin(), panels.end(), by_error);
    }
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be > 0");
    if (max_depth < 1) throw std::invalid_argument("quadrature max_depth must be >= 1");
}

double integrate(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& spec) {
    spec.validate();
    if (lo == hi) return 0.0;
    if (hi < lo) return -integrate(f, hi, lo, spec);
    if (std::isinf(hi)) {
        auto mapped = [&](double t) {
            const double u = 1.0 - t;
            return f(lo + t / u) / (u * u);
        };
        std::function<double(double)> g = mapped;
        return adapt(g, {gk15(g, 0.0, 1.0, 0)}, spec);
    }
    return adapt(f, {gk15(f, lo, hi, 0)}, spec);
}

double integrate_pieces(const std::function<double(double)>& f, std::span<const double> breaks,
                        const QuadratureSpec& spec) {
    spec.validate();
    std::vector<Panel> panels;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] < breaks[i]) throw std::invalid_argument("integrate_pieces: breaks must be nondecreasing");
        if (breaks[i + 1] > breaks[i]) panels.push_back(gk15(f, breaks[i], breaks[i + 1], 0));
    }
    if (panels.empty()) return 0.0;
    return adapt(f, std::move(panels), spec);
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace ube
