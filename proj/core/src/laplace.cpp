#include "ube/laplace.hpp"

#include <cmath>
#include <stdexcept>

namespace ube {

std::vector<Composition3> compositions(int n) {
    if (n < 0) throw std::invalid_argument("compositions: n must be >= 0");
    std::vector<Composition3> out;
    out.reserve(static_cast<std::size_t>((n + 1) * (n + 2) / 2));
    for (int il = 0; il <= n; ++il)
        for (int in = 0; in <= n - il; ++in) out.push_back({il, in, n - il - in});
    return out;
}

namespace {
double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }
}  // namespace

double multinomial(const Composition3& c) {
    return factorial(c.i_l + c.i_n + c.i_sigma) / (factorial(c.i_l) * factorial(c.i_n) * factorial(c.i_sigma));
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<double> exponential_derivatives(const std::vector<double>& exponent) {
    if (exponent.empty()) throw std::invalid_argument("exponential_derivatives: need J itself");
    std::vector<double> d(exponent.size());
    d[0] = std::exp(-exponent[0]);
    for (std::size_t n = 1; n < exponent.size(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            acc += binomial(static_cast<int>(n - 1), static_cast<int>(k)) * exponent[n - k] * d[k];
        d[n] = -acc;
    }
    return d;
}

std::vector<double> laplace_derivatives(const LaplaceExponent& transform, int max_order, double s) {
    if (max_order < 0) throw std::invalid_argument("laplace_derivatives: order must be >= 0");
    return exponential_derivatives(transform.exponent_derivatives(s, max_order));
}

double laplace_derivative(const LaplaceExponent& transform, int order, double s) {
    return laplace_derivatives(transform, order, s).back();
}

}  // namespace ube
