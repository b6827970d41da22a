#include "ube/hypergeometric.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ube/error.hpp"
#include "ube/quadrature.hpp"

namespace ube {

namespace {

constexpr int kSeriesCap = 200000;

std::string describe(const char* why, double a, double b, double c, double z) {
    std::ostringstream os;
    os.precision(17);
    os << "2F1(" << a << ", " << b << "; " << c << "; " << z << "): " << why;
    return os.str();
}

[[noreturn]] void fail(const char* why, double a, double b, double c, double z) {
    throw NumericalFailure(describe(why, a, b, c, z));
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }
bool is_integer(double x) { return x == std::nearbyint(x); }

}  // namespace

namespace detail {

double hyp2f1_series(double a, double b, double c, double z) {
    if (is_nonpositive_integer(c)) fail("c is a non-positive integer", a, b, c, z);
    double term = 1.0;
    double sum = 1.0;
    int small_run = 0;
    for (int n = 0; n < kSeriesCap; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        sum += term;
        if (term == 0.0) return sum;  // terminating series
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++small_run >= 3) return sum;
        } else {
            small_run = 0;
        }
    }
    fail("series did not converge", a, b, c, z);
}

double hyp2f1_pfaff(double a, double b, double c, double z) {
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, w);
}

double hyp2f1_reciprocal(double a, double b, double c, double z) {
    if (is_integer(a - b)) fail("reciprocal connection needs a - b non-integer", a, b, c, z);
    const double y = 1.0 / z;
    const double mz = -z;
    // Gamma(c - a) or Gamma(c - b) at a pole zeroes the matching term.
    double first = 0.0;
    if (!is_nonpositive_integer(c - a)) {
        const double coef = std::tgamma(c) * std::tgamma(b - a) / (std::tgamma(b) * std::tgamma(c - a));
        first = coef * std::pow(mz, -a) * hyp2f1_series(a, a - c + 1.0, a - b + 1.0, y);
    }
    double second = 0.0;
    if (!is_nonpositive_integer(c - b)) {
        const double coef = std::tgamma(c) * std::tgamma(a - b) / (std::tgamma(a) * std::tgamma(c - b));
        second = coef * std::pow(mz, -b) * hyp2f1_series(b, b - c + 1.0, b - a + 1.0, y);
    }
    const double value = first + second;
    if (!std::isfinite(value)) fail("reciprocal connection overflowed", a, b, c, z);
    return value;
}

double hyp2f1_euler_integral(double a, double b, double c, double z) {
    if (!(c > b && b > 0.0)) fail("Euler integral needs c > b > 0", a, b, c, z);
    const double q = c - b;
    // t = x^(1/b) on [0, 1/2] and 1 - t = y^(1/q) on [1/2, 1] remove the endpoint singularities.
    auto near_zero = [&](double x) {
        const double t = std::pow(x, 1.0 / b);
        return std::pow(1.0 - t, q - 1.0) * std::pow(1.0 - z * t, -a) / b;
    };
    auto near_one = [&](double y) {
        const double t = 1.0 - std::pow(y, 1.0 / q);
        return std::pow(t, b - 1.0) * std::pow(1.0 - z * t, -a) / q;
    };
    QuadratureSpec spec;
    spec.rel_tol = 1e-14;
    spec.abs_tol = 1e-300;
    spec.max_depth = 200;
    const double lhs = integrate(near_zero, 0.0, std::pow(0.5, b), spec);
    const double rhs = integrate(near_one, 0.0, std::pow(0.5, q), spec);
    const double norm = std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(q));
    return norm * (lhs + rhs);
}

}  // namespace detail

double gauss_2f1(double a, double b, double c, double z) {
    if (!(z <= 0.0)) throw std::invalid_argument(describe("argument must be <= 0", a, b, c, z));
    if (!(c > 0.0)) throw std::invalid_argument(describe("c must be > 0", a, b, c, z));
    if (z == 0.0) return 1.0;

    // Terminating parameters give a polynomial, valid for any z.
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return detail::hyp2f1_series(a, b, c, z);
    if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) {
        // Euler transformation: (1 - z)^(c-a-b) 2F1(c - a, c - b; c; z).
        return std::pow(1.0 - z, c - a - b) * detail::hyp2f1_series(c - a, c - b, c, z);
    }

    if (z >= -0.5) return detail::hyp2f1_series(a, b, c, z);
    if (z >= -9.0) return detail::hyp2f1_pfaff(a, b, c, z);
    if (!is_integer(a - b)) return detail::hyp2f1_reciprocal(a, b, c, z);
    if (c > b && b > 0.0) return detail::hyp2f1_euler_integral(a, b, c, z);
    if (c > a && a > 0.0) return detail::hyp2f1_euler_integral(b, a, c, z);
    fail("no convergent evaluation route", a, b, c, z);
}

}  // namespace ube
