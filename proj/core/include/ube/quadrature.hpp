#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ube {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_depth = 48;  ///< bisection depth limit for any single subinterval

    void validate() const;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature.
///
/// `hi` may be +infinity; the half line is mapped onto [0, 1) by x = lo + t / (1 - t).
/// The subdivision sequence depends only on the integrand values, so identical inputs
/// give bit-identical results. Throws NumericalFailure naming the worst interval when a
/// subinterval that still dominates the error reaches `max_depth`.
double integrate(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& spec = {});

/// Same, over consecutive pieces [breaks[i], breaks[i+1]]; breaks must be nondecreasing.
double integrate_pieces(const std::function<double(double)>& f, std::span<const double> breaks,
                        const QuadratureSpec& spec = {});

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, computed once per n and cached.
const GaussRule& gauss_legendre(int n);

}  // namespace ube
