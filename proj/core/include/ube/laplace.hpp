#pragma once

#include <vector>

namespace ube {

/// A way of splitting order n between the LOS transform, the NLOS transform and the noise term.
struct Composition3 {
    int i_l = 0;
    int i_n = 0;
    int i_sigma = 0;

    friend bool operator==(const Composition3&, const Composition3&) = default;
};

/// All (i_l, i_n, i_sigma) >= 0 with i_l + i_n + i_sigma = n, lexicographic in (i_l, i_n).
std::vector<Composition3> compositions(int n);

/// n! / (i_l! i_n! i_sigma!).
double multinomial(const Composition3& c);

double binomial(int n, int k);

/// A Laplace transform of the form L(s) = exp(-J(s)).
///
/// Implementations supply J and its s-derivatives; they must be reentrant.
class LaplaceExponent {
  public:
    virtual ~LaplaceExponent() = default;

    /// J^(0)(s), ..., J^(max_order)(s).
    virtual std::vector<double> exponent_derivatives(double s, int max_order) const = 0;
};

/// Derivatives of exp(-J) from derivatives of J:
/// D^0 = exp(-J), D^n = -sum_{k<n} C(n-1, k) J^(n-k) D^k.
std::vector<double> exponential_derivatives(const std::vector<double>& exponent);

/// D^0 ... D^max_order of L at s.
std::vector<double> laplace_derivatives(const LaplaceExponent& transform, int max_order, double s);

/// The order-th derivative of L at s.
double laplace_derivative(const LaplaceExponent& transform, int order, double s);

}  // namespace ube
