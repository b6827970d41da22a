#pragma once

namespace ube {

/// Gauss hypergeometric function 2F1(a, b; c; z) on z <= 0.
///
/// Evaluation route by argument:
///  - terminating parameters (a, b, c - a or c - b a non-positive integer): finite sum;
///  - -1/2 <= z <= 0: defining series;
///  - -9 <= z < -1/2: Pfaff transformation (1 - z)^-a 2F1(a, c - b; c; z / (z - 1));
///  - z < -9, a - b not an integer: connection formula in 1/z;
///  - z < -9, a - b an integer: Euler integral by adaptive quadrature (needs c > b > 0 or c > a > 0).
/// Relative accuracy is near 1e-13 on all routes. Throws NumericalFailure carrying (a, b, c, z)
/// when a series hits its iteration cap or no route applies.
double gauss_2f1(double a, double b, double c, double z);

namespace detail {

/// Defining power series; requires |z| < 1.
double hyp2f1_series(double a, double b, double c, double z);

/// Pfaff-transformed series; requires z < 1/2 (so the mapped argument lies in (-1, 1)).
double hyp2f1_pfaff(double a, double b, double c, double z);

/// 1/z connection formula; requires z < -1 and a - b not an integer.
double hyp2f1_reciprocal(double a, double b, double c, double z);

/// Euler integral representation evaluated by quadrature; requires z <= 0 and c > b > 0.
double hyp2f1_euler_integral(double a, double b, double c, double z);

}  // namespace detail

}  // namespace ube
