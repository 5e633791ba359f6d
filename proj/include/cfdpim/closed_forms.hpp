#pragma once

#include <array>

namespace cfdpim {

/// Closed-form exact solutions for the benchmark problems that have one.
/// Components beyond the problem rank are zero. `epsilon` is the family
/// parameter of problems 1 and 2 (ignored elsewhere).
namespace closed_form {

/// Problem 1: u = 2 w pi E sin(pi x) / (eps + E cos(pi x)), E = exp(-pi^2 w t).
double example1(double x, double t, double omega, double epsilon);

/// Problem 2: two-mode variant with denominators 4 + E1 cos(pi x) + 2 E4 cos(2 pi x).
double example2(double x, double t, double omega);

/// Problem 5: u = v = exp(-t) sin(x) on [-pi, pi] (heat reduction of the
/// symmetric coupled system).
double example5(double x, double t);

/// Problem 6 velocity pair from phi = 2 + E sin(2 pi x) sin(pi y),
/// E = exp(-5 pi^2 w t):
///   u = -4 pi w E cos(2 pi x) sin(pi y) / phi,
///   v = -2 pi w E sin(2 pi x) cos(pi y) / phi.
std::array<double, 2> example6(double x, double y, double t, double omega);

/// Problem 8 triple from phi = 1 + E sin(pi x) sin(pi y) sin(pi z),
/// E = exp(-3 pi^2 w t); u = -2 pi w E cos sin sin / phi and cyclic.
std::array<double, 3> example8(double x, double y, double z, double t, double omega);

/// phi of problem 8 (positive heat solution behind the triple).
double example8_phi(double x, double y, double z, double t, double omega);

}  // namespace closed_form

}  // namespace cfdpim
