#pragma once

#include <functional>

namespace cfdpim {

/// Composite Simpson with n panels (n even).
double composite_simpson(const std::function<double(double)>& f, double a, double b, int panels);

/// Composite Simpson refined by panel doubling with Richardson extrapolation
/// until two successive levels agree to rel_tol (relative to the scale of the
/// extrapolated value, with an absolute floor).
double simpson_richardson(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, int initial_panels = 16,
                          int max_panels = 1 << 22);

/// Tensor-product analogues on [0,1]^2 and [0,1]^3 for the coefficient
/// integrals; same doubling-plus-Richardson stopping rule per level.
double simpson_richardson_2d(const std::function<double(double, double)>& f, double rel_tol = 1e-11,
                             int initial_panels = 16, int max_panels = 1024);
double simpson_richardson_3d(const std::function<double(double, double, double)>& f,
                             double rel_tol = 1e-9, int initial_panels = 8, int max_panels = 256);

/// Extended-precision variants for the coefficient cross-validation: the
/// high-index coefficients are ~1e-9 against an O(1) integrand, below the
/// double-precision summation floor, so both the integrand and the
/// accumulation run in long double.
double simpson_richardson_2d_xp(const std::function<long double(long double, long double)>& f,
                                double rel_tol = 1e-11, int initial_panels = 16,
                                int max_panels = 1024);
double simpson_richardson_3d_xp(
    const std::function<long double(long double, long double, long double)>& f,
    double rel_tol = 1e-9, int initial_panels = 8, int max_panels = 256);

}  // namespace cfdpim
