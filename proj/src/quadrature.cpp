#include "cfdpim/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfdpim {

double composite_simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels < 2 || panels % 2 != 0) {
        throw std::invalid_argument("composite_simpson: even panel count >= 2 required");
    }
    const double h = (b - a) / panels;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < panels; i += 2) odd += f(a + i * h);
    for (int i = 2; i < panels; i += 2) even += f(a + i * h);
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

namespace {

// Doubling with Richardson extrapolation; stops once two levels agree to
// rel_tol of the extrapolated value or to the absolute floor (for integrals
// that cancel to roundoff, e.g. parity-zero coefficients).
template <typename Real, typename Eval>
double refine(Eval eval, double rel_tol, double abs_floor, int initial_panels, int max_panels,
              const char* what) {
    Real coarse = eval(initial_panels);
    for (int n = 2 * initial_panels; n <= max_panels; n *= 2) {
        const Real fine = eval(n);
        const Real extrap = fine + (fine - coarse) / Real(15);
        const Real gap = fine >= coarse ? fine - coarse : coarse - fine;
        const Real scale = extrap >= Real(0) ? extrap : -extrap;
        if (gap <= Real(rel_tol) * scale || gap <= Real(abs_floor)) {
            return static_cast<double>(extrap);
        }
        coarse = fine;
    }
    throw std::runtime_error(std::string(what) + ": no convergence within panel budget");
}

template <typename Real>
std::vector<Real> simpson_weights(int panels) {
    std::vector<Real> w(static_cast<std::size_t>(panels + 1), Real(0));
    w[0] = w[static_cast<std::size_t>(panels)] = Real(1);
    for (int i = 1; i < panels; ++i) w[static_cast<std::size_t>(i)] = (i % 2 != 0) ? Real(4) : Real(2);
    const Real h = Real(1) / panels;
    for (Real& v : w) v *= h / Real(3);
    return w;
}

template <typename Real, typename F>
Real tensor_simpson_2d(const F& f, int panels) {
    const auto w = simpson_weights<Real>(panels);
    const Real h = Real(1) / panels;
    Real total = 0;
    for (int i = 0; i <= panels; ++i) {
        Real row = 0;
        for (int j = 0; j <= panels; ++j) row += w[static_cast<std::size_t>(j)] * f(i * h, j * h);
        total += w[static_cast<std::size_t>(i)] * row;
    }
    return total;
}

template <typename Real, typename F>
Real tensor_simpson_3d(const F& f, int panels) {
    const auto w = simpson_weights<Real>(panels);
    const Real h = Real(1) / panels;
    Real total = 0;
    for (int i = 0; i <= panels; ++i) {
        Real plane = 0;
        for (int j = 0; j <= panels; ++j) {
            Real row = 0;
            for (int k = 0; k <= panels; ++k) row += w[static_cast<std::size_t>(k)] * f(i * h, j * h, k * h);
            plane += w[static_cast<std::size_t>(j)] * row;
        }
        total += w[static_cast<std::size_t>(i)] * plane;
    }
    return total;
}

}  // namespace

double simpson_richardson(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int initial_panels, int max_panels) {
    return refine<double>([&](int n) { return composite_simpson(f, a, b, n); }, rel_tol, 1e-15,
                          initial_panels, max_panels, "simpson_richardson");
}

double simpson_richardson_2d(const std::function<double(double, double)>& f, double rel_tol,
                             int initial_panels, int max_panels) {
    return refine<double>([&f](int n) { return tensor_simpson_2d<double>(f, n); }, rel_tol, 5e-15,
                          initial_panels, max_panels, "simpson_richardson_2d");
}

double simpson_richardson_3d(const std::function<double(double, double, double)>& f,
                             double rel_tol, int initial_panels, int max_panels) {
    return refine<double>([&f](int n) { return tensor_simpson_3d<double>(f, n); }, rel_tol, 5e-14,
                          initial_panels, max_panels, "simpson_richardson_3d");
}

double simpson_richardson_2d_xp(const std::function<long double(long double, long double)>& f,
                                double rel_tol, int initial_panels, int max_panels) {
    return refine<long double>([&f](int n) { return tensor_simpson_2d<long double>(f, n); },
                               rel_tol, 1e-17, initial_panels, max_panels,
                               "simpson_richardson_2d_xp");
}

double simpson_richardson_3d_xp(
    const std::function<long double(long double, long double, long double)>& f, double rel_tol,
    int initial_panels, int max_panels) {
    return refine<long double>([&f](int n) { return tensor_simpson_3d<long double>(f, n); },
                               rel_tol, 1e-16, initial_panels, max_panels,
                               "simpson_richardson_3d_xp");
}

}  // namespace cfdpim
