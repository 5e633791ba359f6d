#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cfdpim/grid.hpp"

namespace cfdpim {

/// Fourier-cosine coefficient tables C = A * B for the transformed initial
/// data of the series examples, with parity zeros stored as exact zeros.
/// Truncation M auto-raises until the newest index shell is negligible.
class FourierOracle {
public:
    /// sin(pi x) initial profile on [0,1]: B_a = exp(-c) I_a(c), c = 1/(2 w pi).
    static FourierOracle profile_1d_sin(double omega, int truncation = 40);

    /// Generic 1D profile: B_a from quadrature of int_0^1 phi0(x) cos(a pi x) dx.
    static FourierOracle profile_1d_quadrature(std::function<double(double)> phi0, double omega,
                                               int truncation = 40);

    /// (sin pi x cos pi y, cos pi x sin pi y) on [0,1]^2:
    /// B_ab = exp(-c) I_{(a+b)/2}(c/2) I_{(a-b)/2}(c/2) for even a+b, else 0.
    static FourierOracle profile_2d_sincos(double omega, int truncation = 40);

    /// Symmetric 3D profile (sin cos cos, cos sin cos, cos cos sin):
    /// all-same-parity series coefficients; mixed-parity tuples exactly 0.
    static FourierOracle profile_3d_sincos(double omega, int truncation = 28);

    int rank() const { return rank_; }
    double omega() const { return omega_; }
    int truncation() const { return truncation_; }

    /// C with the A-prefactor folded in (1D index a; 2D a + b*(M+1); 3D likewise).
    double coeff(int a, int b = 0, int g = 0) const;

    /// Velocity components of the series solution at one point.
    std::array<double, 3> velocity(const std::array<double, 3>& x, double t) const;

    /// The series phi itself (needed for the heat-table comparisons).
    double phi(const std::array<double, 3>& x, double t) const;

    /// Whole-grid evaluation via per-axis trig tables and mode contractions;
    /// phi doubles as the common series denominator.
    struct GridEval {
        Field phi;
        std::vector<Field> velocity;
    };
    GridEval evaluate_on_grid(const Grid& grid, double t) const;

private:
    FourierOracle() = default;
    void raise_until_converged(const std::function<double(int, int, int)>& b_fn, int max_m);

    int rank_ = 1;
    double omega_ = 0.0;
    int truncation_ = 0;
    std::vector<double> coeffs_;  // dense table over index tuples, A folded in
};

/// Bessel-form 1D coefficient of the sin(pi x) profile (without the A factor):
/// exp(-c) I_alpha(c). Matches quadrature of the defining integral for every
/// alpha; cross-validated in tests.
double fourier_coeff_1d(int alpha, double omega);

/// The literature's printed parity variant (0 for odd alpha, I_{alpha/2}(c)
/// for even) retained for documentation; it disagrees with the defining
/// integral for every odd alpha and is not used by the solver.
double fourier_coeff_1d_parity_variant(int alpha, double omega);

/// 2D Bessel-product coefficient (without A): even a+b only.
double fourier_coeff_2d(int alpha, int beta, double omega);

/// 3D coefficient by the hypergeometric-type series
///   exp(-c) sum_{s >= max(a,b,g), s same parity} (c/8)^s/s! *
///   binom(s,(s-a)/2) binom(s,(s-b)/2) binom(s,(s-g)/2),
/// evaluated by term recurrence; zero unless a, b, g share parity.
double fourier_coeff_3d(int alpha, int beta, int gamma, double omega);

/// Quadrature forms of the same coefficients (independent oracles).
double fourier_coeff_1d_quadrature(int alpha, double omega, double rel_tol = 1e-11);
double fourier_coeff_2d_quadrature(int alpha, int beta, double omega, double rel_tol = 1e-9);
double fourier_coeff_3d_quadrature(int alpha, int beta, int gamma, double omega,
                                   double rel_tol = 1e-8);

}  // namespace cfdpim
