#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "cfdpim/grid.hpp"

namespace cfdpim {

/// Scalar profile on up to three coordinates.
using SpaceFn = std::function<double(const std::array<double, 3>&)>;

/// Heat-equation state: phi plus one evolved gradient component per axis.
/// The full transform variable is phi + phi_offset (the offset carries a
/// constant split off so the stored field is wall-compatible, e.g. the "+1"
/// of phi = 1 + sin sin sin); the sum stays strictly positive. The gradients
/// are evolved alongside phi as heat fields of their own, so the inverse
/// transform never differentiates phi.
struct HeatState {
    Field phi;
    std::vector<Field> grad;
    double omega = 0.0;
    double time = 0.0;
    double phi_offset = 0.0;

    int rank() const { return phi.grid().rank(); }
    double phi_total(std::size_t i) const { return phi[i] + phi_offset; }
};

/// Positivity floor for phi; anything at or below is a singular transform.
inline constexpr double kPhiFloor = 1e-300;

/// Initial velocity data for the forward transform. `potential` is psi with
/// u_k = d psi / d x_k and psi(origin) = 0 (the closed-form antiderivative in
/// 1D); when absent the transform falls back to composite Simpson quadrature
/// of symmetrized edge-path integrals on a 4x-refined grid.
struct InitialVelocity {
    std::vector<SpaceFn> components;
    std::optional<SpaceFn> potential;
};

HeatState forward_1d(const InitialVelocity& u0, double omega, const Grid& grid);
HeatState forward_nd(const InitialVelocity& u0, double omega, const Grid& grid);

/// Forward transform for any rank; kappa must be 1 (it cancels in the
/// transformation and every example uses 1).
HeatState forward(const InitialVelocity& u0, double omega, const Grid& grid, double kappa = 1.0);

/// component_k = -2 omega grad_k / phi, elementwise.
std::vector<Field> inverse(const HeatState& state);

/// Unmodified route for A/B comparison: differentiate phi with second-order
/// central differences (one-sided at the ends) instead of using the evolved
/// gradient fields.
std::vector<Field> inverse_by_differencing(const Field& phi, double omega);

}  // namespace cfdpim
