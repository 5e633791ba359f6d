#pragma once

#include <vector>

#include "cfdpim/hopf_cole.hpp"
#include "cfdpim/pim.hpp"

namespace cfdpim {

enum class SplitScheme { lie, strang };

/// Per-axis exponential propagators sharing one step tau. The lie scheme is
/// the plain product T_x T_y T_z; strang symmetrizes with
/// half-steps on the outer axes. For matching per-axis generators the axis
/// operators commute and the two coincide.
struct SplitPropagator {
    std::vector<Propagator> axis;          // full-step propagator per axis
    std::vector<Propagator> axis_half;     // half-step (strang only; empty for lie)
    SplitScheme scheme = SplitScheme::lie;
    double tau = 0.0;
};

SplitPropagator make_split_propagator(const std::vector<Generator>& per_axis, double tau,
                                      SplitScheme scheme = SplitScheme::lie,
                                      int bisection_order = 20);

/// Multiply every grid line along `axis` by (I + increment); other axes untouched.
Field apply_axis(const Propagator& prop, const Field& field, int axis);

/// Same, but the propagator acts on the interior of each line (extent-2
/// sized, the odd-fold image); the wall entries are pinned to zero.
Field apply_axis_interior(const Propagator& prop, const Field& field, int axis);

/// One split step on phi and every gradient component; advances state.time by tau.
HeatState step(const SplitPropagator& sp, const HeatState& state);

}  // namespace cfdpim
