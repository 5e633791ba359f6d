#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "cfdpim/cfd6.hpp"
#include "cfdpim/grid.hpp"

namespace cfdpim {

/// Time propagator T(tau) = exp(H tau), held as identity-plus-increment.
/// The increment is the stored object: the identity is never added during
/// construction, only implicitly at application time.
struct Propagator {
    Eigen::MatrixXd increment;  // T_a with T(tau) = I + T_a
    double tau = 0.0;
    int bisection_order = 20;
    std::uint64_t generator_fingerprint = 0;
    double hdt_scale = 0.0;  // ||H||_inf * tau / 2^n, reported for diagnostics

    int size() const { return static_cast<int>(increment.rows()); }
};

/// Fourth-order Taylor increment at the fine step:
///   T_a = H dt + (H dt)^2/2 + (H dt)^3/6 + (H dt)^4/24, Horner-nested.
Eigen::MatrixXd taylor_increment(const Eigen::MatrixXd& h_matrix, double dt);

/// n rounds of the addition-theorem recurrence T_a <- 2 T_a + T_a T_a.
Eigen::MatrixXd square_up(Eigen::MatrixXd increment, int rounds);

Propagator build_propagator(const Generator& gen, double tau, int bisection_order = 20);

/// y = x + T_a x. The identity is applied implicitly.
Eigen::VectorXd apply(const Propagator& prop, const Eigen::VectorXd& x);
Field apply(const Propagator& prop, const Field& field);

std::uint64_t fingerprint(const Eigen::MatrixXd& h_matrix, double tau, int bisection_order);

}  // namespace cfdpim
